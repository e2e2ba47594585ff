#pragma once

// Seeded verification campaigns over every registered checker.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "berlab/config.hpp"
#include "berlab/ensembles.hpp"
#include "berlab/theorems.hpp"

namespace berlab {

inline constexpr const char* version_string = "0.1.0";

/// Stable 64-bit hash of (master_seed, theorem_id, trial index).
std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view theorem_id, std::uint64_t index);

/// Everything one trial feeds to its checker. Only the members matching the
/// checker kind are populated.
struct TrialInputs {
  std::uint64_t seed = 0;
  CheckParams params;
  ScalarInputs scalar;
  std::shared_ptr<const KernelSpace> space;  // single-operator checkers
  SingleInputs single;
  BlockOperator block;
};

/// Draws family, dims, grid point and operators from the per-trial seed.
TrialInputs draw_trial(const CampaignConfig& config, const CheckerInfo& info, std::uint64_t seed);

/// Runs the checker under each of its conventions. Convention-free
/// certificates are kept from the first (gating) call only. Every certificate
/// carries trial.seed as its witness seed.
std::vector<Certificate> evaluate_trial(const CheckerInfo& info, const TrialInputs& trial);

/// min slack over the gating certificates, or over all of them when the
/// checker has none.
const Certificate* objective(const std::vector<Certificate>& certificates);

struct Aggregate {
  std::string theorem_id;
  std::string variant;
  std::optional<BerConvention> convention;
  Mode mode = Mode::gating;
  std::int64_t trials = 0;
  std::int64_t failures = 0;  // gating certificates with holds = false
  double min_slack = 0;
  double mean_slack = 0;
  Certificate witness;  // min-slack certificate

  std::string label() const { return variant.empty() ? theorem_id : theorem_id + ":" + variant; }
};

struct Anomaly {
  std::string theorem_id;
  std::int64_t count = 0;
  std::string first_message;
  std::uint64_t first_seed = 0;
};

struct Report {
  Json config;
  std::vector<Aggregate> results;
  std::vector<Anomaly> anomalies;
  std::int64_t gating_failures = 0;
  std::optional<double> wall_time_ms;
  std::string version = version_string;
};

/// Checkers a campaign covers: the filter in registry order, or all of them.
std::vector<const CheckerInfo*> selected_checkers(const CampaignConfig& config);

/// Deterministic in config regardless of config.jobs.
Report run_campaign(const CampaignConfig& config);

/// Hill climb from the min-slack random witness: 10 restarts of budget/10
/// rounds, each round adding Gaussian noise to every operator entry; the step
/// halves on non-improvement. Returns the objective certificate found.
Certificate explore(const CampaignConfig& config, std::string_view theorem_id, int budget);

Json to_json(const Report& report);
Report report_from_json(const Json& json);

/// format is "json" or "csv"; an empty path writes to `fallback`.
void emit_report(const Report& report, const std::string& format, const std::string& path,
                 std::ostream& fallback);
void write_csv(std::ostream& out, const Report& report);

}  // namespace berlab
