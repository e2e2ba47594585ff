// berlab: Berezin-number inequality verification campaigns.
//
//   berlab verify  [options]                      run every checker, emit a report
//   berlab explore --theorem ID --budget N [...]  adversarial slack minimization
//   berlab case    --theorem ID --seed N [...]    replay one trial from its seed
//
// Exit codes: 0 all gating checks hold, 1 a gating violation, 2 config/IO error.

#include <chrono>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "berlab/campaign.hpp"

namespace {

using namespace berlab;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_config = 2;

// Campaign flags shared by every subcommand; values stay as text and are
// applied through the config-file parser so both paths validate identically.
struct CampaignFlags {
  std::string config_file;
  std::map<std::string, std::string> values;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "key = value config file");
    add(app, "--seed", "master_seed", "master seed (case: per-trial seed)");
    add(app, "--trials", "trials_per_checker", "trials per checker");
    add(app, "--dims", "dims", "block dimensions, e.g. 2x2,3x2");
    add(app, "--kernel", "kernel_families", "identity|szego|bergman|gaussian (comma list)");
    add(app, "--theorems", "checker_filter", "theorem ids (comma list)");
    add(app, "--tol", "check_tol", "relative slack tolerance");
    add(app, "--out", "output", "output path (default stdout)");
    add(app, "--format", "format", "json|csv");
    add(app, "--jobs", "jobs", "worker threads");
  }

  void add(CLI::App& app, const std::string& flag, const std::string& key, const std::string& help) {
    app.add_option(flag, values[key], help);
  }

  CampaignConfig build(const CLI::App& app, bool timing) const {
    CampaignConfig config;
    if (!config_file.empty()) apply_config_file(config, config_file);
    const std::map<std::string, std::string> flags{
        {"master_seed", "--seed"}, {"trials_per_checker", "--trials"}, {"dims", "--dims"},
        {"kernel_families", "--kernel"}, {"checker_filter", "--theorems"}, {"check_tol", "--tol"},
        {"output", "--out"}, {"format", "--format"}, {"jobs", "--jobs"}};
    for (const auto& [key, flag] : flags) {
      if (app.count(flag) > 0) apply_setting(config, key, values.at(key));
    }
    if (timing) config.timing = true;
    validate(config);
    return config;
  }
};

void print_certificate(const Certificate& c) { write_json(std::cout, to_json(c)); }

int verify(const CampaignConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Report report = run_campaign(config);
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (config.timing) report.wall_time_ms = elapsed;
  emit_report(report, config.format, config.output_path, std::cout);

  std::int64_t anomalies = 0;
  for (const auto& a : report.anomalies) anomalies += a.count;
  std::cerr << "berlab verify: " << report.results.size() << " aggregates, " << report.gating_failures
            << " gating failures, " << anomalies << " anomalies, " << static_cast<long long>(elapsed) << " ms\n";
  for (const auto& a : report.results) {
    if (a.failures > 0) {
      std::cerr << "  FAIL " << a.label() << " [" << (a.convention ? to_string(*a.convention) : "none") << "] "
                << a.failures << "/" << a.trials << " min_slack " << format_real(a.min_slack) << " seed "
                << a.witness.witness.seed << "\n";
    }
  }
  return report.gating_failures > 0 ? exit_violation : exit_ok;
}

int explore_command(const CampaignConfig& config, const std::string& theorem, int budget) {
  const Certificate found = explore(config, theorem, budget);
  print_certificate(found);
  return found.mode == Mode::gating && !found.holds ? exit_violation : exit_ok;
}

int case_command(const CampaignConfig& config, const std::string& theorem, std::uint64_t seed,
                 const std::string& label, const std::string& convention, bool all) {
  const CheckerInfo& info = checker_info(theorem);
  const auto certificates = evaluate_trial(info, draw_trial(config, info, seed));
  const bool violated = std::any_of(certificates.begin(), certificates.end(),
                                    [](const Certificate& c) { return c.mode == Mode::gating && !c.holds; });
  const int code = violated ? exit_violation : exit_ok;
  if (all) {
    Json out = Json::array();
    for (const auto& c : certificates) out.push_back(to_json(c));
    write_json(std::cout, out);
    return code;
  }
  if (label.empty() && convention.empty()) {
    print_certificate(*objective(certificates));
    return code;
  }
  for (const auto& c : certificates) {
    const std::string name = c.convention ? std::string(to_string(*c.convention)) : "none";
    if ((label.empty() || c.label() == label) && (convention.empty() || name == convention)) {
      print_certificate(c);
      return code;
    }
  }
  throw Error(ErrorKind::bad_params, "no certificate matches the requested label/convention");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berezin-number inequality verification lab"};
  app.require_subcommand(1);

  CampaignFlags verify_flags;
  bool timing = false;
  auto* verify_cmd = app.add_subcommand("verify", "run a seeded campaign and emit a report");
  verify_flags.attach(*verify_cmd);
  verify_cmd->add_flag("--timing", timing, "record wall time in the report");

  CampaignFlags explore_flags;
  std::string explore_theorem;
  int budget = 0;
  auto* explore_cmd = app.add_subcommand("explore", "hill-climb toward the minimum slack of one checker");
  explore_flags.attach(*explore_cmd);
  explore_cmd->add_option("--theorem", explore_theorem, "theorem id")->required();
  explore_cmd->add_option("--budget", budget, "perturbation rounds")->required();

  CampaignFlags case_flags;
  std::string case_theorem;
  std::string label;
  std::string convention;
  bool all = false;
  auto* case_cmd = app.add_subcommand("case", "replay one trial from its per-trial seed");
  case_flags.attach(*case_cmd);
  case_cmd->get_option("--seed")->required();
  case_cmd->add_option("--theorem", case_theorem, "theorem id")->required();
  case_cmd->add_option("--label", label, "certificate label, ID or ID:variant");
  case_cmd->add_option("--convention", convention, "pair|joint|directsum|none");
  case_cmd->add_flag("--all", all, "print every certificate of the trial");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (*verify_cmd) return verify(verify_flags.build(*verify_cmd, timing));
    if (*explore_cmd) return explore_command(explore_flags.build(*explore_cmd, false), explore_theorem, budget);
    // The case seed is the per-trial seed, not a master seed.
    CampaignConfig config = case_flags.build(*case_cmd, false);
    return case_command(config, case_theorem, config.master_seed, label, convention, all);
  } catch (const Error& e) {
    std::cerr << "berlab: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "berlab: " << e.what() << "\n";
    return exit_config;
  }
}
