#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "berlab/blockops.hpp"
#include "berlab/json_io.hpp"

namespace berlab {

enum class Mode { gating, informational };

std::string_view to_string(Mode mode);

struct Witness {
  std::vector<Eigen::Index> indices;  // argmax kernel indices, checker specific
  std::uint64_t seed = 0;             // per-trial seed; 0 outside campaigns
};

/// One evaluated inequality lhs <= rhs.
struct Certificate {
  std::string theorem_id;
  std::string variant;  // chain link or reading; empty for single-link checkers
  std::optional<BerConvention> convention;
  std::map<std::string, double> params;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs
  bool holds = true;
  Mode mode = Mode::gating;
  Witness witness;
  std::string input_digest;

  /// "ID" or "ID:variant".
  std::string label() const;
};

inline constexpr double default_check_tol = 1e-9;

/// Tolerance on slack: rel·(1 + |rhs|), never below 1e-12.
double check_tolerance(double rhs, double rel = default_check_tol);

/// 64-bit FNV-1a over the raw bytes of the inputs, printed as 16 hex digits.
class InputDigest {
 public:
  InputDigest& add(const ComplexMatrix& m);
  InputDigest& add(const ComplexVector& v);
  InputDigest& add(double x);
  InputDigest& add(const KernelSpace& space);
  std::string hex() const;

 private:
  void bytes(const void* data, std::size_t size);
  std::uint64_t state_ = 1469598103934665603ULL;
};

Json to_json(const Certificate& certificate);
Certificate certificate_from_json(const Json& json);

}  // namespace berlab
