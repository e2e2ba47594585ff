#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "berlab/theorems.hpp"

namespace berlab::detail {

// Collects the certificates of one checker call.
class Emitter {
 public:
  Emitter(const CheckerInfo& info, const CheckParams& params, std::string digest)
      : info_(info), tol_(params.tol), digest_(std::move(digest)) {}

  Emitter& param(const std::string& name, double value) {
    params_[name] = value;
    return *this;
  }

  void emit(std::string variant, std::optional<BerConvention> convention, double lhs, double rhs,
            std::vector<Eigen::Index> indices = {}) {
    Certificate c;
    c.theorem_id = std::string(info_.id);
    c.variant = std::move(variant);
    c.convention = convention;
    c.params = params_;
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rhs - lhs;
    c.holds = std::isfinite(c.slack) && c.slack >= -check_tolerance(rhs, tol_);
    c.mode = mode_for(info_, convention);
    c.witness.indices = std::move(indices);
    c.input_digest = digest_;
    out_.push_back(std::move(c));
  }

  std::vector<Certificate> take() { return std::move(out_); }

 private:
  const CheckerInfo& info_;
  double tol_;
  std::string digest_;
  std::map<std::string, double> params_;
  std::vector<Certificate> out_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorKind::bad_params, message);
}

inline void require_unit_interval(double x, const char* name) {
  require(std::isfinite(x) && x >= 0.0 && x <= 1.0, std::string(name) + " must lie in [0,1]");
}

inline void require_at_least_one(double x, const char* name) {
  require(std::isfinite(x) && x >= 1.0, std::string(name) + " must be >= 1");
}

inline double conjugate_exponent(double p) { return p / (p - 1.0); }

// Real parts of the Berezin symbols of a PSD operator, clipped at 0.
inline RealVector psd_symbols(const KernelSpace& space, const ComplexMatrix& a) {
  return berezin_symbols(space, a).real().cwiseMax(0.0);
}

inline double ber(const KernelSpace& space, const ComplexMatrix& a) {
  return berezin_number(space, a).value;
}

}  // namespace berlab::detail
