#include <cmath>

#include "theorems_internal.hpp"

namespace berlab {

namespace {

using detail::Emitter;
using detail::require;

void young_refined(Emitter& out, const CheckParams& params, const ScalarInputs& in) {
  require(params.m >= 1, "m must be a positive integer");
  const double m = params.m;
  out.param("m", m).param("a", in.a).param("b", in.b);
  // sqrt(a*a) and (a+a)/2 are exact, so a = b gives slack 0 bit for bit.
  const double geometric = std::pow(std::sqrt(in.a * in.b), m);
  const double gap = std::pow(in.a, m / 2) - std::pow(in.b, m / 2);
  const double lhs = geometric + std::pow(0.5, m) * gap * gap;
  const double rhs = std::pow((in.a + in.b) / 2, m);
  out.emit("", std::nullopt, lhs, rhs);
}

void weighted_means(Emitter& out, const CheckParams& params, const ScalarInputs& in) {
  detail::require_unit_interval(params.nu, "nu");
  detail::require_at_least_one(params.r, "r");
  const double nu = params.nu;
  const double r = params.r;
  out.param("nu", nu).param("r", r).param("a", in.a).param("b", in.b);
  const double geometric = std::pow(in.a, nu) * std::pow(in.b, 1 - nu);
  const double arithmetic = nu * in.a + (1 - nu) * in.b;
  const double power_mean = std::pow(nu * std::pow(in.a, r) + (1 - nu) * std::pow(in.b, r), 1 / r);
  out.emit("link1", std::nullopt, geometric, arithmetic);
  out.emit("link2", std::nullopt, arithmetic, power_mean);
}

void young_power(Emitter& out, const CheckParams& params, const ScalarInputs& in) {
  require(std::isfinite(params.young_p) && params.young_p > 1, "young_p must be > 1");
  detail::require_at_least_one(params.r, "r");
  const double p = params.young_p;
  const double q = detail::conjugate_exponent(p);
  const double r = params.r;
  out.param("young_p", p).param("r", r).param("a", in.a).param("b", in.b);
  const double product = in.a * in.b;
  const double young = std::pow(in.a, p) / p + std::pow(in.b, q) / q;
  const double refined = std::pow(std::pow(in.a, p * r) / p + std::pow(in.b, q * r) / q, 1 / r);
  out.emit("link1", std::nullopt, product, young);
  out.emit("link2", std::nullopt, young, refined);
}

// ‖a‖‖b‖ >= |<a,b> - <a,e><e,b>| + |<a,e><e,b>| >= |<a,b>| with <u,v> = v*u.
void schwarz_refined(Emitter& out, const ScalarInputs& in) {
  const auto n = in.va.size();
  if (in.vb.size() != n || in.ve.size() != n) {
    throw Error(ErrorKind::dimension_mismatch, "S310 vectors differ in length");
  }
  require(std::abs(in.ve.norm() - 1.0) <= 1e-12, "S310 needs a unit vector e");
  const Complex ab = in.vb.dot(in.va);
  const Complex ae = in.ve.dot(in.va);
  const Complex eb = in.vb.dot(in.ve);
  const double middle = std::abs(ab - ae * eb) + std::abs(ae * eb);
  out.emit("link1", std::nullopt, middle, in.va.norm() * in.vb.norm());
  out.emit("link2", std::nullopt, std::abs(ab), middle);
}

}  // namespace

std::vector<Certificate> check_scalar(std::string_view id, const CheckParams& params, const ScalarInputs& in) {
  const CheckerInfo& info = checker_info(id);
  require(info.kind == CheckerKind::scalar, std::string(id) + " is not a scalar checker");
  require(std::isfinite(in.a) && std::isfinite(in.b) && in.a >= 0 && in.b >= 0,
          "scalar inputs must be finite and nonnegative");

  InputDigest digest;
  digest.add(in.a).add(in.b).add(in.va).add(in.vb).add(in.ve);
  Emitter out(info, params, digest.hex());
  if (id == "YOUNG2") {
    young_refined(out, params, in);
  } else if (id == "I37") {
    weighted_means(out, params, in);
  } else if (id == "I38") {
    young_power(out, params, in);
  } else {
    schwarz_refined(out, in);
  }
  return out.take();
}

}  // namespace berlab
