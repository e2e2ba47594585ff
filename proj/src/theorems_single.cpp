#include <cmath>
#include <numbers>

#include "berlab/blockops.hpp"
#include "theorems_internal.hpp"

namespace berlab {

namespace {

using detail::ber;
using detail::Emitter;
using detail::require;

void require_square_on(const KernelSpace& space, const ComplexMatrix& t) {
  if (t.rows() != space.dim() || t.cols() != space.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "operator does not act on the kernel space");
  }
}

// ‖T k̂_j‖ for every kernel.
RealVector kernel_images(const KernelSpace& space, const ComplexMatrix& t) {
  return (t * space.normalized_chart()).colwise().norm().transpose();
}

void homogeneity(Emitter& out, const KernelSpace& space, const SingleInputs& in) {
  out.param("alpha_re", in.alpha.real()).param("alpha_im", in.alpha.imag());
  const BerezinMax scaled = berezin_number(space, (in.alpha * in.T).eval());
  const double expected = std::abs(in.alpha) * ber(space, in.T);
  out.emit("", std::nullopt, std::abs(scaled.value - expected), 1e-12 * (1.0 + expected), {scaled.index});
}

void subadditivity(Emitter& out, const KernelSpace& space, const SingleInputs& in) {
  require_square_on(space, in.B);
  const BerezinMax sum = berezin_number(space, (in.T + in.B).eval());
  out.emit("", std::nullopt, sum.value, ber(space, in.T) + ber(space, in.B), {sum.index});
}

void norm_bound(Emitter& out, const KernelSpace& space, const SingleInputs& in) {
  const BerezinMax b = berezin_number(space, in.T);
  out.emit("", std::nullopt, b.value, operator_norm(in.T), {b.index});
}

// Jensen on the spectral measure of a PSD operator at each unit kernel; the
// certificate reports the kernel with the least slack.
void spectral_jensen(Emitter& out, const KernelSpace& space, const SingleInputs& in, const CheckParams& params,
                     bool convex) {
  detail::require_at_least_one(params.r, "r");
  const double exponent = convex ? params.r : 1.0 / params.r;
  out.param("r", exponent);
  const RealVector plain = detail::psd_symbols(space, in.T);
  const RealVector powered = detail::psd_symbols(space, apply_spectral_function(in.T, power_of(exponent)));

  Eigen::Index worst = 0;
  double worst_slack = INFINITY;
  double worst_lhs = 0;
  double worst_rhs = 0;
  for (Eigen::Index j = 0; j < space.dim(); ++j) {
    const double lhs = convex ? std::pow(plain(j), exponent) : powered(j);
    const double rhs = convex ? powered(j) : std::pow(plain(j), exponent);
    if (rhs - lhs < worst_slack) {
      worst_slack = rhs - lhs;
      worst = j;
      worst_lhs = lhs;
      worst_rhs = rhs;
    }
  }
  out.emit("", std::nullopt, worst_lhs, worst_rhs, {worst});
}

// |<Tx,y>|² <= <f²(|T|)x,x><g²(|T*|)y,y> with f = t^p, g = t^{1-p}.
void mixed_schwarz(Emitter& out, const SingleInputs& in, const CheckParams& params) {
  detail::require_unit_interval(params.p, "p");
  if (in.x.size() != in.T.cols() || in.y.size() != in.T.rows()) {
    throw Error(ErrorKind::dimension_mismatch, "L23 vectors do not match the operator");
  }
  out.param("p", params.p);
  const double lhs = std::norm(in.y.dot(in.T * in.x));
  const ComplexMatrix f2 = abs_power(in.T, 2 * params.p);
  const ComplexMatrix g2 = abs_power(in.T.adjoint(), 2 * (1 - params.p));
  const double rhs = std::max(in.x.dot(f2 * in.x).real(), 0.0) * std::max(in.y.dot(g2 * in.y).real(), 0.0);
  out.emit("", std::nullopt, lhs, rhs);
}

void rotation_sup(Emitter& out, const KernelSpace& space, const SingleInputs& in, const CheckParams& params) {
  require(params.theta_grid >= 4, "theta_grid must be >= 4");
  out.param("theta_grid", params.theta_grid);
  const BerezinMax direct = berezin_number(space, in.T);
  const double rotated = ber_via_rotations(space, in.T, params.theta_grid);
  const double grid_gap = 1.0 - std::cos(std::numbers::pi / params.theta_grid);
  out.emit("", std::nullopt, std::abs(direct.value - rotated), grid_gap * direct.value, {direct.index});
}

void schwarz_power(Emitter& out, const KernelSpace& space, const SingleInputs& in, const CheckParams& params,
                   bool chain) {
  detail::require_at_least_one(params.r, "r");
  const double r = params.r;
  out.param("r", r);
  const BerezinMax b = berezin_number(space, in.T);
  const double norm_power = std::pow(operator_norm(in.T), 2 * r);
  const double bound = 0.5 * (std::pow(ber(space, in.T * in.T), r) + norm_power);
  const double lhs = std::pow(b.value, 2 * r);
  if (!chain) {
    out.emit("", std::nullopt, lhs, bound, {b.index});
    return;
  }
  out.emit("link1", std::nullopt, lhs, bound, {b.index});
  out.emit("link2", std::nullopt, bound, 0.5 * (norm_power + norm_power));
  out.emit("link3", std::nullopt, 0.5 * (norm_power + norm_power), norm_power);
}

void upper_bound_for_powers(Emitter& out, const KernelSpace& space, const SingleInputs& in,
                            const CheckParams& params, bool as_stated) {
  detail::require_at_least_one(params.r, "r");
  detail::require_unit_interval(params.p, "p");
  const double r = params.r;
  const double yp = params.young_p;
  require(std::isfinite(yp) && yp >= 2.0, "young_p must be >= 2 (p >= q > 1)");
  const double yq = detail::conjugate_exponent(yp);
  require(yq * r >= 2.0 - 1e-12, "T311 needs q r >= 2");
  out.param("r", r).param("p", params.p).param("young_p", yp);

  const ComplexMatrix square = in.T * in.T;
  const ComplexMatrix mixed = abs_power(square, params.p * yp * r) / yp +
                              abs_power(square.adjoint(), (1 - params.p) * yq * r) / yq;
  const BerezinMax b = berezin_number(space, in.T);
  const double lhs = std::pow(b.value, 2 * r);
  if (as_stated) {
    out.emit("", std::nullopt, lhs, 0.5 * (std::pow(operator_norm(in.T), 2 * r) + ber(space, mixed)), {b.index});
    return;
  }
  const RealVector forward = kernel_images(space, in.T);
  const RealVector backward = kernel_images(space, in.T.adjoint());
  const RealVector mixed_symbols = berezin_symbols(space, mixed).real();
  Eigen::Index best = 0;
  double rhs = -INFINITY;
  for (Eigen::Index j = 0; j < space.dim(); ++j) {
    const double bound = 0.5 * (std::pow(forward(j), r) * std::pow(backward(j), r) + mixed_symbols(j));
    if (bound > rhs) {
      rhs = bound;
      best = j;
    }
  }
  out.emit("", std::nullopt, lhs, rhs, {b.index, best});
}

void norm_via_shifts(Emitter& out, const KernelSpace& space, const SingleInputs& in, const CheckParams& params,
                     bool as_stated) {
  detail::require_unit_interval(params.nu, "nu");
  require(std::isfinite(params.shift), "shift must be finite");
  const double nu = params.nu;
  const double t = params.shift;
  out.param("nu", nu).param("shift", t);
  const Eigen::Index n = in.T.rows();
  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
  const double b = ber(space, in.T);
  const double real_shift = operator_norm((in.T - t * identity).eval());
  const double imag_shift = operator_norm((in.T - Complex(0, t) * identity).eval());
  const double rhs = ((1 - nu) * (1 - nu) + nu * nu) * b * b + nu * real_shift * real_shift +
                     (1 - nu) * imag_shift * imag_shift;
  if (as_stated) {
    const double norm = operator_norm(in.T);
    out.emit("", std::nullopt, norm * norm, rhs);
    return;
  }
  Eigen::Index j = 0;
  const double sup_image = kernel_images(space, in.T).maxCoeff(&j);
  out.emit("", std::nullopt, sup_image * sup_image, rhs, {j});
}

void aluthge_bound(Emitter& out, const KernelSpace& space, const SingleInputs& in, double t, bool half) {
  detail::require_unit_interval(t, "t");
  out.param("t", t);
  const BerezinMax b = berezin_number(space, in.T);
  const double transform = ber(space, aluthge_general(in.T, t));
  double modulus_term = 0;
  if (half) {
    modulus_term = 0.5 * operator_norm(in.T);
  } else {
    modulus_term = 0.25 * operator_norm((abs_power(in.T, 2 * t) + abs_power(in.T, 2 * (1 - t))).eval());
  }
  out.emit("", std::nullopt, b.value, modulus_term + 0.5 * transform, {b.index});
}

}  // namespace

std::vector<Certificate> check_single(std::string_view id, const KernelSpace& space, const SingleInputs& in,
                                      const CheckParams& params) {
  const CheckerInfo& info = checker_info(id);
  require(info.kind == CheckerKind::single, std::string(id) + " is not a single-operator checker");
  require_square_on(space, in.T);
  require(all_finite(in.T), "operator has non-finite entries");

  InputDigest digest;
  digest.add(space).add(in.T).add(in.B).add(in.alpha.real()).add(in.alpha.imag()).add(in.x).add(in.y);
  Emitter out(info, params, digest.hex());

  if (id == "BER_HOM") {
    homogeneity(out, space, in);
  } else if (id == "BER_SUB") {
    subadditivity(out, space, in);
  } else if (id == "BER_NORM") {
    norm_bound(out, space, in);
  } else if (id == "L22a" || id == "L22b") {
    spectral_jensen(out, space, in, params, id == "L22a");
  } else if (id == "L23") {
    mixed_schwarz(out, in, params);
  } else if (id == "L21c") {
    rotation_sup(out, space, in, params);
  } else if (id == "P39" || id == "R310") {
    schwarz_power(out, space, in, params, id == "R310");
  } else if (id == "T311_proof" || id == "T311_stmt") {
    upper_bound_for_powers(out, space, in, params, id == "T311_stmt");
  } else if (id == "T312_proof" || id == "T312_stmt") {
    norm_via_shifts(out, space, in, params, id == "T312_stmt");
  } else if (id == "T32") {
    aluthge_bound(out, space, in, params.t, false);
  } else {
    aluthge_bound(out, space, in, 0.5, true);
  }
  return out.take();
}

std::vector<Certificate> check_single(std::string_view id, const KernelSpace& space, const ComplexMatrix& t,
                                      const CheckParams& params) {
  SingleInputs in;
  in.T = t;
  in.B = ComplexMatrix::Zero(t.rows(), t.cols());
  in.x = ComplexVector::Zero(t.cols());
  in.y = ComplexVector::Zero(t.rows());
  return check_single(id, space, in, params);
}

}  // namespace berlab
