#pragma once

// Dense linear algebra kernels shared by every module: norms, Hermitian
// eigendecomposition, spectral functional calculus and polar parts.
// Everything here is a pure function template over Eigen expressions.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "berlab/errors.hpp"

namespace berlab {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

using Complex = std::complex<double>;
using ComplexMatrix = Matrix<Complex>;
using ComplexVector = Vector<Complex>;
using RealVector = Eigen::VectorXd;

// All tolerances are relative to the norm of the input; when that norm is
// zero, absolute_floor is used instead.
struct Tolerances {
  double herm_tol = 1e-10;
  double psd_tol = 1e-10;
  double rank_tol = 1e-12;
  double absolute_floor = 1e-14;
};

namespace detail {

template <typename Derived>
using PlainOf = Matrix<typename Derived::Scalar>;

template <typename Real>
Real scaled_tol(Real tol, Real reference, Real floor) {
  return reference > 0 ? tol * reference : floor;
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::dimension_mismatch,
                std::string(what) + " needs a square matrix, got " + std::to_string(a.rows()) +
                    "x" + std::to_string(a.cols()));
  }
}

}  // namespace detail

template <typename Derived>
detail::PlainOf<Derived> adjoint(const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

/// Largest singular value; 0 for an empty matrix.
template <typename Derived>
RealOf<typename Derived::Scalar> operator_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0;
  const detail::PlainOf<Derived> m = a;
  Eigen::JacobiSVD<detail::PlainOf<Derived>> svd(m);
  return svd.singularValues()(0);
}

template <typename Scalar>
struct HermitianEigen {
  Vector<RealOf<Scalar>> eigenvalues;  // ascending
  Matrix<Scalar> eigenvectors;         // unitary, one eigenvector per column
};

/// Eigendecomposition of a (numerically) Hermitian matrix. The Hermitian part
/// is what gets diagonalized; a skew defect above herm_tol·‖A‖ is rejected.
template <typename Derived>
HermitianEigen<typename Derived::Scalar> hermitian_eig(const Eigen::MatrixBase<Derived>& a,
                                                       const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using Real = RealOf<Scalar>;
  detail::require_square(a, "hermitian_eig");
  const Matrix<Scalar> m = a;
  if (m.rows() == 0) return {Vector<Real>(0), Matrix<Scalar>(0, 0)};

  const Real norm = operator_norm(m);
  const Real defect = operator_norm(m - m.adjoint());
  if (defect > detail::scaled_tol<Real>(tol.herm_tol, norm, tol.absolute_floor)) {
    throw Error(ErrorKind::not_hermitian, "skew defect " + std::to_string(defect));
  }
  const Matrix<Scalar> hermitian_part = (m + m.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(hermitian_part);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// s ↦ s^e on [0, ∞) with the convention 0^0 = 1.
inline auto power_of(double exponent) {
  return [exponent](double s) {
    if (exponent == 0.0) return 1.0;
    return s <= 0.0 ? 0.0 : std::pow(s, exponent);
  };
}

/// φ(A) = Q diag(φ(λ)) Q* for positive semidefinite A.
///
/// Eigenvalues in [-psd_tol·‖A‖, rank_tol·‖A‖] are treated as exact zeros;
/// anything more negative is an error.
template <typename Derived, typename Fn>
detail::PlainOf<Derived> apply_spectral_function(const Eigen::MatrixBase<Derived>& a, Fn&& phi,
                                                 const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using Real = RealOf<Scalar>;
  const auto eig = hermitian_eig(a, tol);
  const Eigen::Index n = eig.eigenvalues.size();
  if (n == 0) return Matrix<Scalar>(0, 0);

  const Real scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  const Real negative_limit = detail::scaled_tol<Real>(tol.psd_tol, scale, tol.absolute_floor);
  const Real zero_limit = tol.rank_tol * scale;

  Vector<Scalar> mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Real lambda = eig.eigenvalues(i);
    if (lambda < -negative_limit) {
      throw Error(ErrorKind::not_psd, "eigenvalue " + std::to_string(lambda));
    }
    if (lambda <= zero_limit) lambda = 0;
    mapped(i) = Scalar(phi(lambda));
  }
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

/// φ(|T|) evaluated through the SVD of T, so |T| is never re-diagonalized.
/// Singular values at or below rank_tol·σ_max count as zero; the result is
/// cols×cols.
template <typename Derived, typename Fn>
detail::PlainOf<Derived> abs_spectral_function(const Eigen::MatrixBase<Derived>& t, Fn&& phi,
                                               const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using Real = RealOf<Scalar>;
  const Eigen::Index n = t.cols();
  if (n == 0) return Matrix<Scalar>(0, 0);
  if (t.rows() == 0) return Matrix<Scalar>::Identity(n, n) * Scalar(phi(Real(0)));

  const Matrix<Scalar> m = t;
  Eigen::JacobiSVD<Matrix<Scalar>> svd(m, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const Real cut = sigma(0) * tol.rank_tol;

  Vector<Scalar> mapped = Vector<Scalar>::Constant(n, Scalar(phi(Real(0))));
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    mapped(i) = Scalar(phi(sigma(i) > cut ? sigma(i) : Real(0)));
  }
  const Matrix<Scalar>& v = svd.matrixV();
  return v * mapped.asDiagonal() * v.adjoint();
}

/// |T| = (T*T)^{1/2}.
template <typename Derived>
detail::PlainOf<Derived> matrix_abs(const Eigen::MatrixBase<Derived>& t, const Tolerances& tol = {}) {
  return abs_spectral_function(t, [](double s) { return s; }, tol);
}

/// |T|^e with 0^0 = 1, so |T|^0 is the identity.
template <typename Derived>
detail::PlainOf<Derived> abs_power(const Eigen::MatrixBase<Derived>& t, double exponent,
                                   const Tolerances& tol = {}) {
  return abs_spectral_function(t, power_of(exponent), tol);
}

template <typename Scalar>
struct PolarParts {
  Matrix<Scalar> isometry;  // partial isometry U, ker U = ker |T|
  Matrix<Scalar> modulus;   // |T|
};

/// T = U|T| from one SVD. Singular directions below rank_tol·σ_max are dropped
/// from U so that its initial space is exactly the support of |T|.
template <typename Derived>
PolarParts<typename Derived::Scalar> polar_decompose(const Eigen::MatrixBase<Derived>& t,
                                                     const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using Real = RealOf<Scalar>;
  detail::require_square(t, "polar_decompose");
  const Eigen::Index n = t.rows();
  if (n == 0) return {Matrix<Scalar>(0, 0), Matrix<Scalar>(0, 0)};

  const Matrix<Scalar> m = t;
  Eigen::JacobiSVD<Matrix<Scalar>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const Real cut = sigma(0) * tol.rank_tol;

  Eigen::Index rank = 0;
  Vector<Scalar> kept(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool on_support = sigma(i) > cut;
    kept(i) = on_support ? Scalar(sigma(i)) : Scalar(0);
    if (on_support) ++rank;
  }
  const Matrix<Scalar>& u = svd.matrixU();
  const Matrix<Scalar>& v = svd.matrixV();
  PolarParts<Scalar> parts;
  parts.isometry = u.leftCols(rank) * v.leftCols(rank).adjoint();
  parts.modulus = v * kept.asDiagonal() * v.adjoint();
  return parts;
}

/// Re(e^{iθ}A) = (e^{iθ}A + e^{-iθ}A*)/2; exactly Hermitian in floating point.
template <typename Derived>
detail::PlainOf<Derived> re_rotation(const Eigen::MatrixBase<Derived>& a,
                                     RealOf<typename Derived::Scalar> theta) {
  using Scalar = typename Derived::Scalar;
  using Real = RealOf<Scalar>;
  static_assert(Eigen::NumTraits<Scalar>::IsComplex, "re_rotation needs a complex scalar");
  detail::require_square(a, "re_rotation");
  const Scalar phase = std::polar(Real(1), theta);
  const Matrix<Scalar> rotated = phase * a;
  return (rotated + rotated.adjoint()) / Real(2);
}

}  // namespace berlab
