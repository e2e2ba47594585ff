#pragma once

// Hand-rolled generators for the property tests. They use their own RNG
// plumbing so the library's ensemble code is not its own oracle.

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "berlab/blockops.hpp"

namespace testing {

using berlab::Complex;
using berlab::ComplexMatrix;
using berlab::ComplexVector;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Complex complex() { return {normal(), normal()}; }

  ComplexMatrix matrix(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex();
    return m;
  }
  ComplexVector vector(Eigen::Index n) { return matrix(n, 1).col(0); }
  ComplexMatrix hermitian(Eigen::Index n) {
    const ComplexMatrix g = matrix(n, n);
    return (g + g.adjoint()) / 2.0;
  }
  ComplexMatrix psd(Eigen::Index n) {
    const ComplexMatrix g = matrix(n, n);
    return g.adjoint() * g;
  }
  // Rank-k square matrix.
  ComplexMatrix low_rank(Eigen::Index n, Eigen::Index k) { return matrix(n, k) * matrix(k, n); }
  ComplexMatrix unitary(Eigen::Index n) {
    Eigen::HouseholderQR<ComplexMatrix> qr(matrix(n, n));
    return qr.householderQ();
  }

  berlab::KernelFamily family() {
    switch (integer(0, 3)) {
      case 0: return {berlab::KernelTag::identity, 1.0};
      case 1: return {berlab::KernelTag::szego, 1.0};
      case 2: return {berlab::KernelTag::bergman, 1.0};
      default: return {berlab::KernelTag::gaussian, 1.0};
    }
  }

  std::vector<berlab::Point> points(const berlab::KernelFamily& family, Eigen::Index n) {
    std::vector<berlab::Point> out;
    for (Eigen::Index i = 0; i < n; ++i) {
      switch (family.tag) {
        case berlab::KernelTag::identity: out.emplace_back(double(i), 0.0); break;
        case berlab::KernelTag::szego:
        case berlab::KernelTag::bergman: out.push_back(std::polar(uniform(0.0, 0.85), uniform(0.0, 6.283185307179586))); break;
        case berlab::KernelTag::gaussian: out.emplace_back(uniform(-2.0 * double(n), 2.0 * double(n)), 0.0); break;
      }
    }
    return out;
  }

  std::shared_ptr<const berlab::KernelSpace> space(const berlab::KernelFamily& family, Eigen::Index n) {
    for (int attempt = 0;; ++attempt) {
      try {
        return std::make_shared<const berlab::KernelSpace>(berlab::build_space(family, points(family, n)));
      } catch (const berlab::Error&) {
        if (attempt > 50) throw;
      }
    }
  }
  std::shared_ptr<const berlab::KernelSpace> space(Eigen::Index n) { return space(family(), n); }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Largest singular value by power iteration on A*A; independent of the SVD.
inline double power_iteration_norm(const ComplexMatrix& a, int iterations = 5000) {
  const ComplexMatrix g = a.adjoint() * a;
  ComplexVector v = ComplexVector::Ones(a.cols()).normalized();
  double lambda = 0;
  for (int i = 0; i < iterations; ++i) {
    ComplexVector w = g * v;
    const double norm = w.norm();
    if (norm == 0) return 0;
    lambda = v.dot(w).real();
    v = w / norm;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

// Matches two eigenvalue lists greedily; returns the largest pairing error,
// or infinity when the counts differ.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0;
  for (const Complex& x : a) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < b.size(); ++j) {
      if (std::abs(b[j] - x) < std::abs(b[best] - x)) best = j;
    }
    worst = std::max(worst, std::abs(b[best] - x));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

inline std::vector<Complex> nonzero_eigenvalues(const ComplexMatrix& m, double cutoff) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m);
  std::vector<Complex> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (std::abs(solver.eigenvalues()(i)) > cutoff) out.push_back(solver.eigenvalues()(i));
  }
  return out;
}

}  // namespace testing
