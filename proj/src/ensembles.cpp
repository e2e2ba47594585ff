#include "berlab/ensembles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace berlab {

namespace {

constexpr std::array<Ensemble, 7> kEnsembles{Ensemble::ginibre,     Ensemble::hermitian,        Ensemble::psd,
                                             Ensemble::unitary,     Ensemble::partial_isometry, Ensemble::contraction,
                                             Ensemble::nilpotent};

}  // namespace

std::string_view to_string(Ensemble kind) {
  switch (kind) {
    case Ensemble::ginibre: return "ginibre";
    case Ensemble::hermitian: return "hermitian";
    case Ensemble::psd: return "psd";
    case Ensemble::unitary: return "unitary";
    case Ensemble::partial_isometry: return "partial_isometry";
    case Ensemble::contraction: return "contraction";
    case Ensemble::nilpotent: return "nilpotent";
  }
  return "ginibre";
}

std::optional<Ensemble> ensemble_from_string(std::string_view name) {
  for (Ensemble kind : kEnsembles) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::span<const Ensemble> all_ensembles() { return kEnsembles; }

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexVector gaussian_vector(Eigen::Index n, Rng& rng) { return ginibre(n, 1, rng).col(0); }

ComplexMatrix draw_operator(Ensemble kind, Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorKind::bad_params, "operator dimension must be >= 1");
  const ComplexMatrix g = ginibre(dim, dim, rng);
  switch (kind) {
    case Ensemble::ginibre:
      return g;
    case Ensemble::hermitian:
      return (g + g.adjoint()) / 2.0;
    case Ensemble::psd:
      return g.adjoint() * g;
    case Ensemble::unitary:
      return polar_decompose(g).isometry;
    case Ensemble::partial_isometry: {
      const Eigen::Index rank = std::uniform_int_distribution<Eigen::Index>(0, dim)(rng);
      std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      std::shuffle(order.begin(), order.end(), rng);
      RealVector projection = RealVector::Zero(dim);
      for (Eigen::Index k = 0; k < rank; ++k) projection(order[static_cast<std::size_t>(k)]) = 1.0;
      return polar_decompose(g).isometry * projection.cast<Complex>().asDiagonal();
    }
    case Ensemble::contraction: {
      const double norm = operator_norm(g);
      return norm > 0 ? ComplexMatrix(g / norm) : g;
    }
    case Ensemble::nilpotent:
      return g.triangularView<Eigen::StrictlyUpper>();
  }
  return g;
}

ComplexMatrix draw_operator(Ensemble kind, Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  if (rows < 1 || cols < 1) throw Error(ErrorKind::bad_params, "operator dimension must be >= 1");
  return draw_operator(kind, std::max(rows, cols), rng).topLeftCorner(rows, cols);
}

ComplexMatrix generate_operator(Ensemble kind, Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return draw_operator(kind, dim, rng);
}

std::vector<Point> sample_points(const KernelFamily& family, Eigen::Index n, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    switch (family.tag) {
      case KernelTag::identity:
        points.emplace_back(static_cast<double>(i), 0.0);
        break;
      case KernelTag::szego:
      case KernelTag::bergman: {
        const double radius = 0.9 * std::sqrt(unit(rng));
        const double angle = 2 * std::numbers::pi * unit(rng);
        points.push_back(std::polar(radius, angle));
        break;
      }
      case KernelTag::gaussian: {
        const double half_width = static_cast<double>(n);
        points.emplace_back(-half_width + 2 * half_width * unit(rng), 0.0);
        break;
      }
    }
  }
  return points;
}

std::shared_ptr<const KernelSpace> draw_space(const KernelFamily& family, Eigen::Index n, Rng& rng) {
  for (int attempt = 1;; ++attempt) {
    try {
      return std::make_shared<const KernelSpace>(build_space(family, sample_points(family, n, rng)));
    } catch (const Error& e) {
      const bool retry = e.kind() == ErrorKind::ill_conditioned || e.kind() == ErrorKind::duplicate_points;
      if (!retry || attempt >= max_space_draws) throw;
    }
  }
}

}  // namespace berlab
