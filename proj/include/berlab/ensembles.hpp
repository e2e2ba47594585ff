#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string_view>

#include "berlab/rkhs.hpp"

namespace berlab {

using Rng = std::mt19937_64;

enum class Ensemble { ginibre, hermitian, psd, unitary, partial_isometry, contraction, nilpotent };

std::string_view to_string(Ensemble kind);
std::optional<Ensemble> ensemble_from_string(std::string_view name);
std::span<const Ensemble> all_ensembles();

/// Independent standard complex Gaussians (E|z|² = 1).
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);
ComplexVector gaussian_vector(Eigen::Index n, Rng& rng);

/// Square draw of the given kind. Throws BadParams for dim < 1.
ComplexMatrix draw_operator(Ensemble kind, Eigen::Index dim, Rng& rng);
/// Rectangular draw: the top-left rows×cols corner of a square draw.
ComplexMatrix draw_operator(Ensemble kind, Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Deterministic in (kind, dim, seed).
ComplexMatrix generate_operator(Ensemble kind, Eigen::Index dim, std::uint64_t seed);

std::vector<Point> sample_points(const KernelFamily& family, Eigen::Index n, Rng& rng);

inline constexpr int max_space_draws = 5;

/// Samples points and builds the space, redrawing on IllConditioned or
/// DuplicatePoints up to max_space_draws times before rethrowing.
std::shared_ptr<const KernelSpace> draw_space(const KernelFamily& family, Eigen::Index n, Rng& rng);

}  // namespace berlab
