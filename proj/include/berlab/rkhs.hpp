#pragma once

// Finite models of functional Hilbert spaces. A KernelSpace samples a kernel
// family on a point set Ω; operators act on the orthonormal coordinates of
// the chart, in which column j is the kernel k_{λ_j}.

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "berlab/numlin.hpp"

namespace berlab {

enum class KernelTag { identity, szego, bergman, gaussian };

std::string_view to_string(KernelTag tag);
std::optional<KernelTag> kernel_tag_from_string(std::string_view name);

struct KernelFamily {
  KernelTag tag = KernelTag::identity;
  double sigma = 1.0;  // Gaussian width

  friend bool operator==(const KernelFamily&, const KernelFamily&) = default;
};

// Points are complex for the disk kernels, real (imag = 0) for the Gaussian
// kernel and abstract indices 0, 1, ... for the identity kernel.
using Point = std::complex<double>;

/// k(z, w) = <k_w, k_z> for the given family.
Complex kernel_value(const KernelFamily& family, Point z, Point w);

class KernelSpace {
 public:
  const KernelFamily& family() const noexcept { return family_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const ComplexMatrix& gram() const noexcept { return gram_; }
  const ComplexMatrix& chart() const noexcept { return chart_; }
  /// Chart with every column scaled to unit norm (the k̂_λ).
  const ComplexMatrix& normalized_chart() const noexcept { return normalized_; }
  Eigen::Index dim() const noexcept { return chart_.cols(); }

 private:
  friend KernelSpace build_space(const KernelFamily&, std::vector<Point>, double);

  KernelFamily family_;
  std::vector<Point> points_;
  ComplexMatrix gram_;
  ComplexMatrix chart_;
  ComplexMatrix normalized_;
};

inline constexpr double default_cond_floor = 1e-10;

/// Samples the kernel on `points` and factors the Gram matrix as chart*·chart.
/// Throws DuplicatePoints, IllConditioned (min/max eigenvalue < cond_floor) or
/// BadParams (points outside the disk, σ ≤ 0, empty point set).
KernelSpace build_space(const KernelFamily& family, std::vector<Point> points,
                        double cond_floor = default_cond_floor);

/// Identity-kernel space of dimension n (points 0..n-1).
KernelSpace identity_space(Eigen::Index n);

ComplexVector normalized_kernel(const KernelSpace& space, Eigen::Index j);

Complex berezin_symbol(const KernelSpace& space, const ComplexMatrix& a, Eigen::Index j);

/// Ã(λ_j) for every j.
ComplexVector berezin_symbols(const KernelSpace& space, const ComplexMatrix& a);

struct BerezinMax {
  double value = 0;
  Eigen::Index index = 0;  // argmax point
};

BerezinMax berezin_number(const KernelSpace& space, const ComplexMatrix& a);

/// max over θ_k = 2πk/grid of ber(Re(e^{iθ_k} A)).
double ber_via_rotations(const KernelSpace& space, const ComplexMatrix& a, int grid);

}  // namespace berlab
