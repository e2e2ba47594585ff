#include "berlab/rkhs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace berlab {

namespace {

void require_operator(const KernelSpace& space, const ComplexMatrix& a) {
  if (a.rows() != space.dim() || a.cols() != space.dim()) {
    throw Error(ErrorKind::dimension_mismatch,
                "operator is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " on a space of dimension " + std::to_string(space.dim()));
  }
}

void validate_points(const KernelFamily& family, const std::vector<Point>& points) {
  if (points.empty()) throw Error(ErrorKind::bad_params, "empty point set");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].real()) || !std::isfinite(points[i].imag())) {
      throw Error(ErrorKind::bad_params, "non-finite point");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) {
        throw Error(ErrorKind::duplicate_points, "points " + std::to_string(j) + " and " +
                                                     std::to_string(i) + " coincide");
      }
    }
  }
  switch (family.tag) {
    case KernelTag::szego:
    case KernelTag::bergman:
      for (const Point& z : points) {
        if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::bad_params, "disk point with |z| >= 1");
      }
      break;
    case KernelTag::gaussian:
      if (!(family.sigma > 0)) throw Error(ErrorKind::bad_params, "gaussian width must be > 0");
      break;
    case KernelTag::identity:
      break;
  }
}

}  // namespace

std::string_view to_string(KernelTag tag) {
  switch (tag) {
    case KernelTag::identity: return "identity";
    case KernelTag::szego: return "szego";
    case KernelTag::bergman: return "bergman";
    case KernelTag::gaussian: return "gaussian";
  }
  return "identity";
}

std::optional<KernelTag> kernel_tag_from_string(std::string_view name) {
  for (KernelTag tag : {KernelTag::identity, KernelTag::szego, KernelTag::bergman, KernelTag::gaussian}) {
    if (name == to_string(tag)) return tag;
  }
  return std::nullopt;
}

Complex kernel_value(const KernelFamily& family, Point z, Point w) {
  switch (family.tag) {
    case KernelTag::identity:
      return z == w ? Complex(1.0) : Complex(0.0);
    case KernelTag::szego:
      return 1.0 / (1.0 - z * std::conj(w));
    case KernelTag::bergman: {
      const Complex d = 1.0 - z * std::conj(w);
      return 1.0 / (d * d);
    }
    case KernelTag::gaussian: {
      const double gap = z.real() - w.real();
      return std::exp(-gap * gap / (2.0 * family.sigma * family.sigma));
    }
  }
  return 0.0;
}

KernelSpace build_space(const KernelFamily& family, std::vector<Point> points, double cond_floor) {
  validate_points(family, points);
  const auto n = static_cast<Eigen::Index>(points.size());

  ComplexMatrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) gram(i, j) = kernel_value(family, points[i], points[j]);
  }

  const auto eig = hermitian_eig(gram);
  const double smallest = eig.eigenvalues(0);
  const double largest = eig.eigenvalues(n - 1);
  if (!(smallest >= cond_floor * largest)) {
    throw Error(ErrorKind::ill_conditioned,
                "gram eigenvalue ratio " + std::to_string(smallest / largest));
  }

  Eigen::LLT<ComplexMatrix> llt(gram);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::ill_conditioned, "gram factorization failed");

  KernelSpace space;
  space.family_ = family;
  space.points_ = std::move(points);
  space.gram_ = std::move(gram);
  space.chart_ = llt.matrixU();  // chart* chart = L L* = gram
  space.normalized_ = space.chart_;
  for (Eigen::Index j = 0; j < n; ++j) space.normalized_.col(j).normalize();
  return space;
}

KernelSpace identity_space(Eigen::Index n) {
  std::vector<Point> points;
  for (Eigen::Index i = 0; i < n; ++i) points.emplace_back(static_cast<double>(i), 0.0);
  return build_space({KernelTag::identity, 1.0}, std::move(points));
}

ComplexVector normalized_kernel(const KernelSpace& space, Eigen::Index j) {
  if (j < 0 || j >= space.dim()) {
    throw Error(ErrorKind::index_out_of_range, "kernel index " + std::to_string(j));
  }
  return space.normalized_chart().col(j);
}

Complex berezin_symbol(const KernelSpace& space, const ComplexMatrix& a, Eigen::Index j) {
  require_operator(space, a);
  const ComplexVector k = normalized_kernel(space, j);
  return k.dot(a * k);
}

ComplexVector berezin_symbols(const KernelSpace& space, const ComplexMatrix& a) {
  require_operator(space, a);
  const ComplexMatrix& k = space.normalized_chart();
  const ComplexMatrix ak = a * k;
  ComplexVector symbols(space.dim());
  for (Eigen::Index j = 0; j < space.dim(); ++j) symbols(j) = k.col(j).dot(ak.col(j));
  return symbols;
}

BerezinMax berezin_number(const KernelSpace& space, const ComplexMatrix& a) {
  const ComplexVector symbols = berezin_symbols(space, a);
  BerezinMax best;
  best.value = symbols.cwiseAbs().maxCoeff(&best.index);
  return best;
}

double ber_via_rotations(const KernelSpace& space, const ComplexMatrix& a, int grid) {
  if (grid < 4) throw Error(ErrorKind::bad_params, "rotation grid must be >= 4");
  double best = 0;
  for (int k = 0; k < grid; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / grid;
    best = std::max(best, berezin_number(space, re_rotation(a, theta)).value);
  }
  return best;
}

}  // namespace berlab
