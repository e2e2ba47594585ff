#include "berlab/blockops.hpp"

#include <string>

namespace berlab {

namespace {

void require_shape(const ComplexMatrix& m, Eigen::Index rows, Eigen::Index cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorKind::dimension_mismatch,
                std::string(name) + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void require_exponent(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::bad_params, "Aluthge exponent outside [0,1]");
}

}  // namespace

std::string_view to_string(BerConvention convention) {
  switch (convention) {
    case BerConvention::pair: return "pair";
    case BerConvention::joint: return "joint";
    case BerConvention::directsum: return "directsum";
  }
  return "pair";
}

std::optional<BerConvention> convention_from_string(std::string_view name) {
  for (auto c : {BerConvention::pair, BerConvention::joint, BerConvention::directsum}) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

void validate(const BlockOperator& block) {
  if (!block.space1 || !block.space2) throw Error(ErrorKind::dimension_mismatch, "block without spaces");
  const Eigen::Index n1 = block.space1->dim();
  const Eigen::Index n2 = block.space2->dim();
  require_shape(block.S, n1, n1, "S");
  require_shape(block.X, n1, n2, "X");
  require_shape(block.Y, n2, n1, "Y");
  require_shape(block.R, n2, n2, "R");
}

BlockOperator off_diagonal_block(ComplexMatrix x, ComplexMatrix y, std::shared_ptr<const KernelSpace> space1,
                                 std::shared_ptr<const KernelSpace> space2) {
  const Eigen::Index n1 = space1->dim();
  const Eigen::Index n2 = space2->dim();
  BlockOperator block{ComplexMatrix::Zero(n1, n1), std::move(x), std::move(y), ComplexMatrix::Zero(n2, n2),
                      std::move(space1), std::move(space2)};
  validate(block);
  return block;
}

BlockOperator diagonal_block(ComplexMatrix s, ComplexMatrix r, std::shared_ptr<const KernelSpace> space1,
                             std::shared_ptr<const KernelSpace> space2) {
  const Eigen::Index n1 = space1->dim();
  const Eigen::Index n2 = space2->dim();
  BlockOperator block{std::move(s), ComplexMatrix::Zero(n1, n2), ComplexMatrix::Zero(n2, n1), std::move(r),
                      std::move(space1), std::move(space2)};
  validate(block);
  return block;
}

ComplexMatrix assemble(const BlockOperator& block) {
  validate(block);
  const Eigen::Index n1 = block.n1();
  const Eigen::Index n2 = block.n2();
  ComplexMatrix t(n1 + n2, n1 + n2);
  t.topLeftCorner(n1, n1) = block.S;
  t.topRightCorner(n1, n2) = block.X;
  t.bottomLeftCorner(n2, n1) = block.Y;
  t.bottomRightCorner(n2, n2) = block.R;
  return t;
}

BlockOperator split(const ComplexMatrix& t, std::shared_ptr<const KernelSpace> space1,
                    std::shared_ptr<const KernelSpace> space2) {
  const Eigen::Index n1 = space1->dim();
  const Eigen::Index n2 = space2->dim();
  require_shape(t, n1 + n2, n1 + n2, "T");
  return BlockOperator{t.topLeftCorner(n1, n1), t.topRightCorner(n1, n2), t.bottomLeftCorner(n2, n1),
                       t.bottomRightCorner(n2, n2), std::move(space1), std::move(space2)};
}

ComplexMatrix pair_symbols(const BlockOperator& block) {
  validate(block);
  const ComplexMatrix& k1 = block.space1->normalized_chart();
  const ComplexMatrix& k2 = block.space2->normalized_chart();
  const ComplexVector s = berezin_symbols(*block.space1, block.S);
  const ComplexVector r = berezin_symbols(*block.space2, block.R);
  const ComplexMatrix x = k1.adjoint() * block.X * k2;  // (j1, j2) = <X k2_j2, k1_j1>
  const ComplexMatrix y = k2.adjoint() * block.Y * k1;  // (j2, j1) = <Y k1_j1, k2_j2>

  ComplexMatrix out = x + y.transpose();
  out.colwise() += s;
  out.rowwise() += r.transpose();
  return out;
}

BlockBer ber_block(const BlockOperator& block, BerConvention convention) {
  BlockBer result;
  if (convention == BerConvention::directsum) {
    validate(block);
    const BerezinMax first = berezin_number(*block.space1, block.S);
    const BerezinMax second = berezin_number(*block.space2, block.R);
    if (second.value > first.value) {
      result.value = second.value;
      result.j1 = block.n1() + second.index;
    } else {
      result.value = first.value;
      result.j1 = first.index;
    }
    result.j2 = -1;
    return result;
  }
  const ComplexMatrix symbols = pair_symbols(block);
  result.value = symbols.cwiseAbs().maxCoeff(&result.j1, &result.j2);
  if (convention == BerConvention::joint) result.value *= 0.5;
  return result;
}

ComplexMatrix aluthge_general(const ComplexMatrix& t, double exponent) {
  require_exponent(exponent);
  const auto parts = polar_decompose(t);
  return abs_power(t, exponent) * parts.isometry * abs_power(t, 1.0 - exponent);
}

OffDiagonalAluthge aluthge_offdiag(const ComplexMatrix& x, const ComplexMatrix& y, double exponent) {
  require_exponent(exponent);
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw Error(ErrorKind::dimension_mismatch, "closed-form Aluthge needs square X, Y of equal size");
  }
  const auto px = polar_decompose(x);
  const auto py = polar_decompose(y);
  return {abs_power(y, exponent) * px.isometry * abs_power(x, 1.0 - exponent),
          abs_power(x, exponent) * py.isometry * abs_power(y, 1.0 - exponent)};
}

BlockOperator aluthge_offdiag(const BlockOperator& block, double exponent) {
  auto parts = aluthge_offdiag(block.X, block.Y, exponent);
  return off_diagonal_block(std::move(parts.upper), std::move(parts.lower), block.space1, block.space2);
}

}  // namespace berlab
