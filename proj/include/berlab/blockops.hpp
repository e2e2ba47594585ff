#pragma once

// 2×2 block operators T = [[S, X], [Y, R]] acting on H(Ω1) ⊕ H(Ω2), the
// Berezin functionals on kernel pairs, and (generalized) Aluthge transforms.

#include <memory>
#include <optional>
#include <string_view>

#include "berlab/rkhs.hpp"

namespace berlab {

// How a kernel pair (k̂_{λ1}, k̂_{λ2}) is normalized:
//  pair      each component unit, the pair itself has norm √2
//  joint     the pair rescaled by 1/√2 to unit norm
//  directsum kernels (k̂_λ, 0) and (0, k̂_μ) of the disjoint-union space
enum class BerConvention { pair, joint, directsum };

std::string_view to_string(BerConvention convention);
std::optional<BerConvention> convention_from_string(std::string_view name);

struct BlockOperator {
  ComplexMatrix S;  // n1×n1
  ComplexMatrix X;  // n1×n2
  ComplexMatrix Y;  // n2×n1
  ComplexMatrix R;  // n2×n2
  std::shared_ptr<const KernelSpace> space1;
  std::shared_ptr<const KernelSpace> space2;

  Eigen::Index n1() const { return space1 ? space1->dim() : S.rows(); }
  Eigen::Index n2() const { return space2 ? space2->dim() : R.rows(); }
};

/// Throws DimensionMismatch unless every block matches the space dimensions.
void validate(const BlockOperator& block);

BlockOperator off_diagonal_block(ComplexMatrix x, ComplexMatrix y,
                                 std::shared_ptr<const KernelSpace> space1,
                                 std::shared_ptr<const KernelSpace> space2);
BlockOperator diagonal_block(ComplexMatrix s, ComplexMatrix r,
                             std::shared_ptr<const KernelSpace> space1,
                             std::shared_ptr<const KernelSpace> space2);

ComplexMatrix assemble(const BlockOperator& block);

/// Cuts an (n1+n2)-square matrix back into blocks over the given spaces.
BlockOperator split(const ComplexMatrix& t, std::shared_ptr<const KernelSpace> space1,
                    std::shared_ptr<const KernelSpace> space2);

/// Entry (j1, j2) is <S k̂1,k̂1> + <X k̂2,k̂1> + <Y k̂1,k̂2> + <R k̂2,k̂2>.
ComplexMatrix pair_symbols(const BlockOperator& block);

struct BlockBer {
  double value = 0;
  Eigen::Index j1 = 0;  // directsum: index into Ω1 ⊔ Ω2
  Eigen::Index j2 = 0;  // directsum: unused (-1)
};

BlockBer ber_block(const BlockOperator& block, BerConvention convention);

/// T̃_t = |T|^t U |T|^{1-t} with T = U|T|.
ComplexMatrix aluthge_general(const ComplexMatrix& t, double exponent);

struct OffDiagonalAluthge {
  ComplexMatrix upper;  // |Y|^t U |X|^{1-t}
  ComplexMatrix lower;  // |X|^t V |Y|^{1-t}
};

/// Closed form of the transform of [[0, X], [Y, 0]] for square X, Y of equal size.
OffDiagonalAluthge aluthge_offdiag(const ComplexMatrix& x, const ComplexMatrix& y, double exponent);
BlockOperator aluthge_offdiag(const BlockOperator& block, double exponent);

}  // namespace berlab
