#pragma once

// One checker per inequality. A checker evaluates both sides on concrete
// inputs and returns one Certificate per chain link / reading.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "berlab/certificate.hpp"

namespace berlab {

struct CheckParams {
  double r = 1.0;        // outer power, r >= 1
  double p = 0.5;        // f(t) = t^p, g(t) = t^{1-p}, p in [0,1]
  double t = 0.5;        // Aluthge exponent in [0,1]
  double alpha = 0.5;    // T36/T37 split in [0,1]
  double nu = 0.5;       // weight in [0,1]
  int m = 1;             // YOUNG2 power
  double s = 1.0;        // h(t) = t^s in INEQ1, s >= 1
  double young_p = 2.0;  // conjugate exponents p, q = p/(p-1)
  double shift = 0.0;    // real t of T312
  int theta_grid = 720;  // rotation grid of L21c
  double tol = default_check_tol;
};

struct ScalarInputs {
  double a = 0;
  double b = 0;
  ComplexVector va, vb, ve;  // S310 vectors, ‖ve‖ = 1
};

struct SingleInputs {
  ComplexMatrix T;
  ComplexMatrix B;            // second operator (BER_SUB)
  Complex alpha{1.0, 0.0};    // BER_HOM scalar
  ComplexVector x, y;         // L23 vectors
};

enum class CheckerKind { scalar, single, block };

// Which part of a block operator a block checker reads; the other blocks
// are ignored.
enum class BlockShape {
  none,
  diagonal,                // S, R
  off_diagonal,            // X, Y
  symmetric_off_diagonal,  // X only, Y := X (n1 = n2)
  square_off_diagonal,     // X, Y with n1 = n2
  full,
};

enum class SingleOperand { general, psd };

struct CheckerInfo {
  std::string_view id;
  CheckerKind kind = CheckerKind::single;
  BlockShape shape = BlockShape::none;
  SingleOperand operand = SingleOperand::general;
  // Conventions a campaign evaluates, gating one first.
  std::vector<BerConvention> conventions;
  // Convention whose certificates gate; convention-free links always gate.
  std::optional<BerConvention> gating;
  bool informational = false;
};

std::span<const CheckerInfo> checker_registry();
/// Throws BadParams for an unknown id.
const CheckerInfo& checker_info(std::string_view id);
Mode mode_for(const CheckerInfo& info, std::optional<BerConvention> convention);

/// YOUNG2, I37, I38, S310.
std::vector<Certificate> check_scalar(std::string_view id, const CheckParams& params,
                                      const ScalarInputs& inputs);

/// L21c, P39, R310, T311_proof, T311_stmt, T312_proof, T312_stmt, T32, R33,
/// L22a, L22b, L23, BER_HOM, BER_SUB, BER_NORM.
std::vector<Certificate> check_single(std::string_view id, const KernelSpace& space,
                                      const SingleInputs& inputs, const CheckParams& params);
std::vector<Certificate> check_single(std::string_view id, const KernelSpace& space,
                                      const ComplexMatrix& t, const CheckParams& params);

/// L21a, L21b, INEQ1, T24a, T24b, C25a, C25b, R26, C27, C28, T29, C210,
/// T31, C34, C35, T36, T37.
std::vector<Certificate> check_block(std::string_view id, const BlockOperator& block,
                                     BerConvention convention, const CheckParams& params);

}  // namespace berlab
