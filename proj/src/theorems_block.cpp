#include <cmath>

#include "theorems_internal.hpp"

namespace berlab {

namespace {

using detail::ber;
using detail::Emitter;
using detail::require;

struct Context {
  const BlockOperator& block;  // the part the checker reads
  BerConvention convention;
  const CheckParams& params;
  Emitter& out;

  const KernelSpace& space1() const { return *block.space1; }
  const KernelSpace& space2() const { return *block.space2; }
  BlockBer value() const { return ber_block(block, convention); }
};

std::vector<Eigen::Index> indices(const BlockBer& b) { return {b.j1, b.j2}; }

BlockOperator restrict_to(const CheckerInfo& info, const BlockOperator& block) {
  validate(block);
  switch (info.shape) {
    case BlockShape::diagonal:
      return diagonal_block(block.S, block.R, block.space1, block.space2);
    case BlockShape::off_diagonal:
      return off_diagonal_block(block.X, block.Y, block.space1, block.space2);
    case BlockShape::symmetric_off_diagonal:
    case BlockShape::square_off_diagonal: {
      if (block.n1() != block.n2()) {
        throw Error(ErrorKind::dimension_mismatch, std::string(info.id) + " needs n1 = n2");
      }
      const ComplexMatrix& y = info.shape == BlockShape::symmetric_off_diagonal ? block.X : block.Y;
      return off_diagonal_block(block.X, y, block.space1, block.space2);
    }
    case BlockShape::full:
    case BlockShape::none:
      break;
  }
  return block;
}

// f^{2r}(|X|) + g^{2r}(|Y*|) on the second space and f^{2r}(|Y|) + g^{2r}(|X*|)
// on the first, with f = t^p and g = t^{1-p}. The "split" form moves both
// f-powers to the second space and both g-powers to the first.
struct MixedPair {
  ComplexMatrix second;
  ComplexMatrix first;
};

MixedPair mixed_moduli(const BlockOperator& b, double r, double p, bool split) {
  const double ef = 2 * r * p;
  const double eg = 2 * r * (1 - p);
  const ComplexMatrix xa = b.X.adjoint();
  const ComplexMatrix ya = b.Y.adjoint();
  if (split) {
    return {abs_power(b.X, ef) + abs_power(ya, ef), abs_power(b.Y, eg) + abs_power(xa, eg)};
  }
  return {abs_power(b.X, ef) + abs_power(ya, eg), abs_power(b.Y, ef) + abs_power(xa, eg)};
}

void diagonal_bound(Context& c) {
  const BlockBer b = c.value();
  const double rhs = std::max(ber(c.space1(), c.block.S), ber(c.space2(), c.block.R));
  c.out.emit("", c.convention, b.value, rhs, indices(b));
}

void off_diagonal_bound(Context& c) {
  const BlockBer b = c.value();
  c.out.emit("general", c.convention, b.value, 0.5 * (operator_norm(c.block.X) + operator_norm(c.block.Y)),
             indices(b));
  if (c.block.n1() != c.block.n2()) return;
  const BlockOperator same = off_diagonal_block(c.block.X, c.block.X, c.block.space1, c.block.space2);
  const BlockBer bs = ber_block(same, c.convention);
  c.out.emit("special", c.convention, bs.value, operator_norm(c.block.X), indices(bs));
}

void power_mean_bound(Context& c) {
  const double s = c.params.s;
  const double p = c.params.p;
  detail::require_at_least_one(s, "s");
  detail::require_unit_interval(p, "p");
  c.out.param("s", s).param("p", p);
  const BlockBer b = c.value();
  const auto term = [&](const ComplexMatrix& m) {
    return 0.25 * operator_norm((abs_power(m, 2 * p * s) + abs_power(m, 2 * (1 - p) * s)).eval());
  };
  c.out.emit("", c.convention, std::pow(b.value, s), term(c.block.Y) + term(c.block.X), indices(b));
}

void geometric_mean_bound(Context& c, double exponent_shift, bool split) {
  const double r = c.params.r;
  const double p = c.params.p;
  detail::require_at_least_one(r, "r");
  detail::require_unit_interval(p, "p");
  c.out.param("r", r).param("p", p);
  const MixedPair m = mixed_moduli(c.block, r, p, split);
  const BlockBer b = c.value();
  const double rhs = std::pow(2.0, r - exponent_shift) * std::sqrt(ber(c.space2(), m.second) * ber(c.space1(), m.first));
  c.out.emit("", c.convention, std::pow(b.value, r), rhs, indices(b));
}

struct ModulusSums {
  double second;  // ber(|X| + |Y*|)
  double first;   // ber(|Y| + |X*|)
};

ModulusSums modulus_sums(const Context& c) {
  const ComplexMatrix a = matrix_abs(c.block.X) + matrix_abs(c.block.Y.adjoint().eval());
  const ComplexMatrix b = matrix_abs(c.block.Y) + matrix_abs(c.block.X.adjoint().eval());
  return {ber(c.space2(), a), ber(c.space1(), b)};
}

void modulus_sum_bound(Context& c) {
  const ModulusSums m = modulus_sums(c);
  const BlockBer b = c.value();
  c.out.emit("", c.convention, b.value, 0.5 * std::sqrt(m.second * m.first), indices(b));
}

void symmetric_modulus_chain(Context& c) {
  const ModulusSums m = modulus_sums(c);
  const BlockBer b = c.value();
  const double mean = 0.5 * std::sqrt(m.second * m.first);
  c.out.emit("link1", c.convention, b.value, mean, indices(b));
  c.out.emit("link2", std::nullopt, mean, operator_norm(c.block.X));
}

void modulus_chain(Context& c) {
  const ModulusSums m = modulus_sums(c);
  const BlockBer b = c.value();
  const double geometric = 0.5 * std::sqrt(m.second * m.first);
  const double arithmetic = 0.5 * (m.second + m.first) / 2;
  c.out.emit("link1", c.convention, b.value, geometric, indices(b));
  c.out.emit("link2", std::nullopt, geometric, arithmetic);
  c.out.emit("link3", std::nullopt, arithmetic, 0.5 * std::max(m.second, m.first));
}

struct Gap {
  double value = INFINITY;
  Eigen::Index j1 = 0;
  Eigen::Index j2 = 0;
};

// min over kernel pairs of (√<A k̂2,k̂2> - √<B k̂1,k̂1>)².
Gap min_gap(const KernelSpace& space1, const ComplexMatrix& on_first, const KernelSpace& space2,
            const ComplexMatrix& on_second) {
  const RealVector a = detail::psd_symbols(space2, on_second).cwiseSqrt();
  const RealVector b = detail::psd_symbols(space1, on_first).cwiseSqrt();
  Gap gap;
  for (Eigen::Index j1 = 0; j1 < b.size(); ++j1) {
    for (Eigen::Index j2 = 0; j2 < a.size(); ++j2) {
      const double eta = (a(j2) - b(j1)) * (a(j2) - b(j1));
      if (eta < gap.value) gap = {eta, j1, j2};
    }
  }
  return gap;
}

void refined_sum_bound(Context& c) {
  const double r = c.params.r;
  const double p = c.params.p;
  detail::require_at_least_one(r, "r");
  detail::require_unit_interval(p, "p");
  c.out.param("r", r).param("p", p);
  const MixedPair m = mixed_moduli(c.block, r, p, false);
  const Gap gap = min_gap(c.space1(), m.first, c.space2(), m.second);
  const double weight = std::pow(2.0, r - 2);
  const double rhs = weight * (ber(c.space2(), m.second) + ber(c.space1(), m.first)) - weight * gap.value;
  const BlockBer b = c.value();
  c.out.emit("", c.convention, std::pow(b.value, r), rhs, {b.j1, b.j2, gap.j1, gap.j2});
}

void refined_norm_bound(Context& c) {
  const double r = c.params.r;
  const double p = c.params.p;
  detail::require_at_least_one(r, "r");
  detail::require_unit_interval(p, "p");
  c.out.param("r", r).param("p", p);
  const ComplexMatrix m = abs_power(c.block.X, 2 * r * p) + abs_power(c.block.X.adjoint().eval(), 2 * r * (1 - p));
  const Gap gap = min_gap(c.space1(), m, c.space2(), m);
  const double rhs = std::pow(2.0, r - 1) * operator_norm(m) - std::pow(2.0, r - 2) * gap.value;
  const BlockBer b = c.value();
  c.out.emit("", c.convention, std::pow(b.value, r), rhs, {b.j1, b.j2, gap.j1, gap.j2});
}

BlockOperator transformed(const BlockOperator& block, double t) {
  if (block.n1() == block.n2()) return aluthge_offdiag(block, t);
  return split(aluthge_general(assemble(block), t), block.space1, block.space2);
}

// ‖|Y|^t|X*|^{1-t}‖ + ‖|X|^t|Y*|^{1-t}‖.
double cross_moduli(const BlockOperator& block, double t) {
  const ComplexMatrix xa = block.X.adjoint();
  const ComplexMatrix ya = block.Y.adjoint();
  return operator_norm((abs_power(block.Y, t) * abs_power(xa, 1 - t)).eval()) +
         operator_norm((abs_power(block.X, t) * abs_power(ya, 1 - t)).eval());
}

void aluthge_block_bound(Context& c) {
  const double t = c.params.t;
  detail::require_unit_interval(t, "t");
  c.out.param("t", t);
  const BlockBer b = ber_block(transformed(c.block, t), c.convention);
  c.out.emit("", c.convention, b.value, 0.5 * cross_moduli(c.block, t), indices(b));
}

void half_aluthge_block_bound(Context& c) {
  const BlockBer b = c.value();
  const double rhs = 0.5 * std::max(operator_norm(c.block.X), operator_norm(c.block.Y)) +
                     0.25 * cross_moduli(c.block, 0.5);
  c.out.emit("", c.convention, b.value, rhs, indices(b));
}

void sum_norm_bound(Context& c) {
  const BlockOperator& b = c.block;
  const ComplexMatrix xa = b.X.adjoint();
  const ComplexMatrix ya = b.Y.adjoint();
  const double rhs = std::max(operator_norm(b.X), operator_norm(b.Y)) +
                     0.5 * (operator_norm((abs_power(b.X, 0.5) * abs_power(b.Y, 0.5)).eval()) +
                            operator_norm((abs_power(xa, 0.5) * abs_power(ya, 0.5)).eval()));
  c.out.emit("X+Y", std::nullopt, operator_norm((b.X + b.Y).eval()), rhs);
  c.out.emit("X+Y*", std::nullopt, operator_norm((b.X + ya).eval()), rhs);
}

void full_block_bound(Context& c, bool mirrored) {
  const double alpha = c.params.alpha;
  detail::require_unit_interval(alpha, "alpha");
  c.out.param("alpha", alpha);
  const BlockOperator& b = c.block;
  const double main = mirrored ? ber(c.space2(), b.R) : ber(c.space1(), b.S);
  const double other = mirrored ? ber(c.space1(), b.S) : ber(c.space2(), b.R);
  const double first_norm = operator_norm(mirrored ? b.Y : b.X);
  const double second_norm = operator_norm(mirrored ? b.X : b.Y);
  const double rhs = 0.5 * main + other + 0.5 * std::hypot(alpha * main, first_norm) +
                     0.5 * std::hypot((1 - alpha) * main, second_norm);
  const BlockBer value = c.value();
  c.out.emit("", c.convention, value.value, rhs, indices(value));
}

}  // namespace

std::vector<Certificate> check_block(std::string_view id, const BlockOperator& block, BerConvention convention,
                                     const CheckParams& params) {
  const CheckerInfo& info = checker_info(id);
  require(info.kind == CheckerKind::block, std::string(id) + " is not a block checker");
  const BlockOperator part = restrict_to(info, block);
  require(all_finite(part.S) && all_finite(part.X) && all_finite(part.Y) && all_finite(part.R),
          "block has non-finite entries");

  InputDigest digest;
  digest.add(*part.space1).add(*part.space2).add(part.S).add(part.X).add(part.Y).add(part.R);
  Emitter out(info, params, digest.hex());
  Context c{part, convention, params, out};

  if (id == "L21a") {
    diagonal_bound(c);
  } else if (id == "L21b") {
    off_diagonal_bound(c);
  } else if (id == "INEQ1") {
    power_mean_bound(c);
  } else if (id == "T24a" || id == "T24b") {
    geometric_mean_bound(c, 1.0, id == "T24b");
  } else if (id == "C25a" || id == "C25b") {
    geometric_mean_bound(c, 2.0, id == "C25b");
  } else if (id == "R26") {
    modulus_sum_bound(c);
  } else if (id == "C27") {
    symmetric_modulus_chain(c);
  } else if (id == "C28") {
    modulus_chain(c);
  } else if (id == "T29") {
    refined_sum_bound(c);
  } else if (id == "C210") {
    refined_norm_bound(c);
  } else if (id == "T31") {
    aluthge_block_bound(c);
  } else if (id == "C34") {
    half_aluthge_block_bound(c);
  } else if (id == "C35") {
    sum_norm_bound(c);
  } else if (id == "T36" || id == "T37") {
    full_block_bound(c, id == "T37");
  }
  return out.take();
}

}  // namespace berlab
