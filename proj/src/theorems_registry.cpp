#include <algorithm>
#include <string>

#include "theorems_internal.hpp"

namespace berlab {

namespace {

using BC = BerConvention;

CheckerInfo scalar(std::string_view id) {
  return {id, CheckerKind::scalar, BlockShape::none, SingleOperand::general, {}, std::nullopt, false};
}

CheckerInfo single(std::string_view id, bool informational = false,
                   SingleOperand operand = SingleOperand::general) {
  return {id, CheckerKind::single, BlockShape::none, operand, {}, std::nullopt, informational};
}

CheckerInfo block(std::string_view id, BlockShape shape, BC gating, std::vector<BC> others) {
  std::vector<BC> conventions{gating};
  conventions.insert(conventions.end(), others.begin(), others.end());
  return {id, CheckerKind::block, shape, SingleOperand::general, std::move(conventions), gating, false};
}

std::vector<CheckerInfo> make_registry() {
  return {
      scalar("YOUNG2"),
      scalar("I37"),
      scalar("I38"),
      scalar("S310"),
      single("BER_HOM"),
      single("BER_SUB"),
      single("BER_NORM"),
      single("L22a", false, SingleOperand::psd),
      single("L22b", false, SingleOperand::psd),
      single("L23"),
      block("L21a", BlockShape::diagonal, BC::joint, {BC::pair}),
      block("L21b", BlockShape::off_diagonal, BC::joint, {BC::pair}),
      single("L21c"),
      block("INEQ1", BlockShape::off_diagonal, BC::joint, {BC::pair}),
      block("T24a", BlockShape::off_diagonal, BC::pair, {BC::joint}),
      block("T24b", BlockShape::off_diagonal, BC::pair, {BC::joint}),
      block("C25a", BlockShape::off_diagonal, BC::joint, {BC::pair}),
      block("C25b", BlockShape::off_diagonal, BC::joint, {BC::pair}),
      block("R26", BlockShape::off_diagonal, BC::joint, {BC::pair}),
      block("C27", BlockShape::symmetric_off_diagonal, BC::joint, {BC::pair}),
      block("C28", BlockShape::off_diagonal, BC::joint, {BC::pair}),
      block("T29", BlockShape::off_diagonal, BC::pair, {BC::joint}),
      block("C210", BlockShape::symmetric_off_diagonal, BC::pair, {BC::joint}),
      block("T31", BlockShape::off_diagonal, BC::joint, {}),
      single("T32"),
      single("R33"),
      block("C34", BlockShape::off_diagonal, BC::joint, {}),
      {"C35", CheckerKind::block, BlockShape::square_off_diagonal, SingleOperand::general, {BC::joint},
       std::nullopt, true},
      block("T36", BlockShape::full, BC::joint, {BC::pair}),
      block("T37", BlockShape::full, BC::joint, {BC::pair}),
      single("P39"),
      single("R310"),
      single("T311_proof"),
      single("T311_stmt", true),
      single("T312_proof"),
      single("T312_stmt", true),
  };
}

}  // namespace

std::span<const CheckerInfo> checker_registry() {
  static const std::vector<CheckerInfo> registry = make_registry();
  return registry;
}

const CheckerInfo& checker_info(std::string_view id) {
  const auto registry = checker_registry();
  const auto it = std::find_if(registry.begin(), registry.end(), [&](const CheckerInfo& info) { return info.id == id; });
  if (it == registry.end()) throw Error(ErrorKind::bad_params, "unknown theorem id '" + std::string(id) + "'");
  return *it;
}

Mode mode_for(const CheckerInfo& info, std::optional<BerConvention> convention) {
  if (info.informational) return Mode::informational;
  if (!convention || convention == info.gating) return Mode::gating;
  return Mode::informational;
}

}  // namespace berlab
