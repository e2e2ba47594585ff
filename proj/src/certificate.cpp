#include "berlab/certificate.hpp"

#include <cmath>
#include <cstdio>

namespace berlab {

std::string_view to_string(Mode mode) {
  return mode == Mode::gating ? "gating" : "informational";
}

std::string Certificate::label() const {
  return variant.empty() ? theorem_id : theorem_id + ":" + variant;
}

double check_tolerance(double rhs, double rel) {
  return std::max(rel * (1.0 + std::abs(rhs)), 1e-12);
}

void InputDigest::bytes(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    state_ ^= p[i];
    state_ *= 1099511628211ULL;
  }
}

InputDigest& InputDigest::add(const ComplexMatrix& m) {
  const std::int64_t shape[2] = {m.rows(), m.cols()};
  bytes(shape, sizeof shape);
  bytes(m.data(), sizeof(Complex) * static_cast<std::size_t>(m.size()));
  return *this;
}

InputDigest& InputDigest::add(const ComplexVector& v) {
  const std::int64_t size = v.size();
  bytes(&size, sizeof size);
  bytes(v.data(), sizeof(Complex) * static_cast<std::size_t>(v.size()));
  return *this;
}

InputDigest& InputDigest::add(double x) {
  bytes(&x, sizeof x);
  return *this;
}

InputDigest& InputDigest::add(const KernelSpace& space) {
  return add(space.gram());
}

std::string InputDigest::hex() const {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(state_));
  return buffer;
}

Json to_json(const Certificate& c) {
  Json params = Json::object();
  for (const auto& [name, value] : c.params) params[name] = value;
  Json indices = Json::array();
  for (Eigen::Index i : c.witness.indices) indices.push_back(static_cast<std::int64_t>(i));

  Json out;
  out["theorem_id"] = c.theorem_id;
  out["variant"] = c.variant;
  out["convention"] = c.convention ? Json(std::string(to_string(*c.convention))) : Json(nullptr);
  out["params"] = std::move(params);
  out["lhs"] = c.lhs;
  out["rhs"] = c.rhs;
  out["slack"] = c.slack;
  out["holds"] = c.holds;
  out["mode"] = std::string(to_string(c.mode));
  out["witness"] = Json{{"indices", std::move(indices)}, {"seed", c.witness.seed}};
  out["input_digest"] = c.input_digest;
  return out;
}

namespace {

// Non-finite reals are written as null.
double real_or_nan(const Json& value) {
  return value.is_null() ? std::nan("") : value.get<double>();
}

}  // namespace

Certificate certificate_from_json(const Json& json) {
  Certificate c;
  c.theorem_id = json.at("theorem_id").get<std::string>();
  c.variant = json.at("variant").get<std::string>();
  if (!json.at("convention").is_null()) {
    c.convention = convention_from_string(json.at("convention").get<std::string>());
  }
  for (auto it = json.at("params").begin(); it != json.at("params").end(); ++it) {
    c.params[it.key()] = real_or_nan(it.value());
  }
  c.lhs = real_or_nan(json.at("lhs"));
  c.rhs = real_or_nan(json.at("rhs"));
  c.slack = real_or_nan(json.at("slack"));
  c.holds = json.at("holds").get<bool>();
  c.mode = json.at("mode").get<std::string>() == "gating" ? Mode::gating : Mode::informational;
  for (const auto& i : json.at("witness").at("indices")) c.witness.indices.push_back(i.get<std::int64_t>());
  c.witness.seed = json.at("witness").at("seed").get<std::uint64_t>();
  c.input_digest = json.at("input_digest").get<std::string>();
  return c;
}

}  // namespace berlab
