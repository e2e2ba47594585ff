#include "berlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "berlab/theorems.hpp"

namespace berlab {

namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorKind::config_invalid, message); }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> items;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return items;
}

double parse_double(std::string_view text, std::string_view key) {
  const std::string s(trim(text));
  try {
    std::size_t used = 0;
    const double value = std::stod(s, &used);
    if (used == s.size() && std::isfinite(value)) return value;
  } catch (const std::exception&) {
  }
  invalid("bad number '" + s + "' for " + std::string(key));
}

template <typename Int>
Int parse_int(std::string_view text, std::string_view key) {
  const auto s = trim(text);
  Int value{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size()) {
    invalid("bad integer '" + std::string(s) + "' for " + std::string(key));
  }
  return value;
}

std::vector<double> parse_doubles(std::string_view text, std::string_view key) {
  std::vector<double> out;
  for (auto item : split_list(text)) out.push_back(parse_double(item, key));
  return out;
}

bool parse_bool(std::string_view text, std::string_view key) {
  const auto s = trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  invalid("bad boolean '" + std::string(s) + "' for " + std::string(key));
}

template <typename T, typename Pred>
void require_all(const std::vector<T>& values, std::string_view name, Pred ok, std::string_view range) {
  if (values.empty()) invalid(std::string(name) + " grid is empty");
  for (const T& v : values) {
    if (!ok(v)) invalid(std::string(name) + " grid value " + std::to_string(v) + " outside " + std::string(range));
  }
}

Json reals(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

}  // namespace

std::vector<Dims> parse_dims(std::string_view text) {
  std::vector<Dims> dims;
  for (auto item : split_list(text)) {
    const auto x = item.find('x');
    if (x == std::string_view::npos) invalid("dims entry '" + std::string(item) + "' is not n1xn2");
    dims.emplace_back(parse_int<Eigen::Index>(item.substr(0, x), "dims"),
                      parse_int<Eigen::Index>(item.substr(x + 1), "dims"));
  }
  return dims;
}

void validate(const CampaignConfig& c) {
  if (c.trials_per_checker < 1) invalid("trials_per_checker must be >= 1");
  if (c.dims.empty()) invalid("dims is empty");
  for (const auto& [n1, n2] : c.dims) {
    if (n1 < 1 || n2 < 1) invalid("dims entries must be >= 1");
  }
  if (c.kernel_families.empty()) invalid("kernel_families is empty");
  for (const auto& family : c.kernel_families) {
    if (!(family.sigma > 0) || !std::isfinite(family.sigma)) invalid("gaussian_sigma must be positive");
  }
  const auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  const ParamGrid& g = c.grid;
  require_all(g.r, "r", [](double v) { return v >= 1.0; }, "[1,inf)");
  require_all(g.p, "p", unit, "[0,1]");
  require_all(g.t, "t", unit, "[0,1]");
  require_all(g.alpha, "alpha", unit, "[0,1]");
  require_all(g.nu, "nu", unit, "[0,1]");
  require_all(g.m, "m", [](int v) { return v >= 1; }, "[1,inf)");
  require_all(g.s, "s", [](double v) { return v >= 1.0; }, "[1,inf)");
  require_all(g.young_p, "young_p", [](double v) { return v >= 2.0; }, "[2,inf)");
  require_all(g.shift, "shift", [](double v) { return std::isfinite(v); }, "the reals");
  if (g.theta_grid < 4) invalid("theta_grid must be >= 4");
  if (!(c.check_tol > 0) || !std::isfinite(c.check_tol)) invalid("check_tol must be positive");
  if (c.format != "json" && c.format != "csv") invalid("format must be json or csv");
  if (c.jobs < 1) invalid("jobs must be >= 1");
  for (const auto& id : c.checker_filter) {
    try {
      checker_info(id);
    } catch (const Error&) {
      invalid("unknown theorem id '" + id + "'");
    }
  }
}

void apply_setting(CampaignConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "master_seed" || key == "seed") {
    c.master_seed = parse_int<std::uint64_t>(value, key);
  } else if (key == "trials_per_checker" || key == "trials") {
    c.trials_per_checker = parse_int<int>(value, key);
  } else if (key == "dims") {
    c.dims = parse_dims(value);
  } else if (key == "kernel_families" || key == "kernel") {
    const double sigma = c.kernel_families.empty() ? 1.0 : c.kernel_families.front().sigma;
    c.kernel_families.clear();
    for (auto name : split_list(value)) {
      const auto tag = kernel_tag_from_string(name);
      if (!tag) invalid("unknown kernel family '" + std::string(name) + "'");
      c.kernel_families.push_back({*tag, sigma});
    }
  } else if (key == "gaussian_sigma") {
    const double sigma = parse_double(value, key);
    for (auto& family : c.kernel_families) family.sigma = sigma;
  } else if (key == "checker_filter" || key == "theorems") {
    c.checker_filter.clear();
    for (auto id : split_list(value)) c.checker_filter.emplace_back(id);
  } else if (key == "check_tol" || key == "tol") {
    c.check_tol = parse_double(value, key);
  } else if (key == "output" || key == "out") {
    c.output_path = std::string(value);
  } else if (key == "format") {
    c.format = std::string(value);
  } else if (key == "jobs") {
    c.jobs = parse_int<int>(value, key);
  } else if (key == "timing") {
    c.timing = parse_bool(value, key);
  } else if (key == "r") {
    c.grid.r = parse_doubles(value, key);
  } else if (key == "p") {
    c.grid.p = parse_doubles(value, key);
  } else if (key == "t") {
    c.grid.t = parse_doubles(value, key);
  } else if (key == "alpha") {
    c.grid.alpha = parse_doubles(value, key);
  } else if (key == "nu") {
    c.grid.nu = parse_doubles(value, key);
  } else if (key == "m") {
    c.grid.m.clear();
    for (auto item : split_list(value)) c.grid.m.push_back(parse_int<int>(item, key));
  } else if (key == "s") {
    c.grid.s = parse_doubles(value, key);
  } else if (key == "young_p") {
    c.grid.young_p = parse_doubles(value, key);
  } else if (key == "shift") {
    c.grid.shift = parse_doubles(value, key);
  } else if (key == "theta_grid") {
    c.grid.theta_grid = parse_int<int>(value, key);
  } else {
    invalid("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(CampaignConfig& c, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    view = trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) invalid("line " + std::to_string(number) + ": expected key = value");
    apply_setting(c, trim(view.substr(0, eq)), view.substr(eq + 1));
  }
}

void apply_config_file(CampaignConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(c, buffer.str());
}

Json to_json(const CampaignConfig& c) {
  Json dims = Json::array();
  for (const auto& [n1, n2] : c.dims) dims.push_back(Json::array({n1, n2}));
  Json families = Json::array();
  for (const auto& f : c.kernel_families) {
    Json family;
    family["family"] = std::string(to_string(f.tag));
    family["sigma"] = f.sigma;
    families.push_back(family);
  }
  Json grid;
  grid["r"] = reals(c.grid.r);
  grid["p"] = reals(c.grid.p);
  grid["t"] = reals(c.grid.t);
  grid["alpha"] = reals(c.grid.alpha);
  grid["nu"] = reals(c.grid.nu);
  grid["m"] = c.grid.m;
  grid["s"] = reals(c.grid.s);
  grid["young_p"] = reals(c.grid.young_p);
  grid["shift"] = reals(c.grid.shift);
  grid["theta_grid"] = c.grid.theta_grid;

  Json out;
  out["master_seed"] = c.master_seed;
  out["trials_per_checker"] = c.trials_per_checker;
  out["dims"] = dims;
  out["kernel_families"] = families;
  out["param_grid"] = grid;
  out["checker_filter"] = c.checker_filter;
  out["check_tol"] = c.check_tol;
  return out;
}

}  // namespace berlab
