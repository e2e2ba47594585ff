#include <cmath>
#include <fstream>
#include <ostream>

#include "berlab/campaign.hpp"

namespace berlab {

namespace {

Json real_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double real_from(const Json& value) { return value.is_null() ? std::nan("") : value.get<double>(); }

std::string convention_name(const std::optional<BerConvention>& c) {
  return c ? std::string(to_string(*c)) : std::string("none");
}

}  // namespace

Json to_json(const Report& report) {
  Json results = Json::array();
  for (const auto& a : report.results) {
    Json entry;
    entry["theorem_id"] = a.theorem_id;
    entry["variant"] = a.variant;
    entry["convention"] = a.convention ? Json(std::string(to_string(*a.convention))) : Json(nullptr);
    entry["mode"] = std::string(to_string(a.mode));
    entry["trials"] = a.trials;
    entry["failures"] = a.failures;
    entry["min_slack"] = real_or_null(a.min_slack);
    entry["mean_slack"] = real_or_null(a.mean_slack);
    entry["witness"] = to_json(a.witness);
    results.push_back(std::move(entry));
  }
  Json anomalies = Json::array();
  for (const auto& a : report.anomalies) {
    anomalies.push_back(Json{{"theorem_id", a.theorem_id},
                             {"count", a.count},
                             {"first_message", a.first_message},
                             {"first_seed", a.first_seed}});
  }
  Json out;
  out["config"] = report.config;
  out["results"] = std::move(results);
  out["anomalies"] = std::move(anomalies);
  out["gating_failures"] = report.gating_failures;
  out["wall_time_ms"] = report.wall_time_ms ? Json(*report.wall_time_ms) : Json(nullptr);
  out["version"] = report.version;
  return out;
}

Report report_from_json(const Json& json) {
  Report report;
  report.config = json.at("config");
  for (const auto& entry : json.at("results")) {
    Aggregate a;
    a.theorem_id = entry.at("theorem_id").get<std::string>();
    a.variant = entry.at("variant").get<std::string>();
    if (!entry.at("convention").is_null()) {
      a.convention = convention_from_string(entry.at("convention").get<std::string>());
    }
    a.mode = entry.at("mode").get<std::string>() == "gating" ? Mode::gating : Mode::informational;
    a.trials = entry.at("trials").get<std::int64_t>();
    a.failures = entry.at("failures").get<std::int64_t>();
    a.min_slack = real_from(entry.at("min_slack"));
    a.mean_slack = real_from(entry.at("mean_slack"));
    a.witness = certificate_from_json(entry.at("witness"));
    report.results.push_back(std::move(a));
  }
  for (const auto& entry : json.at("anomalies")) {
    report.anomalies.push_back({entry.at("theorem_id").get<std::string>(), entry.at("count").get<std::int64_t>(),
                                entry.at("first_message").get<std::string>(),
                                entry.at("first_seed").get<std::uint64_t>()});
  }
  report.gating_failures = json.at("gating_failures").get<std::int64_t>();
  if (!json.at("wall_time_ms").is_null()) report.wall_time_ms = json.at("wall_time_ms").get<double>();
  report.version = json.at("version").get<std::string>();
  return report;
}

void write_csv(std::ostream& out, const Report& report) {
  out << "theorem_id,convention,trials,failures,min_slack,mean_slack,witness_digest\n";
  for (const auto& a : report.results) {
    out << a.label() << ',' << convention_name(a.convention) << ',' << a.trials << ',' << a.failures << ','
        << format_real(a.min_slack) << ',' << format_real(a.mean_slack) << ',' << a.witness.input_digest << '\n';
  }
}

void emit_report(const Report& report, const std::string& format, const std::string& path, std::ostream& fallback) {
  if (format != "json" && format != "csv") throw Error(ErrorKind::config_invalid, "format must be json or csv");
  std::ofstream file;
  if (!path.empty()) {
    file.open(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::io_error, "cannot open " + path + " for writing");
  }
  std::ostream& out = path.empty() ? fallback : file;
  if (format == "json") {
    write_json(out, to_json(report));
  } else {
    write_csv(out, report);
  }
  out.flush();
  if (!out) throw Error(ErrorKind::io_error, "write failed" + (path.empty() ? std::string() : " for " + path));
}

}  // namespace berlab
