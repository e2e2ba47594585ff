#include "berlab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace berlab {

namespace {

void write_indent(std::ostream& out, int depth) {
  for (int i = 0; i < depth; ++i) out << "  ";
}

void write_string(std::ostream& out, const std::string& s) {
  out << Json(s).dump();
}

void write_value(std::ostream& out, const Json& value, int depth) {
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        write_indent(out, depth + 1);
        write_string(out, it.key());
        out << ": ";
        write_value(out, it.value(), depth + 1);
      }
      out << "\n";
      write_indent(out, depth);
      out << "}";
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) out << ",\n";
        first = false;
        write_indent(out, depth + 1);
        write_value(out, item, depth + 1);
      }
      out << "\n";
      write_indent(out, depth);
      out << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = value.get<double>();
      out << (std::isfinite(x) ? format_real(x) : std::string("null"));
      return;
    }
    default:
      out << value.dump();
  }
}

}  // namespace

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  std::string text(buffer);
  if (text.find_first_of(".eEni") == std::string::npos) text += ".0";
  return text;
}

void write_json(std::ostream& out, const Json& value) {
  write_value(out, value, 0);
  out << "\n";
}

std::string dump_json(const Json& value) {
  std::ostringstream out;
  write_json(out, value);
  return out.str();
}

}  // namespace berlab
