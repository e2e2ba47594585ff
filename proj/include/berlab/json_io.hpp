#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace berlab {

using Json = nlohmann::ordered_json;

/// Pretty-prints with two-space indent. Floating-point values are written with
/// 17 significant digits (always with a '.' or exponent), non-finite as null.
void write_json(std::ostream& out, const Json& value);
std::string dump_json(const Json& value);

/// %.17g formatting used by both the JSON and CSV writers.
std::string format_real(double value);

}  // namespace berlab
