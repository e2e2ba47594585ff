#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace berlab {

enum class ErrorKind {
  not_hermitian,
  not_psd,
  ill_conditioned,
  duplicate_points,
  index_out_of_range,
  dimension_mismatch,
  bad_params,
  config_invalid,
  io_error,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::not_hermitian: return "NotHermitian";
    case ErrorKind::not_psd: return "NotPSD";
    case ErrorKind::ill_conditioned: return "IllConditioned";
    case ErrorKind::duplicate_points: return "DuplicatePoints";
    case ErrorKind::index_out_of_range: return "IndexOutOfRange";
    case ErrorKind::dimension_mismatch: return "DimensionMismatch";
    case ErrorKind::bad_params: return "BadParams";
    case ErrorKind::config_invalid: return "ConfigInvalid";
    case ErrorKind::io_error: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace berlab
