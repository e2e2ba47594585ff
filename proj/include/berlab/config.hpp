#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "berlab/json_io.hpp"
#include "berlab/rkhs.hpp"

namespace berlab {

struct ParamGrid {
  std::vector<double> r{1.0, 1.5, 2.0, 3.0};
  std::vector<double> p{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> t{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> alpha{0.0, 0.5, 1.0};
  std::vector<double> nu{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<int> m{1, 2, 3};
  std::vector<double> s{1.0, 2.0};
  std::vector<double> young_p{2.0, 3.0, 4.0};
  std::vector<double> shift{-1.0, 0.0, 0.5, 1.0, 2.0};
  int theta_grid = 720;
};

using Dims = std::pair<Eigen::Index, Eigen::Index>;

struct CampaignConfig {
  std::uint64_t master_seed = 42;
  int trials_per_checker = 500;
  std::vector<Dims> dims{{1, 1}, {2, 2}, {3, 2}, {4, 4}, {6, 5}};
  std::vector<KernelFamily> kernel_families{{KernelTag::identity, 1.0}, {KernelTag::szego, 1.0},
                                            {KernelTag::gaussian, 1.0}};
  ParamGrid grid;
  std::vector<std::string> checker_filter;  // empty: every checker
  double check_tol = 1e-9;
  std::string output_path;  // empty: stdout
  std::string format = "json";
  int jobs = 1;
  bool timing = false;  // wall time in the report (otherwise null)
};

/// Throws ConfigInvalid when an invariant is broken.
void validate(const CampaignConfig& config);

/// Sets one field from its text form. Lists are comma separated; dims are
/// written as n1xn2. Throws ConfigInvalid for unknown keys or bad values.
void apply_setting(CampaignConfig& config, std::string_view key, std::string_view value);

/// Flat "key = value" lines; '#' starts a comment.
void apply_config_text(CampaignConfig& config, std::string_view text);
/// Throws IoError when the file cannot be read.
void apply_config_file(CampaignConfig& config, const std::string& path);

std::vector<Dims> parse_dims(std::string_view text);

Json to_json(const CampaignConfig& config);

}  // namespace berlab
