#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gospa/metrics.hpp"
#include "gospa/rfs.hpp"

namespace gospa {

/// Malformed or inconsistent input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point-set documents:
//   JSON  {"dimension": 2, "points": [[0, 0], [1, 2.5]]}
//   CSV   one point per line, comma separated; blank lines and '#' comments skipped
TargetSet parse_point_set_json(std::string_view text);
TargetSet parse_point_set_csv(std::string_view text);
std::string write_point_set_json(const TargetSet& set);

/// Reads a point-set file; a ".csv" extension selects CSV, anything else JSON.
TargetSet load_point_set(const std::filesystem::path& path);

// Model documents:
//   {"components": [{"existence": 1, "mean": [0, 3], "covariance": [[1, 0], [0, 1]]}]}
MultiBernoulli parse_multi_bernoulli_json(std::string_view text);
std::string write_multi_bernoulli_json(const MultiBernoulli& model);
MultiBernoulli load_multi_bernoulli(const std::filesystem::path& path);

}  // namespace gospa
