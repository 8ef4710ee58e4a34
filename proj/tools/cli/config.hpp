#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "calr/geometry.hpp"
#include "calr/source.hpp"
#include "checks.hpp"

namespace calr::lab {

/// Invalid or missing configuration. `path()` names the offending field, e.g. "sweep.deltas[2]".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
};

struct SweepConfig {
  std::vector<double> deltas{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  std::optional<std::vector<EllipticPoint>> probes;  // default: one probe at far_bound_rho + 0.1
  int n_max = 0;                                     // 0: adaptive
};

struct FieldConfig {
  double delta = 1e-3;
  int n_max = 0;
  GridAxis x1{-3.0, 3.0, 61};
  GridAxis x2{-3.0, 3.0, 61};
};

struct ValidateConfig {
  SuiteOptions suite;
  std::vector<int> criteria{1, 2, 3, 4, 5, 6, 7, 8, 9};
};

struct RunConfig {
  std::optional<ConfocalGeometry> geometry;
  std::optional<SourceSpec> source;
  int spectrum_n_max = 20;
  SweepConfig sweep;
  FieldConfig field;
  ValidateConfig validate;
  std::optional<std::string> output_dir;
  int threads = 1;
};

/// Parses and validates a JSON document. Throws ConfigError.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::filesystem::path& path);

/// Command-specific presence checks; throw ConfigError naming the missing block.
const ConfocalGeometry& require_geometry(const RunConfig& c);
const SourceSpec& require_source(const RunConfig& c);

}  // namespace calr::lab
