#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pwk/errors.hpp"
#include "pwk/field/scenarios.hpp"

namespace pwk::cli {

/// Bad flags, unreadable config, unknown scenario. Maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string scenario;
  /// Inline system as parsed from the config file; takes precedence over `scenario`.
  std::optional<field::Scenario> inline_system;
  /// Declared field extension; 0 means rational.
  std::optional<long> radicand;
  int order = 7;
  double int_tol = 1e-12;
  double loc_tol = 1e-13;
  double cycle_tol = 1e-10;
  int unfold = 0;
  std::string eps1 = "1/100";
  std::string eps2 = "1/10000";
  std::string eps3 = "1/1000000";
  std::optional<int> eps3_sign;
  int max_retries = 4;
  int grid_n = 160;
  double r_min = 1e-5;
  double r_max = 0.2;
  std::string out_dir = ".";
  std::optional<std::array<double, 4>> bbox;
  std::optional<std::array<double, 2>> start;
  std::optional<double> time;
  std::vector<std::array<double, 2>> seeds;
  bool corrupt = false;
};

/// Reads a JSON config. Throws ConfigError.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

/// Positivity of tolerances, K range, grid sanity. Throws ConfigError.
void validate(const RunConfig& cfg);

/// Preset or inline system, with the declared radicand checked. Throws ConfigError.
field::Scenario resolve_scenario(const RunConfig& cfg);

/// "x0,x1,y0,y1".
std::array<double, 4> parse_bbox(const std::string& text);

}  // namespace pwk::cli
