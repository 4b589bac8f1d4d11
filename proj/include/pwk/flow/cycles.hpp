#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pwk/flow/return_map.hpp"

namespace pwk::flow {

enum class Stability { Stable, Unstable };
std::string to_string(Stability s);

struct CrossingLimitCycle {
  double u_star = 0.0;
  double period = 0.0;
  double residual = 0.0;  // |delta(u_star)|
  Stability stability = Stability::Stable;
  double amplitude = 0.0;  // max distance from the focus
  double closure = 0.0;    // |u(period) - u_star| after re-integration
  double y_low = 0.0;      // lower crossing ordinate
};

struct CycleSearchOptions {
  ReturnMapOptions map;
  double cycle_tol = 1e-10;
  double r_min = 1e-5;  // grid in u - y_ref
  double r_max = 0.2;
  int grid_n = 160;
  bool log_grid = true;
  /// |delta| below this counts as zero when reading signs.
  double noise_floor = 1e-11;
};

struct CycleScan {
  std::vector<ReturnMapSample> samples;
  std::vector<double> skipped;  // u values with an undefined return map
  std::vector<CrossingLimitCycle> cycles;
  std::vector<double> unresolved;  // brackets whose refinement missed cycle_tol
  int sign_changes = 0;
};

/// Scans delta on (sigma, y_ref + r), r in [r_min, r_max], and refines each sign change.
CycleScan find_crossing_cycles(const NumericSystem& sys, double y_ref, const CycleSearchOptions& opts = {});

/// Re-integrates one full turn from (sigma, u).
CrossingLimitCycle characterize_cycle(const NumericSystem& sys, double u, double y_ref, Stability st,
                                      const ReturnMapOptions& opts);

void write_cycles_csv(std::ostream& os, const std::vector<CrossingLimitCycle>& cycles);
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

/// printf("%.17g").
std::string fmt_double(double v);

}  // namespace pwk::flow
