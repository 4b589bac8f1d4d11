#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "pwk/errors.hpp"
#include "pwk/flow/numeric_field.hpp"

namespace pwk::flow {

enum class ZoneTag { Z1, Z2, Sliding };
std::string to_string(ZoneTag z);

struct Sample {
  double t;
  double x;
  double y;
  ZoneTag zone;
};

enum class EventKind { Crossing, SlidingEntry, SlidingExit };
std::string to_string(EventKind k);

struct SigmaEvent {
  double t;
  double x;
  double y;
  EventKind kind;
  double residual;  // |x - sigma| before snapping onto the line
};

struct Box {
  double x0 = -std::numeric_limits<double>::infinity();
  double x1 = std::numeric_limits<double>::infinity();
  double y0 = -std::numeric_limits<double>::infinity();
  double y1 = std::numeric_limits<double>::infinity();

  bool contains(const State& s) const { return s[0] >= x0 && s[0] <= x1 && s[1] >= y0 && s[1] <= y1; }
};

struct FlowOptions {
  double int_tol = 1e-12;
  double loc_tol = 1e-13;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  double max_step = 0.1;
  std::size_t max_steps = 2'000'000;
  Box box;
  bool record = true;
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<SigmaEvent> events;
  bool left_first_quadrant = false;
  bool left_box = false;
  bool aborted = false;
  std::string diagnostic;
};

/// Filippov flow for duration |T|; T < 0 runs backward in time.
Trajectory integrate(const NumericSystem& sys, State x0, double T, const FlowOptions& opts = {});

/// Flow of one zone until the orbit reaches x = sigma (or the time budget runs out).
struct ZoneLeg {
  State end;
  double time = 0.0;  // elapsed, always >= 0
  bool hit_sigma = false;
  double residual = 0.0;
  bool left_box = false;
  double max_dist = 0.0;  // farthest distance from the reference point seen
};

/// Starting on or off the line; dir = +1 forward, -1 backward.
ZoneLeg run_zone(const NumericSystem& sys, int zone, State start, double dir, double t_budget,
                 const FlowOptions& opts, std::vector<Sample>* record = nullptr, double t_offset = 0.0,
                 const State* reference = nullptr);

}  // namespace pwk::flow
