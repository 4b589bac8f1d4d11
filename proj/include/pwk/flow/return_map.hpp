#pragma once

#include "pwk/flow/integrator.hpp"

namespace pwk::flow {

/// Undefined half-map: escape, timeout, or landing outside the crossing region.
class ReturnMapUndefined : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

inline FlowOptions return_map_flow() {
  FlowOptions f;
  f.box = {-1e3, 1e3, -1e3, 1e3};
  f.record = false;
  return f;
}

struct ReturnMapOptions {
  FlowOptions flow = return_map_flow();
  double max_time = 200.0;  // per half-orbit
};

struct ReturnMapSample {
  double u = 0.0;       // inbound ordinate on sigma
  double pi1 = 0.0;     // distance below the focus after the forward half-orbit
  double pi2inv = 0.0;  // distance below the focus from the backward half-orbit
  double delta = 0.0;   // pi2inv - pi1
  double y_forward = 0.0;
  double y_backward = 0.0;
  double time_forward = 0.0;
  double time_backward = 0.0;
  double max_dist = 0.0;  // farthest point from the focus over both halves
  int first_zone = 1;
};

/// Half-return maps at (sigma, u) with u above the focus ordinate y_ref.
ReturnMapSample half_return_maps(const NumericSystem& sys, double u, double y_ref,
                                 const ReturnMapOptions& opts = {});

}  // namespace pwk::flow
