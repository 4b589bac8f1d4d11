#include "pwk/flow/return_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pwk::flow {

namespace {

bool crossing_at(const NumericSystem& sys, double y) {
  const double a = sys.zone(1).P(sys.sigma(), y);
  const double b = sys.zone(2).P(sys.sigma(), y);
  return (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0);
}

}  // namespace

ReturnMapSample half_return_maps(const NumericSystem& sys, double u, double y_ref, const ReturnMapOptions& opts) {
  if (!(u > y_ref)) throw InvalidArgument("return map needs u above the focus ordinate");
  const double sigma = sys.sigma();
  if (!crossing_at(sys, u)) throw ReturnMapUndefined("start ordinate is not a crossing point");
  // The zone entered forward from the upper half of sigma.
  const int first = sys.zone(1).P(sigma, u) < 0.0 ? 1 : 2;
  const int second = 3 - first;
  const State start{sigma, u};
  const State focus{sigma, y_ref};

  ZoneLeg fwd, bwd;
  try {
    fwd = run_zone(sys, first, start, 1.0, opts.max_time, opts.flow, nullptr, 0.0, &focus);
    bwd = run_zone(sys, second, start, -1.0, opts.max_time, opts.flow, nullptr, 0.0, &focus);
  } catch (const NumericalFailure& e) {
    throw ReturnMapUndefined(std::string("non-monodromic at this amplitude: ") + e.what());
  }
  if (fwd.left_box) throw ReturnMapUndefined("non-monodromic at this amplitude: orbit left the bounding box");
  if (!fwd.hit_sigma) throw ReturnMapUndefined("non-monodromic at this amplitude: no return within the time limit");
  if (bwd.left_box) throw ReturnMapUndefined("non-monodromic at this amplitude: orbit left the bounding box");
  if (!bwd.hit_sigma) throw ReturnMapUndefined("non-monodromic at this amplitude: no return within the time limit");

  const double y1 = fwd.end[1];
  const double y2 = bwd.end[1];
  if (!(y1 < y_ref) || !(y2 < y_ref)) throw ReturnMapUndefined("half-orbit returned above the focus");
  if (!crossing_at(sys, y1)) throw ReturnMapUndefined("forward landing outside the crossing region");
  if (!crossing_at(sys, y2)) throw ReturnMapUndefined("backward landing outside the crossing region");

  ReturnMapSample r;
  r.u = u;
  r.y_forward = y1;
  r.y_backward = y2;
  r.pi1 = y_ref - y1;
  r.pi2inv = y_ref - y2;
  r.delta = r.pi2inv - r.pi1;
  r.time_forward = fwd.time;
  r.time_backward = bwd.time;
  r.max_dist = std::max(fwd.max_dist, bwd.max_dist);
  r.first_zone = first;
  return r;
}

}  // namespace pwk::flow
