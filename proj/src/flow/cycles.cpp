#include "pwk/flow/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>

#include <boost/math/tools/toms748_solve.hpp>

namespace pwk::flow {

std::string to_string(Stability s) { return s == Stability::Stable ? "stable" : "unstable"; }

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::optional<double> try_delta(const NumericSystem& sys, double u, double y_ref, const ReturnMapOptions& o) {
  try {
    return half_return_maps(sys, u, y_ref, o).delta;
  } catch (const ReturnMapUndefined&) {
    return std::nullopt;
  }
}

int sign_of(double d, double floor) { return d > floor ? 1 : d < -floor ? -1 : 0; }

}  // namespace

CrossingLimitCycle characterize_cycle(const NumericSystem& sys, double u, double y_ref, Stability st,
                                      const ReturnMapOptions& opts) {
  const double sigma = sys.sigma();
  const State focus{sigma, y_ref};
  const int first = sys.zone(1).P(sigma, u) < 0.0 ? 1 : 2;
  ZoneLeg a = run_zone(sys, first, {sigma, u}, 1.0, opts.max_time, opts.flow, nullptr, 0.0, &focus);
  if (!a.hit_sigma) throw NumericalFailure("cycle re-integration did not return to sigma");
  ZoneLeg b = run_zone(sys, 3 - first, a.end, 1.0, opts.max_time, opts.flow, nullptr, 0.0, &focus);
  if (!b.hit_sigma) throw NumericalFailure("cycle re-integration did not close");
  CrossingLimitCycle c;
  c.u_star = u;
  c.y_low = a.end[1];
  c.period = a.time + b.time;
  c.closure = std::abs(b.end[1] - u);
  c.amplitude = std::max(a.max_dist, b.max_dist);
  c.stability = st;
  return c;
}

CycleScan find_crossing_cycles(const NumericSystem& sys, double y_ref, const CycleSearchOptions& opts) {
  if (opts.grid_n < 2 || !(opts.r_min > 0.0) || !(opts.r_max > opts.r_min)) {
    throw InvalidArgument("cycle search grid is empty");
  }
  CycleScan scan;
  std::vector<double> us;
  for (int i = 0; i < opts.grid_n; ++i) {
    const double f = static_cast<double>(i) / (opts.grid_n - 1);
    const double r = opts.log_grid ? opts.r_min * std::pow(opts.r_max / opts.r_min, f)
                                   : opts.r_min + f * (opts.r_max - opts.r_min);
    us.push_back(y_ref + r);
  }
  for (double u : us) {
    try {
      scan.samples.push_back(half_return_maps(sys, u, y_ref, opts.map));
    } catch (const ReturnMapUndefined&) {
      scan.skipped.push_back(u);
    }
  }

  const ReturnMapSample* prev = nullptr;
  for (const auto& s : scan.samples) {
    const int sg = sign_of(s.delta, opts.noise_floor);
    if (sg == 0) continue;
    if (prev && sign_of(prev->delta, opts.noise_floor) != sg) {
      ++scan.sign_changes;
      const Stability st = prev->delta > 0.0 ? Stability::Unstable : Stability::Stable;
      auto f = [&](double u) {
        auto d = try_delta(sys, u, y_ref, opts.map);
        if (!d) throw ReturnMapUndefined("undefined return map inside a bracket");
        return *d;
      };
      try {
        std::uintmax_t iters = 200;
        auto tol = [](double a, double b) {
          return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), 1.0);
        };
        auto br = boost::math::tools::toms748_solve(f, prev->u, s.u, prev->delta, s.delta, tol, iters);
        const double fa = std::abs(f(br.first));
        const double fb = std::abs(f(br.second));
        const double u_star = fa <= fb ? br.first : br.second;
        const double res = std::min(fa, fb);
        if (res > opts.cycle_tol) {
          scan.unresolved.push_back(u_star);
        } else {
          CrossingLimitCycle c = characterize_cycle(sys, u_star, y_ref, st, opts.map);
          c.residual = res;
          scan.cycles.push_back(c);
        }
      } catch (const NumericalFailure&) {
        scan.unresolved.push_back(0.5 * (prev->u + s.u));
      }
    }
    prev = &s;
  }

  std::sort(scan.cycles.begin(), scan.cycles.end(),
            [](const CrossingLimitCycle& a, const CrossingLimitCycle& b) { return a.u_star < b.u_star; });
  std::vector<CrossingLimitCycle> unique;
  for (const auto& c : scan.cycles) {
    if (!unique.empty() && std::abs(c.u_star - unique.back().u_star) <= 1e-12 * std::max(1.0, std::abs(c.u_star))) {
      continue;
    }
    unique.push_back(c);
  }
  scan.cycles = std::move(unique);
  return scan;
}

void write_cycles_csv(std::ostream& os, const std::vector<CrossingLimitCycle>& cycles) {
  os << "u_star,period,residual,stability,amplitude\n";
  for (const auto& c : cycles) {
    os << fmt_double(c.u_star) << ',' << fmt_double(c.period) << ',' << fmt_double(c.residual) << ','
       << to_string(c.stability) << ',' << fmt_double(c.amplitude) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,x,y,zone\n";
  for (const auto& s : tr.samples) {
    os << fmt_double(s.t) << ',' << fmt_double(s.x) << ',' << fmt_double(s.y) << ',' << to_string(s.zone) << '\n';
  }
}

}  // namespace pwk::flow
