#include "pwk/flow/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

namespace pwk::flow {

namespace odeint = boost::numeric::odeint;

std::string to_string(ZoneTag z) {
  switch (z) {
    case ZoneTag::Z1: return "Z1";
    case ZoneTag::Z2: return "Z2";
    case ZoneTag::Sliding: return "sliding";
  }
  return "?";
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::Crossing: return "crossing";
    case EventKind::SlidingEntry: return "sliding-entry";
    case EventKind::SlidingExit: return "sliding-exit";
  }
  return "?";
}

namespace {

using Rhs = std::function<void(const State&, State&)>;
using Guard = std::function<double(const State&)>;

struct Leg {
  State end;
  double time = 0.0;
  bool event = false;
  double guard_end = 0.0;
  bool left_box = false;
  double max_dist = 0.0;
};

double dist(const State& a, const State& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

// Integrates s' = rhs(s) while guard(s) > 0; stops at the first guard zero, located by
// re-stepping from the start of the offending step.
Leg advance(const Rhs& rhs, const Guard& guard, State s, double budget, const FlowOptions& opts,
            std::vector<Sample>* record, double t_offset, double dir, ZoneTag tag, const State* ref) {
  using Stepper = odeint::runge_kutta_fehlberg78<State>;
  auto ctrl = odeint::make_controlled(opts.int_tol, opts.int_tol, Stepper());
  Stepper plain;
  auto sys = [&](const State& x, State& dx, double) { rhs(x, dx); };

  Leg leg;
  double t = 0.0;
  double dt = std::min(opts.initial_step, opts.max_step);
  std::size_t steps = 0;
  if (ref) leg.max_dist = dist(s, *ref);
  while (t < budget) {
    if (++steps > opts.max_steps) throw NumericalFailure("step budget exhausted");
    const State s_prev = s;
    const double t_prev = t;
    double h = std::min({dt, budget - t, opts.max_step});
    auto res = ctrl.try_step(sys, s, t, h);
    if (res == odeint::fail) {
      dt = h;
      if (dt < opts.min_step) {
        throw NumericalFailure("step-size underflow at (" + std::to_string(s[0]) + ", " + std::to_string(s[1]) +
                               "): degenerate tangency or stiff region");
      }
      continue;
    }
    dt = h;
    const double g = guard(s);
    if (g <= 0.0) {
      const double H = t - t_prev;
      auto phi = [&](double hh) {
        State z = s_prev;
        if (hh > 0.0) plain.do_step(sys, z, t_prev, hh);
        return guard(z);
      };
      double lo = 0.0;
      double flo = phi(0.0);
      if (flo <= 0.0) {
        // Started on the guard zero; find a positive interior point.
        lo = H;
        for (int i = 0; i < 80 && flo <= 0.0; ++i) {
          lo *= 0.5;
          flo = phi(lo);
        }
        if (flo <= 0.0) {
          leg.end = s_prev;
          leg.time = t_prev;
          leg.event = true;
          leg.guard_end = guard(s_prev);
          return leg;
        }
      }
      double hi = H;
      double fhi = g;
      double root = hi;
      if (fhi != 0.0) {
        State d;
        rhs(s_prev, d);
        const double speed = std::max(std::hypot(d[0], d[1]), 1e-300);
        const double tol_h = std::max(opts.loc_tol / speed, 4.0 * std::numeric_limits<double>::epsilon() * H);
        std::uintmax_t iters = 200;
        auto br = boost::math::tools::toms748_solve(
            phi, lo, hi, flo, fhi, [tol_h](double a, double b) { return std::abs(b - a) <= tol_h; }, iters);
        const double fa = std::abs(phi(br.first));
        const double fb = std::abs(phi(br.second));
        root = fa < fb ? br.first : br.second;
      }
      State z = s_prev;
      if (root > 0.0) plain.do_step(sys, z, t_prev, root);
      leg.end = z;
      leg.time = t_prev + root;
      leg.event = true;
      leg.guard_end = guard(z);
      if (ref) leg.max_dist = std::max(leg.max_dist, dist(z, *ref));
      return leg;
    }
    if (ref) leg.max_dist = std::max(leg.max_dist, dist(s, *ref));
    if (record) record->push_back({t_offset + dir * t, s[0], s[1], tag});
    if (!opts.box.contains(s)) {
      leg.end = s;
      leg.time = t;
      leg.left_box = true;
      return leg;
    }
  }
  leg.end = s;
  leg.time = t;
  return leg;
}

}  // namespace

ZoneLeg run_zone(const NumericSystem& sys, int zone, State start, double dir, double t_budget,
                 const FlowOptions& opts, std::vector<Sample>* record, double t_offset, const State* reference) {
  const NumericZone& Z = sys.zone(zone);
  const double sigma = sys.sigma();
  const double side = zone == 1 ? -1.0 : 1.0;
  Rhs rhs = [&](const State& s, State& d) {
    d = Z(s);
    d[0] *= dir;
    d[1] *= dir;
  };
  Guard guard = [&](const State& s) { return side * (s[0] - sigma); };
  if (guard(start) < -opts.loc_tol) throw InvalidArgument("start point lies outside the requested zone");
  Leg leg = advance(rhs, guard, start, t_budget, opts, record, t_offset, dir,
                    zone == 1 ? ZoneTag::Z1 : ZoneTag::Z2, reference);
  ZoneLeg out;
  out.end = leg.end;
  out.time = leg.time;
  out.left_box = leg.left_box;
  out.max_dist = leg.max_dist;
  if (leg.event) {
    out.hit_sigma = true;
    out.residual = std::abs(leg.end[0] - sigma);
    out.end[0] = sigma;
  }
  return out;
}

namespace {

enum class Mode { Zone1, Zone2, Slide, Escape, Stop };

struct Next {
  Mode mode;
  std::string why;
};

// Mode on Sigma at ordinate y, for an orbit arriving from `from` (0 = starting there).
Next decide_on_sigma(const NumericSystem& sys, double y, double dir, int from) {
  const double s = sys.sigma();
  const double a = dir * sys.zone(1).P(s, y);
  const double b = dir * sys.zone(2).P(s, y);
  const double lie1 = sys.zone(1).second_lie(s, y);
  const double lie2 = sys.zone(2).second_lie(s, y);
  auto z1_leaves = [&] { return a < 0.0 || (a == 0.0 && lie1 < 0.0); };
  auto z2_leaves = [&] { return b > 0.0 || (b == 0.0 && lie2 > 0.0); };
  const bool l1 = z1_leaves();
  const bool l2 = z2_leaves();
  if (a > 0.0 && b < 0.0) return {Mode::Slide, ""};
  if (a < 0.0 && b > 0.0) {
    if (from == 0) return {Mode::Escape, ""};
    return {Mode::Stop, "reached an escaping point"};
  }
  if (from == 1) {
    if (l2) return {Mode::Zone2, ""};
    if (l1) return {Mode::Zone1, ""};
  } else if (from == 2) {
    if (l1) return {Mode::Zone1, ""};
    if (l2) return {Mode::Zone2, ""};
  } else {
    if (l1 && !l2) return {Mode::Zone1, ""};
    if (l2 && !l1) return {Mode::Zone2, ""};
  }
  return {Mode::Stop, "degenerate tangency on the separation line"};
}

}  // namespace

Trajectory integrate(const NumericSystem& sys, State x0, double T, const FlowOptions& opts) {
  Trajectory tr;
  const double dir = T < 0.0 ? -1.0 : 1.0;
  const double total = std::abs(T);
  const double sigma = sys.sigma();
  std::vector<Sample>* rec = opts.record ? &tr.samples : nullptr;

  Mode mode;
  if (x0[0] < sigma - opts.loc_tol) {
    mode = Mode::Zone1;
  } else if (x0[0] > sigma + opts.loc_tol) {
    mode = Mode::Zone2;
  } else {
    x0[0] = sigma;
    Next n = decide_on_sigma(sys, x0[1], dir, 0);
    mode = n.mode;
    if (mode == Mode::Stop) {
      tr.aborted = true;
      tr.diagnostic = n.why;
    }
    if (mode == Mode::Escape) tr.diagnostic = "start on an escaping segment: following the Filippov field";
  }
  auto tag_of = [](Mode m) {
    return m == Mode::Zone1 ? ZoneTag::Z1 : m == Mode::Zone2 ? ZoneTag::Z2 : ZoneTag::Sliding;
  };
  if (mode != Mode::Stop) tr.samples.push_back({0.0, x0[0], x0[1], tag_of(mode)});

  State s = x0;
  double elapsed = 0.0;
  int idle = 0;
  try {
    while (mode != Mode::Stop && elapsed < total) {
      if (mode == Mode::Zone1 || mode == Mode::Zone2) {
        const int z = mode == Mode::Zone1 ? 1 : 2;
        ZoneLeg leg = run_zone(sys, z, s, dir, total - elapsed, opts, rec, dir * elapsed);
        elapsed += leg.time;
        s = leg.end;
        if (leg.left_box) {
          tr.left_box = true;
          break;
        }
        if (!leg.hit_sigma) break;
        idle = leg.time == 0.0 ? idle + 1 : 0;
        if (idle > 2) {
          tr.aborted = true;
          tr.diagnostic = "orbit stalls on the separation line";
          break;
        }
        Next n = decide_on_sigma(sys, s[1], dir, z);
        EventKind kind = n.mode == Mode::Slide ? EventKind::SlidingEntry : EventKind::Crossing;
        if (n.mode != Mode::Stop && !(n.mode == mode)) tr.events.push_back({dir * elapsed, s[0], s[1], kind, leg.residual});
        if (rec) rec->push_back({dir * elapsed, s[0], s[1], tag_of(n.mode == Mode::Stop ? mode : n.mode)});
        if (n.mode == Mode::Stop) {
          tr.aborted = true;
          tr.diagnostic = n.why;
        }
        mode = n.mode;
      } else {
        // Filippov sliding (or escaping) motion along x = sigma.
        const double sgn = mode == Mode::Slide ? 1.0 : -1.0;
        const NumericZone& Z1 = sys.zone(1);
        const NumericZone& Z2 = sys.zone(2);
        Rhs rhs = [&](const State& st, State& d) {
          const double a = Z1.P(sigma, st[1]);
          const double b = Z2.P(sigma, st[1]);
          const double lam = b / (b - a);
          d[0] = 0.0;
          d[1] = dir * (lam * Z1.Q(sigma, st[1]) + (1.0 - lam) * Z2.Q(sigma, st[1]));
        };
        Guard guard = [&](const State& st) {
          return sgn * std::min(dir * Z1.P(sigma, st[1]), -dir * Z2.P(sigma, st[1]));
        };
        s[0] = sigma;
        Leg leg = advance(rhs, guard, s, total - elapsed, opts, rec, dir * elapsed, dir, ZoneTag::Sliding, nullptr);
        elapsed += leg.time;
        s = leg.end;
        s[0] = sigma;
        if (leg.left_box) {
          tr.left_box = true;
          break;
        }
        if (!leg.event) break;
        // Released at a tangency: enter the zone whose field points away from sigma.
        const double a = dir * Z1.P(sigma, s[1]);
        const double b = dir * Z2.P(sigma, s[1]);
        Mode next = Mode::Stop;
        if (mode == Mode::Slide) {
          if (std::abs(a) < std::abs(b) && b < 0.0) next = Mode::Zone1;
          else if (std::abs(b) < std::abs(a) && a > 0.0) next = Mode::Zone2;
        } else {
          if (std::abs(a) < std::abs(b) && b > 0.0) next = Mode::Zone2;
          else if (std::abs(b) < std::abs(a) && a < 0.0) next = Mode::Zone1;
        }
        if (next == Mode::Stop) {
          tr.aborted = true;
          tr.diagnostic = "sliding endpoint with both fields tangent";
          break;
        }
        tr.events.push_back({dir * elapsed, s[0], s[1], EventKind::SlidingExit, 0.0});
        mode = next;
        idle = 0;
      }
    }
  } catch (const NumericalFailure& e) {
    tr.aborted = true;
    tr.diagnostic = e.what();
  }
  if (sys.kolmogorov()) {
    for (const auto& p : tr.samples) {
      if (p.x < -opts.loc_tol || p.y < -opts.loc_tol) {
        tr.left_first_quadrant = true;
        break;
      }
    }
  }
  return tr;
}

}  // namespace pwk::flow
