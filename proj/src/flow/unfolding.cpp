#include "pwk/flow/unfolding.hpp"

#include <cmath>
#include <sstream>

#include "pwk/field/sigma.hpp"
#include "pwk/lyapunov/expansion.hpp"

namespace pwk::flow {

using algebra::Poly2;
using field::Point;

PolyVectorField pseudo_hopf_homothety(const PolyVectorField& z, const ExactScalar& eps, HomothetyMode mode) {
  const ExactScalar c = ExactScalar(1) + eps;
  if (c.sign() <= 0) throw InvalidArgument("homothety needs eps > -1");
  if (!z.is_kolmogorov()) throw InvalidArgument("homothety is defined for Kolmogorov fields only");
  if (eps.is_zero()) return z;
  if (mode == HomothetyMode::Substitution) {
    const Poly2 xs = Poly2::x() * c;
    const Poly2 ys = Poly2::y() * c;
    return PolyVectorField(z.P().compose(xs, ys), z.Q().compose(xs, ys), true);
  }
  const ExactScalar ic = c.inverse();
  const Poly2 xs = Poly2::x() * ic;
  const Poly2 ys = Poly2::y() * ic;
  return PolyVectorField(z.P().compose(xs, ys) * c, z.Q().compose(xs, ys) * c, true);
}

SigmaScan scan_sigma(const PiecewiseKolmogorovSystem& sys, const ExactScalar& y, const ExactScalar& window,
                     int samples) {
  if (samples < 2) throw InvalidArgument("need at least two samples");
  SigmaScan out;
  for (int i = 0; i < samples; ++i) {
    ExactScalar yi = y - window + window * ExactScalar::rational(2L * i, samples - 1);
    switch (field::classify_sigma_point(sys, yi).tag) {
      case field::SigmaTag::Crossing: ++out.crossing; break;
      case field::SigmaTag::Sliding: ++out.sliding; break;
      case field::SigmaTag::Escaping: ++out.escaping; break;
      case field::SigmaTag::Tangential: ++out.tangential; break;
    }
  }
  return out;
}

bool verify_no_sliding_near(const PiecewiseKolmogorovSystem& sys, const ExactScalar& y, const ExactScalar& window,
                            int samples) {
  SigmaScan s = scan_sigma(sys, y, window, samples);
  return s.sliding == 0 && s.escaping == 0;
}

bool ContinuityResidual::zero() const {
  for (const auto& c : dP) {
    if (!c.is_zero()) return false;
  }
  for (const auto& c : dQ) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::string ContinuityResidual::to_string() const {
  auto poly = [](const std::vector<ExactScalar>& v) {
    std::ostringstream os;
    bool any = false;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j].is_zero()) continue;
      if (any) os << " + ";
      os << '(' << v[j].to_string() << ")*y^" << j;
      any = true;
    }
    return any ? os.str() : std::string("0");
  };
  return "P1-P2 on sigma: " + poly(dP) + "; Q1-Q2 on sigma: " + poly(dQ);
}

ContinuityResidual continuity_residual(const PiecewiseKolmogorovSystem& sys) {
  ContinuityResidual r;
  r.dP = (sys.z1().P() - sys.z2().P()).restrict_x(sys.sigma_x());
  r.dQ = (sys.z1().Q() - sys.z2().Q()).restrict_x(sys.sigma_x());
  return r;
}

std::vector<std::string> continuity_set_violations(const field::ScenarioParams& z1, const field::ScenarioParams& z2,
                                                   HOneRule rule) {
  std::vector<std::string> bad;
  const ExactScalar one(1);
  if (!(z1.e == z2.e)) bad.push_back("e1 = e2");
  if (!(z2.e == (one - z2.n) * z2.k - z2.w)) bad.push_back("e2 = (1-n2) k2 - w2");
  if (!(z1.w == (one - z1.n) * z1.k - z2.e)) bad.push_back("w1 = (1-n1) k1 - e2");
  if (rule == HOneRule::Continuity) {
    if (!(z1.h == z2.h + z2.e * (z1.p - z2.p))) bad.push_back("h1 = h2 + e2 (p1 - p2)");
  } else {
    if (!(z1.h == ((one - z2.n) * z2.k + one) * z2.w * (z2.p - z1.p) + z2.h)) {
      bad.push_back("h1 = ((1-n2) k2 + 1) w2 (p2 - p1) + h2");
    }
  }
  if (!(z1.s == z2.s)) bad.push_back("s1 = s2");
  if (!(z2.s == z2.e * z2.p - z2.h)) bad.push_back("s2 = e2 p2 - h2");
  return bad;
}

field::ScenarioParams continuous_zone2(const ContinuousParams& c) {
  const ExactScalar e = (ExactScalar(1) - c.n2) * c.k2 - c.w2;
  return {c.k2, c.n2, e, c.p2, e * c.p2 - c.h2, c.w2, c.h2};
}

field::ScenarioParams continuous_zone1(const ContinuousParams& c, HOneRule rule) {
  const field::ScenarioParams z2 = continuous_zone2(c);
  const ExactScalar one(1);
  ExactScalar h1 = rule == HOneRule::Continuity ? c.h2 + z2.e * (c.p1 - c.p2)
                                                : ((one - c.n2) * c.k2 + one) * c.w2 * (c.p2 - c.p1) + c.h2;
  return {c.k1, c.n1, z2.e, c.p1, z2.s, (one - c.n1) * c.k1 - z2.e, h1};
}

PiecewiseKolmogorovSystem build_continuous_system(const ContinuousParams& c, HOneRule rule) {
  PiecewiseKolmogorovSystem sys(field::build_competition(continuous_zone1(c, rule)),
                                field::build_facilitation(continuous_zone2(c)));
  ContinuityResidual r = continuity_residual(sys);
  if (!r.zero()) throw InvalidArgument("continuity on sigma fails: " + r.to_string());
  return sys;
}

StageFailure::StageFailure(int stage_, std::vector<std::string> tried_, const std::string& what)
    : NumericalFailure(what), stage(stage_), tried(std::move(tried_)) {}

namespace {

const Point kFocus{ExactScalar(1), ExactScalar(1)};

int sign_d(double v) { return v > 0.0 ? 1 : v < 0.0 ? -1 : 0; }

CycleScan scan_of(const PiecewiseKolmogorovSystem& sys, const CycleSearchOptions& o) {
  return find_crossing_cycles(NumericSystem(sys), 1.0, o);
}

bool adds_one(const CycleScan& s, int changes, std::size_t cycles) {
  return s.sign_changes == changes + 1 && s.cycles.size() == cycles + 1 && s.unresolved.empty();
}

std::string signed_str(int sign, const ExactScalar& eps) { return (sign < 0 ? -eps : eps).to_string(); }

}  // namespace

ExperimentResult three_cycle_experiment(const field::WeakFocusFamily& base, const ExperimentOptions& opts) {
  if (opts.stages < 0 || opts.stages > 3) throw InvalidArgument("stages must be between 0 and 3");
  if (opts.max_retries < 0) throw InvalidArgument("max_retries must be non-negative");
  ExperimentResult res;
  res.family = base;
  res.system = field::build_family(base);
  res.continuous = !res.system.is_smooth() && continuity_residual(res.system).zero();

  lyap::LyapunovExpansion V = lyap::piecewise_lyapunov(res.system, kFocus, 3);
  auto first = V.first_nonzero();
  if (!first) throw InvalidArgument("base is a center up to order three: nothing to unfold");
  if (*first == 1) throw InvalidArgument("base focus is hyperbolic (V1 != 0)");
  res.base_order = *first;
  res.scan = scan_of(res.system, opts.search);
  int changes = res.scan.sign_changes;
  std::size_t ncyc = res.scan.cycles.size();

  auto fail = [&](StageReport rep, const std::string& why) {
    rep.ok = false;
    res.stages.push_back(rep);
    StageFailure f(rep.stage, rep.tried, "stage " + std::to_string(rep.stage) + ": " + why);
    f.partial = res;
    throw f;
  };

  // Stage 1: move V2 off zero against V3 through e2.
  if (opts.stages >= 1) {
    StageReport rep;
    rep.stage = 1;
    if (res.base_order == 2) {
      rep.ok = true;
      rep.note = "second-order term already nonzero at the base; stage skipped";
      rep.sign_changes = changes;
      rep.cycles = static_cast<int>(ncyc);
      res.stages.push_back(rep);
    } else {
      const int s3 = V[3].sign();
      ExactScalar eps = opts.eps1;
      bool done = false;
      for (int attempt = 0; attempt <= opts.max_retries && !done; ++attempt, eps = eps / ExactScalar(10)) {
        rep.tried.push_back(eps.to_string());
        int chosen = 0;
        field::WeakFocusFamily fam;
        PiecewiseKolmogorovSystem sys;
        for (int sg : {1, -1}) {
          fam = res.family;
          fam.z2.e = fam.z2.e + (sg > 0 ? eps : -eps);
          sys = field::build_family(fam);
          int s2 = lyap::piecewise_lyapunov(sys, kFocus, 2)[2].sign();
          if (s2 != 0 && s2 != s3) {
            chosen = sg;
            break;
          }
        }
        if (chosen == 0) fail(rep, "no direction of e2 gives V2 V3 < 0");
        CycleScan sc = scan_of(sys, opts.search);
        rep.sign_changes = sc.sign_changes;
        rep.cycles = static_cast<int>(sc.cycles.size());
        if (adds_one(sc, changes, ncyc)) {
          rep.used = "e2 " + std::string(chosen > 0 ? "+" : "-") + " " + eps.to_string();
          res.family = fam;
          res.system = sys;
          res.scan = sc;
          done = true;
        }
      }
      if (!done) fail(rep, "no new sign change of the difference map");
      rep.ok = true;
      res.stages.push_back(rep);
      changes = res.scan.sign_changes;
      ncyc = res.scan.cycles.size();
    }
  }

  // Stage 2: trace knob against V2.
  if (opts.stages >= 2) {
    StageReport rep;
    rep.stage = 2;
    const int s2 = lyap::piecewise_lyapunov(res.system, kFocus, 2)[2].sign();
    if (s2 == 0) fail(rep, "V2 vanishes before the trace stage");
    ExactScalar eps = opts.eps2;
    bool done = false;
    for (int attempt = 0; attempt <= opts.max_retries && !done; ++attempt, eps = eps / ExactScalar(10)) {
      rep.tried.push_back(eps.to_string());
      const ExactScalar t = s2 > 0 ? -eps : eps;
      field::WeakFocusFamily fam = res.family;
      fam.z2.knobs.t = t;
      if (res.continuous) fam.z1.knobs.t = t;
      PiecewiseKolmogorovSystem sys = field::build_family(fam);
      const double v1 = lyap::first_lyapunov_piecewise(sys, kFocus);
      if (sign_d(v1) == s2) fail(rep, "trace perturbation does not oppose V2");
      CycleScan sc = scan_of(sys, opts.search);
      rep.sign_changes = sc.sign_changes;
      rep.cycles = static_cast<int>(sc.cycles.size());
      if (adds_one(sc, changes, ncyc)) {
        rep.used = (res.continuous ? "t1 = t2 = " : "t2 = ") + t.to_string();
        if (res.continuous && !continuity_residual(sys).zero()) rep.note = "trace change breaks continuity on sigma";
        res.family = fam;
        res.system = sys;
        res.scan = sc;
        done = true;
      }
    }
    if (!done) fail(rep, "no new sign change of the difference map");
    rep.ok = true;
    res.stages.push_back(rep);
    changes = res.scan.sign_changes;
    ncyc = res.scan.cycles.size();
  }

  // Stage 3: homothety on zone 1 creating a sliding segment of opposite stability.
  if (opts.stages >= 3) {
    StageReport rep;
    rep.stage = 3;
    const double v1 = lyap::first_lyapunov_piecewise(res.system, kFocus);
    const bool unstable = v1 > 0.0;
    const bool ccw = res.system.z1().jacobian(kFocus).b.sign() < 0;
    const PolyVectorField z1 = res.system.z1();
    const PolyVectorField z2 = res.system.z2();
    auto perturbed = [&](const ExactScalar& e) {
      return PiecewiseKolmogorovSystem(pseudo_hopf_homothety(z1, e), z2, res.system.sigma_x());
    };
    auto wanted_segment = [&](const ExactScalar& e) {
      SigmaScan s = scan_sigma(perturbed(e), ExactScalar(1), e.sign() < 0 ? -e * ExactScalar(4) : e * ExactScalar(4));
      return unstable ? s.sliding > 0 : s.escaping > 0;
    };

    if (opts.eps3_sign) {
      const int sg = *opts.eps3_sign >= 0 ? 1 : -1;
      const ExactScalar e = sg > 0 ? opts.eps3 : -opts.eps3;
      rep.tried.push_back(opts.eps3.to_string());
      PiecewiseKolmogorovSystem sys = perturbed(e);
      CycleScan sc = scan_of(sys, opts.search);
      rep.used = e.to_string();
      rep.sign_changes = sc.sign_changes;
      rep.cycles = static_cast<int>(sc.cycles.size());
      rep.ok = adds_one(sc, changes, ncyc);
      rep.note = "sign forced; outcome reported only";
      res.system = sys;
      res.homothety = e;
      res.scan = sc;
      res.stages.push_back(rep);
      return res;
    }

    int sg = 0;
    if (unstable && ccw) {
      sg = 1;
    } else if (wanted_segment(opts.eps3)) {
      sg = 1;
    } else if (wanted_segment(-opts.eps3)) {
      sg = -1;
    }
    if (sg == 0) fail(rep, "no homothety sign gives a segment of opposite stability");
    if (!(unstable && ccw)) rep.note = "sign chosen from the stability of the created segment";
    ExactScalar eps = opts.eps3;
    bool done = false;
    for (int attempt = 0; attempt <= opts.max_retries && !done; ++attempt, eps = eps / ExactScalar(10)) {
      rep.tried.push_back(eps.to_string());
      const ExactScalar e = sg > 0 ? eps : -eps;
      PiecewiseKolmogorovSystem sys = perturbed(e);
      CycleScan sc = scan_of(sys, opts.search);
      rep.sign_changes = sc.sign_changes;
      rep.cycles = static_cast<int>(sc.cycles.size());
      if (adds_one(sc, changes, ncyc)) {
        rep.used = signed_str(sg, eps);
        res.system = sys;
        res.homothety = e;
        res.scan = sc;
        done = true;
      }
    }
    if (!done) fail(rep, "no new sign change of the difference map");
    rep.ok = true;
    res.stages.push_back(rep);
  }
  return res;
}

CycleScan smooth_trace_unfolding(const field::ZoneSpec& zone, const ExactScalar& t, const CycleSearchOptions& opts) {
  field::ZoneSpec z = zone;
  z.knobs.t = t;
  return scan_of(PiecewiseKolmogorovSystem::smooth(field::build_zone(z)), opts);
}

}  // namespace pwk::flow
