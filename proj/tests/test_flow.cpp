#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "pwk/errors.hpp"
#include "pwk/field/scenarios.hpp"
#include "pwk/field/sigma.hpp"
#include "pwk/flow/cycles.hpp"
#include "pwk/flow/integrator.hpp"
#include "pwk/flow/return_map.hpp"
#include "pwk/flow/unfolding.hpp"
#include "pwk/lyapunov/certificates.hpp"
#include "pwk/lyapunov/closed_forms.hpp"
#include "pwk/lyapunov/expansion.hpp"
#include "support.hpp"

using namespace pwk;
using namespace pwk::flow;
using pwk::algebra::Poly2;
using field::PiecewiseKolmogorovSystem;
using pwk::test::q;

namespace {

PiecewiseKolmogorovSystem linear_center() {
  Poly2 x = Poly2::x(), y = Poly2::y();
  return PiecewiseKolmogorovSystem::smooth(field::PolyVectorField(Poly2(q(1)) - y, x - Poly2(q(1))));
}

double darboux_value(const lyap::DarbouxCertificate& c, double x, double y) {
  return c.A.eval(x, y) * std::pow(x, c.B.to_double()) * std::pow(y, c.C.to_double());
}

double max_relative_drift(const Trajectory& tr, const lyap::DarbouxCertificate& c, int zone_filter = 0) {
  double ref = 0.0, worst = 0.0;
  bool have = false;
  for (const auto& s : tr.samples) {
    if (zone_filter == 1 && s.zone != ZoneTag::Z1) continue;
    if (zone_filter == 2 && s.zone != ZoneTag::Z2) continue;
    double h = darboux_value(c, s.x, s.y);
    if (!have) {
      ref = h;
      have = true;
      continue;
    }
    worst = std::max(worst, std::abs(h - ref) / std::abs(ref));
  }
  return worst;
}

int crossings(const Trajectory& tr) {
  return static_cast<int>(std::count_if(tr.events.begin(), tr.events.end(),
                                        [](const SigmaEvent& e) { return e.kind == EventKind::Crossing; }));
}

void check_trajectory_invariants(const Trajectory& tr, double sigma, const FlowOptions& o) {
  for (const auto& s : tr.samples) {
    if (s.zone == ZoneTag::Z1) CHECK(s.x <= sigma + o.loc_tol);
    if (s.zone == ZoneTag::Z2) CHECK(s.x >= sigma - o.loc_tol);
    if (s.zone == ZoneTag::Sliding) CHECK(std::abs(s.x - sigma) <= o.loc_tol);
  }
  for (std::size_t i = 1; i < tr.samples.size(); ++i) CHECK(tr.samples[i].t >= tr.samples[i - 1].t);
  for (const auto& e : tr.events) CHECK(e.residual <= o.loc_tol);
}

std::vector<CrossingLimitCycle> by_amplitude(std::vector<CrossingLimitCycle> c) {
  std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.amplitude < b.amplitude; });
  return c;
}

void check_nested(const std::vector<CrossingLimitCycle>& cycles, double cycle_tol) {
  auto c = by_amplitude(cycles);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(c[i].residual < cycle_tol);
    CHECK(c[i].closure <= 10 * cycle_tol);
    CHECK(c[i].period > 0.0);
    if (i > 0) {
      CHECK(c[i].amplitude > c[i - 1].amplitude);
      CHECK(c[i].stability != c[i - 1].stability);
    }
  }
}

}  // namespace

TEST_SUITE("flow") {
  TEST_CASE("linear center returns after one period") {
    NumericSystem ns(linear_center());
    FlowOptions o;
    Trajectory tr = integrate(ns, {1.0, 1.5}, 2 * M_PI, o);
    REQUIRE_FALSE(tr.aborted);
    const Sample& end = tr.samples.back();
    CHECK(end.t == doctest::Approx(2 * M_PI));
    CHECK(std::abs(end.x - 1.0) <= 10 * o.int_tol);
    CHECK(std::abs(end.y - 1.5) <= 10 * o.int_tol);
    CHECK(crossings(tr) >= 1);
    check_trajectory_invariants(tr, 1.0, o);
  }

  TEST_CASE("backward integration retraces the forward orbit") {
    NumericSystem ns(linear_center());
    Trajectory fw = integrate(ns, {0.7, 1.0}, 1.3);
    const Sample& mid = fw.samples.back();
    Trajectory bw = integrate(ns, {mid.x, mid.y}, -1.3);
    CHECK(bw.samples.back().t == doctest::Approx(-1.3));
    CHECK(bw.samples.back().x == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(bw.samples.back().y == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("axes are invariant") {
    auto sc = field::make_scenario("Tu-eq19");
    NumericSystem ns(sc.system);
    Trajectory on_x = integrate(ns, {0.5, 0.0}, 5.0);
    for (const auto& s : on_x.samples) CHECK(s.y == 0.0);
    Trajectory on_y = integrate(ns, {0.0, 0.8}, 5.0);
    for (const auto& s : on_y.samples) CHECK(s.x == 0.0);
    CHECK_FALSE(on_x.left_first_quadrant);
  }

  TEST_CASE("competition center conserves its Darboux integral") {
    auto z = field::build_zone(test::competition(q(1), q(1), q(1)));
    NumericSystem ns(PiecewiseKolmogorovSystem::smooth(z));
    FlowOptions o;
    o.int_tol = 1e-12;
    Trajectory tr = integrate(ns, {1.2, 1.0}, 70.0, o);
    REQUIRE_FALSE(tr.aborted);
    CHECK(crossings(tr) >= 20);
    CHECK(max_relative_drift(tr, lyap::competition_center_certificate(q(1), q(1), q(1))) < 1e-8);
  }

  TEST_CASE("facilitation center conserves its Darboux integral") {
    ExactScalar k2 = q(3, 2), n2 = q(1, 5);
    auto z = field::build_zone(test::facilitation(k2, n2, lyap::center_e2(k2, n2)));
    NumericSystem ns(PiecewiseKolmogorovSystem::smooth(z));
    Trajectory tr = integrate(ns, {1.1, 1.0}, 80.0);
    REQUIRE_FALSE(tr.aborted);
    CHECK(crossings(tr) >= 20);
    CHECK(max_relative_drift(tr, lyap::facilitation_center_certificate(k2, n2)) < 1e-8);
  }

  TEST_CASE("sigma center conserves each zone integral") {
    auto fam = field::sigma_center_family();
    auto cert = lyap::piecewise_center_certificate(fam.z1.k, fam.z1.n, fam.z2.k, fam.z2.n);
    NumericSystem ns(field::build_family(fam));
    Trajectory tr = integrate(ns, {1.0, 1.2}, 80.0);
    REQUIRE_FALSE(tr.aborted);
    CHECK(crossings(tr) >= 20);
    CHECK(max_relative_drift(tr, cert.zone1, 1) < 1e-8);
    CHECK(max_relative_drift(tr, cert.zone2, 2) < 1e-8);
  }

  TEST_CASE("sliding motion and release at a tangency") {
    Poly2 y = Poly2::y();
    field::PolyVectorField z1(Poly2(q(1)), Poly2(q(1)));
    field::PolyVectorField z2(y - Poly2(q(2)), Poly2(q(1)));
    NumericSystem ns(PiecewiseKolmogorovSystem(z1, z2));
    FlowOptions o;
    Trajectory tr = integrate(ns, {0.5, 0.0}, 3.0, o);
    REQUIRE_FALSE(tr.aborted);
    REQUIRE(tr.events.size() >= 2);
    CHECK(tr.events[0].kind == EventKind::SlidingEntry);
    CHECK(tr.events[0].y == doctest::Approx(0.5));
    CHECK(tr.events[1].kind == EventKind::SlidingExit);
    CHECK(tr.events[1].t == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(tr.events[1].y == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(tr.samples.back().x > 1.0);
    check_trajectory_invariants(tr, 1.0, o);
  }

  TEST_CASE("escaping segment is followed backward in time") {
    Poly2 y = Poly2::y();
    field::PolyVectorField z1(Poly2(q(-1)), Poly2(q(1)));
    field::PolyVectorField z2(y - Poly2(q(2)), Poly2(q(1)));
    PiecewiseKolmogorovSystem sys(z1, z2);
    CHECK(field::classify_sigma_point(sys, q(5, 2)).tag == field::SigmaTag::Escaping);
    NumericSystem ns(sys);
    Trajectory tr = integrate(ns, {0.5, 3.0}, -3.0);
    REQUIRE_FALSE(tr.aborted);
    REQUIRE(tr.events.size() >= 2);
    CHECK(tr.events[0].kind == EventKind::SlidingEntry);
    CHECK(tr.events[0].y == doctest::Approx(2.5));
    CHECK(tr.events[1].kind == EventKind::SlidingExit);
    CHECK(tr.events[1].y == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(tr.samples.back().x > 1.0);
  }

  TEST_CASE("leaving the first quadrant is flagged") {
    auto z = field::PolyVectorField::kolmogorov(Poly2(q(1)), Poly2(q(-1)));
    NumericSystem ns(PiecewiseKolmogorovSystem::smooth(z));
    Trajectory tr = integrate(ns, {-0.2, 0.5}, 0.5);
    CHECK(tr.left_first_quadrant);
  }

  TEST_CASE("sigma center half maps agree") {
    auto sc = field::make_scenario("center-thm32");
    NumericSystem ns(sc.system);
    for (double u : {1.02, 1.05, 1.1, 1.2}) {
      auto s = half_return_maps(ns, u, 1.0);
      CHECK(std::abs(s.delta) < 1e-8);
      CHECK(s.first_zone == 1);
    }
  }

  TEST_CASE("smooth center half maps agree") {
    auto sc = field::make_scenario("competition-eq9");
    NumericSystem ns(sc.system);
    for (double u : {1.01, 1.1, 1.3}) CHECK(std::abs(half_return_maps(ns, u, 1.0).delta) < 1e-8);
  }

  TEST_CASE("unstable weak focus repels") {
    auto sc = field::make_scenario("Tu-eq19");
    auto s = half_return_maps(NumericSystem(sc.system), 1.01, 1.0);
    CHECK(s.delta < 0.0);
  }

  TEST_CASE("half maps need a crossing start above the focus") {
    auto sc = field::make_scenario("Tu-eq19");
    NumericSystem ns(sc.system);
    ReturnMapOptions o;
    o.max_time = 0.1;
    CHECK_THROWS_AS(half_return_maps(ns, 1.05, 1.0, o), ReturnMapUndefined);
  }

  TEST_CASE("property: sampled delta follows the leading exact term") {
    for (const char* name : {"Tu-eq19", "Ts-eq20", "continuous-C"}) {
      auto sc = field::make_scenario(name);
      auto V = lyap::piecewise_lyapunov(sc.system, *sc.focus, 3);
      int j = *V.first_nonzero();
      NumericSystem ns(sc.system);
      for (double r : {1e-3, 2e-3, 5e-3}) {
        double predicted = -V[j].to_double() * std::pow(r, j);
        double delta = half_return_maps(ns, 1.0 + r, 1.0).delta;
        CAPTURE(name);
        CAPTURE(r);
        CHECK(delta * predicted > 0.0);
        CHECK(std::abs(delta - predicted) < 0.1 * std::abs(predicted));
      }
    }
  }

  TEST_CASE("weak focus without unfolding has no cycle") {
    auto sc = field::make_scenario("Tu-eq19");
    auto scan = find_crossing_cycles(NumericSystem(sc.system), 1.0);
    CHECK(scan.cycles.empty());
    CHECK(scan.sign_changes == 0);
    CHECK(find_crossing_cycles(NumericSystem(field::make_scenario("center-thm32").system), 1.0).cycles.empty());
  }

  TEST_CASE("single-zone trace unfolding yields one cycle on the right side") {
    struct Case {
      ExactScalar k, n, e;
    };
    for (const Case& c : {Case{q(1), q(1, 2), q(1)}, Case{q(5, 2), q(1, 10), q(1)}, Case{q(2), q(3, 4), q(1, 2)}}) {
      auto z = test::facilitation(c.k, c.n, c.e);
      auto V = lyap::smooth_lyapunov(field::build_zone(z), test::one_one(), 3);
      int v3 = V[3].sign();
      REQUIRE(v3 != 0);
      ExactScalar t = q(1, 10000);
      auto with = smooth_trace_unfolding(z, t * ExactScalar(-v3), {});
      auto without = smooth_trace_unfolding(z, t * ExactScalar(v3), {});
      CHECK(with.cycles.size() == 1);
      CHECK(without.cycles.empty());
      check_nested(with.cycles, 1e-10);
    }
  }

  TEST_CASE("homothety") {
    Poly2 x = Poly2::x();
    auto z = field::PolyVectorField::kolmogorov(Poly2(q(1)) - x, Poly2());
    ExactScalar eps = q(1, 7), s = q(8, 7);
    CHECK(pseudo_hopf_homothety(z, q(0)) == z);
    CHECK(pseudo_hopf_homothety(z, q(0), HomothetyMode::Substitution) == z);
    auto sub = pseudo_hopf_homothety(z, eps, HomothetyMode::Substitution);
    CHECK(sub.P() == x * s * (Poly2(q(1)) - x * s));
    CHECK(sub.P().eval(s.inverse(), q(0)).is_zero());
    auto conj = pseudo_hopf_homothety(z, eps, HomothetyMode::Conjugation);
    CHECK(conj.P() == x * (Poly2(q(1)) - x * s.inverse()));
    CHECK(conj.P().eval(s, q(0)).is_zero());
    CHECK_THROWS_AS(pseudo_hopf_homothety(z, q(-1)), InvalidArgument);
    field::PolyVectorField plain(Poly2(q(1)), Poly2(q(1)));
    CHECK_THROWS_AS(pseudo_hopf_homothety(plain, q(1, 10)), InvalidArgument);
  }

  TEST_CASE("homothety moves the focus off sigma and keeps the Kolmogorov form") {
    auto sc = field::make_scenario("Tu-eq19");
    ExactScalar eps = q(1, 1000);
    auto z = pseudo_hopf_homothety(sc.system.z1(), eps);
    CHECK(z.is_kolmogorov());
    ExactScalar m = ExactScalar(1) + eps;
    auto v = z.eval({m, m});
    CHECK(v[0].is_zero());
    CHECK(v[1].is_zero());
    CHECK(z.P().compose(Poly2(), Poly2::y()).is_zero());
    CHECK(z.Q().compose(Poly2::x(), Poly2()).is_zero());
  }

  TEST_CASE("sliding segment appears across eps = 0") {
    auto sc = field::make_scenario("Tu-eq19");
    ExactScalar w = q(4, 1000000);
    auto base = scan_sigma(sc.system, q(1), w);
    CHECK(base.sliding == 0);
    CHECK(base.escaping == 0);
    CHECK(verify_no_sliding_near(sc.system, q(1), w));
    PiecewiseKolmogorovSystem up(pseudo_hopf_homothety(sc.system.z1(), q(1, 1000000)), sc.system.z2());
    PiecewiseKolmogorovSystem down(pseudo_hopf_homothety(sc.system.z1(), q(-1, 1000000)), sc.system.z2());
    CHECK(scan_sigma(up, q(1), w).sliding > 0);
    CHECK(scan_sigma(down, q(1), w).escaping > 0);
    CHECK_FALSE(verify_no_sliding_near(up, q(1), w));
  }

  TEST_CASE("weak-focus families have no sliding near the focus") {
    for (const char* name : {"Tu-eq19", "Ts-eq20", "center-thm32", "continuous-C"}) {
      auto sc = field::make_scenario(name);
      CHECK(verify_no_sliding_near(sc.system, q(1), q(1, 10)));
    }
    auto cont = field::make_scenario("continuous-C");
    CHECK(verify_no_sliding_near(cont.system, q(1), q(9, 10)));
  }

  TEST_CASE("continuous family") {
    ContinuousParams c{q(2), q(1, 3), q(1, 5), q(1, 2), q(1, 4), q(1, 3), q(2, 5), q(3, 2)};
    auto sys = build_continuous_system(c);
    CHECK(continuity_residual(sys).zero());
    auto z1 = continuous_zone1(c), z2 = continuous_zone2(c);
    CHECK(continuity_set_violations(z1, z2).empty());
    z1.e += q(1, 1000);
    auto bad = continuity_set_violations(z1, z2);
    CHECK_FALSE(bad.empty());
    CHECK(std::find(bad.begin(), bad.end(), std::string("e1 = e2")) != bad.end());
    PiecewiseKolmogorovSystem broken(field::build_competition(z1), field::build_facilitation(z2));
    auto r = continuity_residual(broken);
    CHECK_FALSE(r.zero());
    CHECK_FALSE(r.to_string().empty());
    CHECK(verify_no_sliding_near(sys, q(1), q(1)));
  }

  TEST_CASE("printed h1 rule breaks continuity") {
    ContinuousParams c{q(2), q(1, 3), q(1, 5), q(1, 2), q(1, 4), q(1, 3), q(2, 5), q(3, 2)};
    CHECK_THROWS_AS(build_continuous_system(c, HOneRule::Printed), InvalidArgument);
  }

  TEST_CASE("property: continuity holds for random parameters") {
    std::mt19937 rng(211);
    for (int i = 0; i < 25; ++i) {
      ContinuousParams c{test::random_positive(rng), test::random_positive(rng), test::random_positive(rng),
                         test::random_unit(rng),     test::random_unit(rng),     test::random_positive(rng),
                         test::random_positive(rng), test::random_positive(rng)};
      CHECK(continuity_residual(build_continuous_system(c)).zero());
    }
  }

  TEST_CASE("three nested cycles from the unstable order-three focus") {
    auto res = three_cycle_experiment(field::unstable_order_three_family());
    CHECK(res.base_order == 3);
    REQUIRE(res.scan.cycles.size() == 3);
    CHECK(res.scan.unresolved.empty());
    check_nested(res.scan.cycles, 1e-10);
    auto c = by_amplitude(res.scan.cycles);
    CHECK(c[0].stability == Stability::Unstable);
    CHECK(res.homothety.sign() > 0);
    for (const auto& st : res.stages) CHECK(st.ok);
  }

  TEST_CASE("opposite homothety sign gives two cycles") {
    auto ok = three_cycle_experiment(field::unstable_order_three_family());
    ExperimentOptions o;
    o.eps3 = ok.homothety;
    o.eps3_sign = -1;
    auto res = three_cycle_experiment(field::unstable_order_three_family(), o);
    CHECK(res.scan.cycles.size() == 2);
    check_nested(res.scan.cycles, 1e-10);
  }

  TEST_CASE("two cycles from the stable order-three focus") {
    ExperimentOptions o;
    o.stages = 2;
    auto res = three_cycle_experiment(field::stable_order_three_family(), o);
    REQUIRE(res.scan.cycles.size() == 2);
    check_nested(res.scan.cycles, 1e-10);
  }

  TEST_CASE("continuous family unfolds one cycle") {
    ExperimentOptions o;
    o.stages = 2;
    auto res = three_cycle_experiment(field::continuous_family(), o);
    CHECK(res.continuous);
    CHECK(res.base_order == 2);
    CHECK(res.scan.cycles.size() == 1);
  }

  TEST_CASE("stage failure reports the stage and magnitudes") {
    ExperimentOptions o;
    o.stages = 2;
    o.eps2 = q(1, 2);
    o.max_retries = 0;
    try {
      three_cycle_experiment(field::unstable_order_three_family(), o);
      FAIL("expected a stage failure");
    } catch (const StageFailure& f) {
      CHECK(f.stage == 2);
      CHECK(f.tried.size() == 1);
    }
  }

  TEST_CASE("cycle CSV") {
    std::vector<CrossingLimitCycle> c{{1.01, 6.3, 1e-16, Stability::Stable, 0.011, 0.0, 0.99}};
    std::ostringstream os;
    write_cycles_csv(os, c);
    std::string text = os.str();
    CHECK(text.rfind("u_star,period,residual,stability,amplitude\n", 0) == 0);
    CHECK(text.find("stable") != std::string::npos);
    CHECK(fmt_double(0.1) == "0.10000000000000001");
  }
}
