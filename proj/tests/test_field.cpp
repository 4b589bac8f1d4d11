#include <random>

#include "doctest.h"
#include "pwk/errors.hpp"
#include "pwk/field/equilibria.hpp"
#include "pwk/field/models.hpp"
#include "pwk/field/scenarios.hpp"
#include "pwk/field/sigma.hpp"
#include "support.hpp"

using namespace pwk;
using namespace pwk::field;
using pwk::test::q;

namespace {

PolyVectorField constant_field(long p, long qv) { return PolyVectorField(Poly2(q(p)), Poly2(q(qv))); }

bool axes_invariant(const PolyVectorField& z) {
  const Poly2 zero;
  return z.P().compose(zero, Poly2::y()).is_zero() && z.Q().compose(Poly2::x(), zero).is_zero();
}

const Equilibrium* find_at(const std::vector<Equilibrium>& eqs, double x, double y) {
  for (const auto& e : eqs) {
    if (std::abs(e.x - x) < 1e-9 && std::abs(e.y - y) < 1e-9) return &e;
  }
  return nullptr;
}

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("competition model with unit parameters") {
    ScenarioParams p{q(1), q(1), q(1), q(1), q(1), q(1), q(1)};
    PolyVectorField z = build_competition(p);
    Poly2 x = Poly2::x(), y = Poly2::y();
    CHECK(z.P() == -(x * x) - x * y);
    CHECK(z.Q() == x * y - y * y - y);
    CHECK(z.is_kolmogorov());
  }

  TEST_CASE("weak-focus conditions for the competition zone") {
    ScenarioParams p = monodromy_conditions_competition(q(1), q(1), q(1));
    CHECK(p.h == q(3));
    CHECK(p.p == q(2));
    CHECK(p.s == q(-1));
    CHECK(p.w == q(-1));
    auto v = build_competition(p).eval(test::one_one());
    CHECK(v[0].is_zero());
    CHECK(v[1].is_zero());
    CHECK_FALSE(admissibility_issues(p).empty());

    MonodromyKnobs knobs{q(1, 3), q(2)};
    ScenarioParams g = monodromy_conditions_competition(q(3, 2), q(2, 5), q(7, 4), knobs);
    CHECK(g.s == -(q(3, 2) * q(2, 5)) - q(1, 3));
    Jacobian j = build_competition(g).jacobian(test::one_one());
    CHECK(j.trace() == q(1, 3));
    CHECK(j.det() == q(4));
  }

  TEST_CASE("weak-focus conditions for the facilitation zone") {
    ScenarioParams p = monodromy_conditions_facilitation(q(1), q(1, 2), q(1));
    CHECK(p.h == q(1));
    CHECK(p.s == q(0));
    CHECK(p.p == q(1));
    CHECK(p.w == q(-1, 2));
    auto v = build_facilitation(p).eval(test::one_one());
    CHECK(v[0].is_zero());
    CHECK(v[1].is_zero());

    MonodromyKnobs knobs{q(-1, 5), q(3, 2)};
    ScenarioParams g = monodromy_conditions_facilitation(q(2), q(1, 3), q(1, 2), knobs);
    CHECK(g.s == -q(2) * q(2) * q(1, 3) + q(2) + q(1, 5));
    Jacobian j = build_facilitation(g).jacobian(test::one_one());
    CHECK(j.trace() == q(-1, 5));
    CHECK(j.det() == q(9, 4));
  }

  TEST_CASE("zero consumption rate is rejected") {
    CHECK_THROWS_AS(monodromy_conditions_competition(q(1), q(1), q(0)), InvalidArgument);
    CHECK_THROWS_AS(monodromy_conditions_facilitation(q(1), q(1), q(0)), InvalidArgument);
  }

  TEST_CASE("Kolmogorov flag demands divisibility") {
    CHECK_THROWS(PolyVectorField(Poly2(q(1)), Poly2::y(), true));
    CHECK_NOTHROW(PolyVectorField::kolmogorov(Poly2(q(1)), Poly2(q(2))));
  }

  TEST_CASE("competition equilibria") {
    ScenarioParams p{q(2), q(1, 2), q(1), q(1, 2), q(1), q(1, 2), q(1, 3)};
    auto eqs = equilibria(build_competition(p));
    const Equilibrium* origin = find_at(eqs, 0, 0);
    REQUIRE(origin);
    double l1 = origin->lambda1.real(), l2 = origin->lambda2.real();
    if (l1 < l2) std::swap(l1, l2);
    CHECK(l1 == doctest::Approx((p.k - p.w).to_double()));
    CHECK(l2 == doctest::Approx(-p.h.to_double()));
    Point c = competition_coexistence(p);
    const Equilibrium* inner = find_at(eqs, c.x.to_double(), c.y.to_double());
    REQUIRE(inner);
    REQUIRE(inner->exact);
    auto v = build_competition(p).eval(*inner->exact);
    CHECK(v[0].is_zero());
    CHECK(v[1].is_zero());
  }

  TEST_CASE("facilitation origin is stable with eigenvalues -w and -h") {
    ScenarioParams p{q(92, 225), q(100, 207), q(266, 2025), q(1), q(0), q(2, 25), q(266, 2025)};
    auto eqs = equilibria(build_facilitation(p));
    const Equilibrium* origin = find_at(eqs, 0, 0);
    REQUIRE(origin);
    double l1 = origin->lambda1.real(), l2 = origin->lambda2.real();
    double a = -p.h.to_double(), b = -p.w.to_double();
    if (l1 < l2) std::swap(l1, l2);
    if (a < b) std::swap(a, b);
    CHECK(l1 == doctest::Approx(a));
    CHECK(l2 == doctest::Approx(b));
    CHECK(origin->kind == EquilibriumKind::StableNode);
  }

  TEST_CASE("oscillating facilitation preset") {
    Scenario sc = make_scenario("fig5c");
    auto eqs = equilibria(sc.system.z1());
    int saddles_on_axis = 0, unstable_foci = 0;
    for (const auto& e : eqs) {
      if (e.y == 0.0 && e.x > 0.0 && e.kind == EquilibriumKind::Saddle) ++saddles_on_axis;
      if (e.x > 0.0 && e.y > 0.0 && e.kind == EquilibriumKind::UnstableFocus) ++unstable_foci;
    }
    CHECK(saddles_on_axis == 2);
    CHECK(unstable_foci == 1);
  }

  TEST_CASE("coexistence preset has a stable node") {
    Scenario sc = make_scenario("fig3a");
    ScenarioParams p{q(1), q(1), q(1, 5), q(4, 5), q(1, 20), q(1, 20), q(1, 20)};
    Point c = competition_coexistence(p);
    auto eqs = equilibria(sc.system.z1());
    const Equilibrium* node = find_at(eqs, c.x.to_double(), c.y.to_double());
    REQUIRE(node);
    CHECK(node->kind == EquilibriumKind::StableNode);
    CHECK(node->x > sc.bbox[0]);
    CHECK(node->x < sc.bbox[1]);
    CHECK(node->y > sc.bbox[2]);
    CHECK(node->y < sc.bbox[3]);
  }

  TEST_CASE("published center chart") {
    FacilitationCenterChart c = facilitation_center_chart(q(1, 3), q(7, 4));
    CHECK(c.n2 == q(12, 25));
    CHECK(c.omega_c.x.is_zero());
    CHECK(c.omega_c.y == q(-14, 11));
    // The chart asks for k2 = sqrt(k2_squared), which is not real at these roots.
    CHECK(c.k2_squared == q(-6875, 139));
  }

  TEST_CASE("degenerate equilibria are flagged") {
    Jacobian j{q(1), q(2), q(2), q(4)};
    CHECK(classify(j) == EquilibriumKind::Degenerate);
    CHECK(classify(Jacobian{q(0), q(-1), q(1), q(0)}) == EquilibriumKind::CenterCandidate);
    CHECK(classify(Jacobian{q(1), q(0), q(0), q(-1)}) == EquilibriumKind::Saddle);
  }

  TEST_CASE("saddle-node threshold") {
    CHECK(saddle_node_threshold(q(1), q(1)) == q(4));
    CHECK(saddle_node_threshold(q(0), q(3, 7)).is_zero());
    ScenarioParams p{saddle_node_threshold(q(1, 2), q(1, 3)), q(1, 2), q(1), q(1, 2), q(1), q(1, 3), q(1)};
    auto roots = facilitation_boundary_roots(p);
    REQUIRE(roots);
    CHECK(roots->plus == roots->minus);
    CHECK(roots->plus == q(1));
  }

  TEST_CASE("sigma classification") {
    auto cls = [](long p1, long q1, long p2, long q2) {
      PiecewiseKolmogorovSystem s(constant_field(p1, q1), constant_field(p2, q2));
      return classify_sigma_point(s, q(3, 2));
    };
    CHECK(cls(1, 0, 1, 0).tag == SigmaTag::Crossing);
    CHECK(cls(1, 0, -1, 0).tag == SigmaTag::Sliding);
    CHECK(cls(-1, 0, 1, 0).tag == SigmaTag::Escaping);
    SigmaPointClass t = cls(0, 1, 1, 0);
    CHECK(t.tag == SigmaTag::Tangential);
    CHECK(t.fold1 == FoldKind::Degenerate);
    CHECK(t.fold2 == FoldKind::None);
  }

  TEST_CASE("fold visibility") {
    Poly2 x = Poly2::x(), y = Poly2::y();
    // Z1 = (y - 1, 1): tangent at y = 1 and curving toward x > 1 there.
    PolyVectorField bend_right(y - Poly2(q(1)), Poly2(q(1)));
    PolyVectorField bend_left(Poly2(q(1)) - y, Poly2(q(1)));
    PolyVectorField pass(Poly2(q(1)), Poly2(q(0)));
    CHECK(classify_sigma_point(PiecewiseKolmogorovSystem(bend_right, pass), q(1)).fold1 == FoldKind::Invisible);
    CHECK(classify_sigma_point(PiecewiseKolmogorovSystem(bend_left, pass), q(1)).fold1 == FoldKind::Visible);
    CHECK(classify_sigma_point(PiecewiseKolmogorovSystem(pass, bend_right), q(1)).fold2 == FoldKind::Visible);
    CHECK(classify_sigma_point(PiecewiseKolmogorovSystem(pass, bend_left), q(1)).fold2 == FoldKind::Invisible);
    (void)x;
  }

  TEST_CASE("sliding vector field") {
    auto v1 = sliding_combination({q(1), q(1)}, {q(-1), q(1)});
    CHECK(v1.lambda == q(1, 2));
    CHECK(v1.v[0].is_zero());
    CHECK(v1.v[1] == q(1));
    auto v2 = sliding_combination({q(2), q(0)}, {q(-1), q(3)});
    CHECK(v2.lambda == q(1, 3));
    CHECK(v2.v[1] == q(2));
    CHECK_THROWS_AS(sliding_combination({q(1), q(0)}, {q(1), q(5)}), InvalidArgument);
    PiecewiseKolmogorovSystem s(constant_field(2, 0), constant_field(-1, 3));
    CHECK(sliding_vector_field(s, q(5)).lambda == q(1, 3));
  }

  TEST_CASE("scenario presets") {
    for (const auto& name : scenario_names()) {
      Scenario sc = make_scenario(name);
      CHECK(sc.name == name);
      CHECK(axes_invariant(sc.system.z1()));
      CHECK(axes_invariant(sc.system.z2()));
      CHECK_FALSE(sc.seeds.empty());
      if (sc.focus) {
        for (int i : {1, 2}) {
          auto v = sc.system.zone(i).eval(*sc.focus);
          CHECK(v[0].is_zero());
          CHECK(v[1].is_zero());
        }
      }
    }
    CHECK_THROWS_AS(make_scenario("nope"), InvalidArgument);
  }

  TEST_CASE("unstable order-three preset values") {
    Scenario sc = make_scenario("Tu-eq19");
    CHECK(sc.system.radicand() == 401);
    ScenarioParams z2 = zone_params(sc.family->z2);
    CHECK(z2.w == ExactScalar::parse("14/75+19*sqrt(401)/300"));
    ScenarioParams z1 = zone_params(sc.family->z1);
    CHECK(z1.k == ExactScalar::parse("(sqrt(401)-1)/5"));
  }

  TEST_CASE("property: weak-focus conditions give trace t and determinant a^2") {
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
      ExactScalar k = test::random_positive(rng), n = test::random_positive(rng), e = test::random_positive(rng);
      std::uniform_int_distribution<long> tn(-4, 4);
      MonodromyKnobs knobs{q(tn(rng), 5), test::random_positive(rng)};
      for (ZoneModel m : {ZoneModel::Competition, ZoneModel::Facilitation}) {
        PolyVectorField z = build_zone({m, k, n, e, knobs});
        auto v = z.eval(test::one_one());
        CHECK(v[0].is_zero());
        CHECK(v[1].is_zero());
        Jacobian j = z.jacobian(test::one_one());
        CHECK(j.trace() == knobs.t);
        CHECK(j.det() == knobs.a * knobs.a);
        CHECK(axes_invariant(z));
      }
    }
  }

  TEST_CASE("property: every exact equilibrium is a zero of the field") {
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
      ScenarioParams p{test::random_positive(rng), test::random_positive(rng), test::random_positive(rng),
                       test::random_unit(rng),     test::random_positive(rng), test::random_positive(rng, 3, 9),
                       test::random_positive(rng)};
      for (ZoneModel m : {ZoneModel::Competition, ZoneModel::Facilitation}) {
        PolyVectorField z = build_model(m, p);
        for (const auto& e : equilibria(z)) {
          if (e.exact) {
            auto v = z.eval(*e.exact);
            CHECK(v[0].is_zero());
            CHECK(v[1].is_zero());
          } else {
            CHECK(std::abs(z.P().eval(e.x, e.y)) < 1e-9);
            CHECK(std::abs(z.Q().eval(e.x, e.y)) < 1e-9);
          }
        }
      }
    }
  }

  TEST_CASE("property: sliding velocity is tangent to sigma with lambda in (0,1)") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<long> v(-9, 9), pos(1, 9);
    for (int i = 0; i < 50; ++i) {
      std::array<ExactScalar, 2> z1{q(pos(rng), pos(rng)), q(v(rng), pos(rng))};
      std::array<ExactScalar, 2> z2{-q(pos(rng), pos(rng)), q(v(rng), pos(rng))};
      auto s = sliding_combination(z1, z2);
      CHECK(s.v[0].is_zero());
      CHECK((s.lambda * z1[0] + (ExactScalar(1) - s.lambda) * z2[0]).is_zero());
      CHECK(s.lambda > q(0));
      CHECK(s.lambda < q(1));
    }
  }

  TEST_CASE("property: swapping the zones exchanges sliding and escaping") {
    std::mt19937 rng(15);
    std::uniform_int_distribution<long> v(-5, 5);
    for (int i = 0; i < 40; ++i) {
      PolyVectorField a = constant_field(v(rng), v(rng)), b = constant_field(v(rng), v(rng));
      SigmaTag t = classify_sigma_point(PiecewiseKolmogorovSystem(a, b), q(1)).tag;
      SigmaTag s = classify_sigma_point(PiecewiseKolmogorovSystem(b, a), q(1)).tag;
      if (t == SigmaTag::Sliding) CHECK(s == SigmaTag::Escaping);
      if (t == SigmaTag::Escaping) CHECK(s == SigmaTag::Sliding);
      if (t == SigmaTag::Crossing) CHECK(s == SigmaTag::Crossing);
      if (t == SigmaTag::Tangential) CHECK(s == SigmaTag::Tangential);
    }
  }
}
