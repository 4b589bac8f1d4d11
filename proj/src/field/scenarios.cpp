#include "pwk/field/scenarios.hpp"

#include "pwk/errors.hpp"

namespace pwk::field {

namespace {

ExactScalar q(long num, long den = 1) { return ExactScalar::rational(num, den); }
ExactScalar parse(const char* s) { return ExactScalar::parse(s); }

ZoneSpec competition(ExactScalar k, ExactScalar n, ExactScalar e) {
  return {ZoneModel::Competition, std::move(k), std::move(n), std::move(e), {}};
}

ZoneSpec facilitation(ExactScalar k, ExactScalar n, ExactScalar e) {
  return {ZoneModel::Facilitation, std::move(k), std::move(n), std::move(e), {}};
}

std::vector<std::array<double, 2>> ring_seeds(double cx, double cy, std::initializer_list<double> radii) {
  std::vector<std::array<double, 2>> out;
  for (double r : radii) out.push_back({cx, cy + r});
  return out;
}

Scenario from_family(std::string name, std::string description, const WeakFocusFamily& fam) {
  Scenario s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.system = build_family(fam);
  s.smooth = s.system.is_smooth();
  s.focus = Point{ExactScalar(1), ExactScalar(1)};
  s.family = fam;
  return s;
}

}  // namespace

WeakFocusFamily unstable_order_three_family() {
  return {competition(parse("(sqrt(401)-1)/5"), q(1, 4), q(2)),
          facilitation(q(5, 2), q(1, 10), parse("(619-19*sqrt(401))/300"))};
}

WeakFocusFamily stable_order_three_family() {
  return {competition(parse("(sqrt(401)-1)/5"), q(1, 4), q(2)),
          facilitation(q(5, 2), q(501, 1000), parse("36199/100400+19*sqrt(401)/502"))};
}

WeakFocusFamily sigma_center_family() {
  return {competition(q(1, 2), q(1, 2), q(3, 4)), facilitation(q(1), q(1, 4), q(5, 16))};
}

WeakFocusFamily continuous_family() {
  // k1 n1 = 2 k2 n2 - k2 and e1 = e2 make both zones agree on sigma.
  return {competition(q(1), q(1, 2), q(1)), facilitation(q(1), q(3, 4), q(1))};
}

std::vector<std::string> scenario_names() {
  return {"competition-eq9", "facilitation-eq12", "fig5c",        "Tu-eq19",
          "Ts-eq20",         "center-thm32",      "continuous-C", "fig3a"};
}

Scenario make_scenario(std::string_view name) {
  if (name == "competition-eq9") {
    ZoneSpec z = competition(q(1), q(1), q(1));
    Scenario s = from_family(std::string(name), "competition model with a center at (1,1)", {z, z});
    s.bbox = {0.0, 2.5, 0.0, 2.5};
    s.seeds = ring_seeds(1.0, 1.0, {0.1, 0.25, 0.45, 0.7});
    s.portrait_time = 12.0;
    return s;
  }
  if (name == "facilitation-eq12") {
    ZoneSpec z = facilitation(q(1), q(1, 2), q(1));
    Scenario s = from_family(std::string(name), "facilitation model with a weak focus at (1,1)", {z, z});
    s.bbox = {0.0, 2.5, 0.0, 2.5};
    s.seeds = ring_seeds(1.0, 1.0, {0.1, 0.3, 0.5});
    s.portrait_time = 40.0;
    return s;
  }
  if (name == "fig5c") {
    ScenarioParams p{q(92, 225), q(100, 207), q(266, 2025), q(1), q(0), q(2, 25), q(266, 2025)};
    Scenario s;
    s.name = std::string(name);
    s.description = "facilitation model with a limit cycle around an unstable focus";
    s.system = PiecewiseKolmogorovSystem::smooth(build_facilitation(p));
    s.smooth = true;
    s.bbox = {0.0, 2.2, 0.0, 1.6};
    s.seeds = {{1.0, 0.6}, {1.0, 0.62}, {0.5, 0.6}, {1.5, 1.2}, {0.3, 0.2}};
    s.portrait_time = 600.0;
    return s;
  }
  if (name == "fig3a") {
    ScenarioParams p{q(1), q(1), q(1, 5), q(4, 5), q(1, 20), q(1, 20), q(1, 20)};
    Scenario s;
    s.name = std::string(name);
    s.description = "competition model with a stable coexistence node";
    s.system = PiecewiseKolmogorovSystem::smooth(build_competition(p));
    s.smooth = true;
    s.bbox = {0.0, 1.2, 0.0, 1.6};
    s.seeds = {{0.1, 0.1}, {1.1, 1.5}, {0.1, 1.5}, {1.1, 0.1}, {0.5, 1.0}, {0.05, 0.5}, {0.9, 1.55}};
    s.portrait_time = 200.0;
    return s;
  }
  if (name == "Tu-eq19") {
    Scenario s = from_family(std::string(name), "piecewise unstable weak focus of order three",
                             unstable_order_three_family());
    s.bbox = {0.6, 1.4, 0.6, 1.4};
    s.seeds = ring_seeds(1.0, 1.0, {0.03, 0.08, 0.14});
    s.portrait_time = 20.0;
    return s;
  }
  if (name == "Ts-eq20") {
    Scenario s = from_family(std::string(name), "piecewise stable weak focus of order three",
                             stable_order_three_family());
    s.bbox = {0.6, 1.4, 0.6, 1.4};
    s.seeds = ring_seeds(1.0, 1.0, {0.03, 0.08, 0.14});
    s.portrait_time = 20.0;
    return s;
  }
  if (name == "center-thm32") {
    Scenario s = from_family(std::string(name), "piecewise center certified by sigma-first integrals",
                             sigma_center_family());
    s.bbox = {0.0, 2.5, 0.0, 2.5};
    s.seeds = ring_seeds(1.0, 1.0, {0.1, 0.25, 0.4});
    s.portrait_time = 20.0;
    return s;
  }
  if (name == "continuous-C") {
    Scenario s = from_family(std::string(name), "continuous piecewise system with a weak focus at (1,1)",
                             continuous_family());
    s.bbox = {0.0, 2.5, 0.0, 2.5};
    s.seeds = ring_seeds(1.0, 1.0, {0.1, 0.25, 0.4});
    s.portrait_time = 30.0;
    return s;
  }
  throw InvalidArgument("unknown scenario '" + std::string(name) + "'");
}

}  // namespace pwk::field
