#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwk/field/vector_field.hpp"

namespace pwk::field {

/// One zone's coefficients. Admissibility is a diagnostic only.
struct ScenarioParams {
  ExactScalar k, n, e, p, s, w, h;
};

/// Trace t and determinant a^2 imposed at (1,1).
struct MonodromyKnobs {
  ExactScalar t{0};
  ExactScalar a{1};
};

enum class ZoneModel { Competition, Facilitation };

/// A zone given by (k, n, e) and knobs; h, p, s, w follow from the monodromy conditions.
struct ZoneSpec {
  ZoneModel model = ZoneModel::Competition;
  ExactScalar k, n, e;
  MonodromyKnobs knobs;
};

/// Two zones sharing a monodromic point at (1, 1) on sigma = {x = 1}.
struct WeakFocusFamily {
  ZoneSpec z1;
  ZoneSpec z2;
};

/// Violations of k, n, e, h > 0, w >= 0, 0 < p < 1.
std::vector<std::string> admissibility_issues(const ScenarioParams& p);

/// x' = x(k(1 - n x) - e y - w), y' = y(e p x - s y - h).
PolyVectorField build_competition(const ScenarioParams& p);
/// x' = x(k x(1 - n x) - e y - w), y' = y(e p x - s y - h).
PolyVectorField build_facilitation(const ScenarioParams& p);
PolyVectorField build_model(ZoneModel m, const ScenarioParams& p);

ScenarioParams monodromy_conditions_competition(const ExactScalar& k, const ExactScalar& n,
                                                const ExactScalar& e, const MonodromyKnobs& knobs = {});
ScenarioParams monodromy_conditions_facilitation(const ExactScalar& k, const ExactScalar& n,
                                                 const ExactScalar& e, const MonodromyKnobs& knobs = {});

ScenarioParams zone_params(const ZoneSpec& z);
PolyVectorField build_zone(const ZoneSpec& z);
PiecewiseKolmogorovSystem build_family(const WeakFocusFamily& f);

/// k2 at which the two boundary equilibria of the facilitation model merge.
ExactScalar saddle_node_threshold(const ExactScalar& n2, const ExactScalar& w2);

/// x*_{r+-} = (1 +- sqrt(k^2 - 4 k n w)/k) / (2n); nullopt if not representable exactly.
struct BoundaryRoots {
  ExactScalar plus;
  ExactScalar minus;
};
std::optional<BoundaryRoots> facilitation_boundary_roots(const ScenarioParams& p);

/// Interior equilibrium of the competition model (closed form).
Point competition_coexistence(const ScenarioParams& p);

/// Facilitation center charted by its axis roots x0, x1 as published; k2 = sqrt(k2_squared).
/// The chart is reported as given and is not guaranteed to match equilibria().
struct FacilitationCenterChart {
  ExactScalar n2;
  ExactScalar k2_squared;
  Point omega_c;
  Point omega_rc_minus;
};
FacilitationCenterChart facilitation_center_chart(const ExactScalar& x0, const ExactScalar& x1);

}  // namespace pwk::field
