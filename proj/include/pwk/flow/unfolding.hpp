#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwk/field/models.hpp"
#include "pwk/flow/cycles.hpp"

namespace pwk::flow {

using algebra::ExactScalar;
using field::PiecewiseKolmogorovSystem;
using field::PolyVectorField;

/// Conjugation: Z_eps(x, y) = (1+eps) Z(x/(1+eps), y/(1+eps)), the field in the scaled
/// coordinates; an equilibrium at (1,1) moves to (1+eps, 1+eps).
/// Substitution: Z((1+eps) x, (1+eps) y); the equilibrium moves to 1/(1+eps).
enum class HomothetyMode { Conjugation, Substitution };

/// Throws InvalidArgument for eps <= -1 or a non-Kolmogorov field.
PolyVectorField pseudo_hopf_homothety(const PolyVectorField& z, const ExactScalar& eps,
                                      HomothetyMode mode = HomothetyMode::Conjugation);

/// Exact classification of `samples` ordinates in [y - window, y + window] on sigma.
struct SigmaScan {
  int crossing = 0;
  int sliding = 0;
  int escaping = 0;
  int tangential = 0;
};
SigmaScan scan_sigma(const PiecewiseKolmogorovSystem& sys, const ExactScalar& y, const ExactScalar& window,
                     int samples = 201);
/// True iff every non-tangential sample is a crossing point.
bool verify_no_sliding_near(const PiecewiseKolmogorovSystem& sys, const ExactScalar& y, const ExactScalar& window,
                            int samples = 201);

/// Free parameters of the continuous family: competition in zone 1, facilitation in zone 2.
struct ContinuousParams {
  ExactScalar k2, n2, w2, p1, p2, h2, n1, k1;
};

/// h1 from continuity of g on sigma, or the variant printed with the family definition.
enum class HOneRule { Continuity, Printed };

/// Names of the defining equations that fail for the given zone coefficients.
std::vector<std::string> continuity_set_violations(const field::ScenarioParams& z1, const field::ScenarioParams& z2,
                                                   HOneRule rule = HOneRule::Continuity);

/// Coefficients in y of (P1 - P2)(sigma, y) and (Q1 - Q2)(sigma, y).
struct ContinuityResidual {
  std::vector<ExactScalar> dP;
  std::vector<ExactScalar> dQ;
  bool zero() const;
  std::string to_string() const;
};
ContinuityResidual continuity_residual(const PiecewiseKolmogorovSystem& sys);

/// Throws InvalidArgument naming the failing identity when continuity does not hold.
PiecewiseKolmogorovSystem build_continuous_system(const ContinuousParams& c, HOneRule rule = HOneRule::Continuity);
field::ScenarioParams continuous_zone1(const ContinuousParams& c, HOneRule rule = HOneRule::Continuity);
field::ScenarioParams continuous_zone2(const ContinuousParams& c);

struct ExperimentOptions {
  int stages = 3;
  ExactScalar eps1 = ExactScalar::rational(1, 100);
  ExactScalar eps2 = ExactScalar::rational(1, 10000);
  ExactScalar eps3 = ExactScalar::rational(1, 1000000);
  int max_retries = 4;
  /// Forces the homothety sign; the outcome is reported, never retried.
  std::optional<int> eps3_sign;
  CycleSearchOptions search;
};

struct StageReport {
  int stage = 0;
  std::vector<std::string> tried;  // magnitudes, as exact strings
  std::string used;                // signed value applied, empty when skipped
  int sign_changes = 0;
  int cycles = 0;
  bool ok = false;
  std::string note;
};

struct ExperimentResult {
  std::vector<StageReport> stages;
  field::WeakFocusFamily family;  // after stages 1 and 2
  PiecewiseKolmogorovSystem system;
  ExactScalar homothety;  // signed eps applied to zone 1, 0 if none
  int base_order = 0;     // first nonzero index among V1..V3 of the base
  bool continuous = false;
  CycleScan scan;  // final scan
};

class StageFailure : public NumericalFailure {
 public:
  StageFailure(int stage, std::vector<std::string> tried, const std::string& what);
  int stage;
  std::vector<std::string> tried;
  ExperimentResult partial;
};

/// Staged unfolding of a weak focus at (1,1): second-order term, trace, then homothety on zone 1.
ExperimentResult three_cycle_experiment(const field::WeakFocusFamily& base, const ExperimentOptions& opts = {});

/// Smooth facilitation zone with trace knob t (both zones equal), scanned for cycles.
CycleScan smooth_trace_unfolding(const field::ZoneSpec& zone, const ExactScalar& t, const CycleSearchOptions& opts);

}  // namespace pwk::flow
