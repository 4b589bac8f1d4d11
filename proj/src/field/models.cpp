#include "pwk/field/models.hpp"

#include "pwk/errors.hpp"

namespace pwk::field {

namespace {

Poly2 c(const ExactScalar& v) { return Poly2(v); }

}  // namespace

std::vector<std::string> admissibility_issues(const ScenarioParams& p) {
  std::vector<std::string> out;
  auto positive = [&](const ExactScalar& v, const char* name) {
    if (v.sign() <= 0) out.push_back(std::string(name) + " = " + v.to_string() + " is not positive");
  };
  positive(p.k, "k");
  positive(p.n, "n");
  positive(p.e, "e");
  positive(p.h, "h");
  if (p.w.sign() < 0) out.push_back("w = " + p.w.to_string() + " is negative");
  if (p.p.sign() <= 0 || p.p >= ExactScalar(1)) out.push_back("p = " + p.p.to_string() + " is outside (0, 1)");
  return out;
}

PolyVectorField build_competition(const ScenarioParams& p) {
  const Poly2 x = Poly2::x();
  const Poly2 y = Poly2::y();
  Poly2 f = c(p.k) - x * (p.k * p.n) - y * p.e - c(p.w);
  Poly2 g = x * (p.e * p.p) - y * p.s - c(p.h);
  return PolyVectorField::kolmogorov(f, g);
}

PolyVectorField build_facilitation(const ScenarioParams& p) {
  const Poly2 x = Poly2::x();
  const Poly2 y = Poly2::y();
  Poly2 f = x * p.k - x * x * (p.k * p.n) - y * p.e - c(p.w);
  Poly2 g = x * (p.e * p.p) - y * p.s - c(p.h);
  return PolyVectorField::kolmogorov(f, g);
}

PolyVectorField build_model(ZoneModel m, const ScenarioParams& p) {
  return m == ZoneModel::Competition ? build_competition(p) : build_facilitation(p);
}

ScenarioParams monodromy_conditions_competition(const ExactScalar& k, const ExactScalar& n,
                                                const ExactScalar& e, const MonodromyKnobs& knobs) {
  if (e.is_zero()) throw InvalidArgument("monodromy conditions need e1 != 0");
  const ExactScalar kn = k * n;
  ScenarioParams p{k, n, e, {}, {}, {}, {}};
  p.s = -kn - knobs.t;
  p.w = -kn - e + k;
  p.h = (kn * kn + e * kn + kn * knobs.t + knobs.a * knobs.a + e * knobs.t) / e;
  p.p = (kn * kn + kn * knobs.t + knobs.a * knobs.a) / (e * e);
  return p;
}

ScenarioParams monodromy_conditions_facilitation(const ExactScalar& k, const ExactScalar& n,
                                                 const ExactScalar& e, const MonodromyKnobs& knobs) {
  if (e.is_zero()) throw InvalidArgument("monodromy conditions need e2 != 0");
  const ExactScalar& t = knobs.t;
  const ExactScalar a2 = knobs.a * knobs.a;
  const ExactScalar kn = k * n;
  ScenarioParams p{k, n, e, {}, {}, {}, {}};
  p.s = ExactScalar(-2) * kn + k - t;
  p.w = -kn - e + k;
  p.h = (ExactScalar(4) * kn * kn + ExactScalar(2) * e * kn - ExactScalar(4) * k * kn +
         ExactScalar(2) * kn * t + a2 - e * k + e * t + k * k - k * t) /
        e;
  p.p = (ExactScalar(4) * kn * kn - ExactScalar(4) * k * kn + ExactScalar(2) * kn * t + a2 + k * k - k * t) /
        (e * e);
  return p;
}

ScenarioParams zone_params(const ZoneSpec& z) {
  return z.model == ZoneModel::Competition ? monodromy_conditions_competition(z.k, z.n, z.e, z.knobs)
                                           : monodromy_conditions_facilitation(z.k, z.n, z.e, z.knobs);
}

PolyVectorField build_zone(const ZoneSpec& z) { return build_model(z.model, zone_params(z)); }

PiecewiseKolmogorovSystem build_family(const WeakFocusFamily& f) {
  return PiecewiseKolmogorovSystem(build_zone(f.z1), build_zone(f.z2));
}

ExactScalar saddle_node_threshold(const ExactScalar& n2, const ExactScalar& w2) {
  return ExactScalar(4) * n2 * w2;
}

std::optional<BoundaryRoots> facilitation_boundary_roots(const ScenarioParams& p) {
  if (p.k.is_zero() || p.n.is_zero()) return std::nullopt;
  ExactScalar disc = p.k * p.k - ExactScalar(4) * p.k * p.n * p.w;
  if (!disc.is_rational()) return std::nullopt;
  auto root = ExactScalar::sqrt_of(disc.rational_part());
  if (!root) return std::nullopt;
  try {
    ExactScalar half_n = (ExactScalar(2) * p.n).inverse();
    ExactScalar ratio = *root / p.k;
    return BoundaryRoots{half_n * (ExactScalar(1) + ratio), half_n * (ExactScalar(1) - ratio)};
  } catch (const FieldMismatch&) {
    return std::nullopt;
  }
}

Point competition_coexistence(const ScenarioParams& p) {
  ExactScalar den = p.e * p.e * p.p + p.s * p.k * p.n;
  if (den.is_zero()) throw InvalidArgument("competition coexistence equilibrium is not isolated");
  ExactScalar x = (p.s * (p.k - p.w) + p.h * p.e) / den;
  ExactScalar y = (p.k * (ExactScalar(1) - p.n * x) - p.w) / p.e;
  return {x, y};
}

FacilitationCenterChart facilitation_center_chart(const ExactScalar& x0, const ExactScalar& x1) {
  const ExactScalar one(1);
  const ExactScalar sum = x0 + x1;
  const ExactScalar D = ExactScalar(2) * x0 * x1 - sum;
  if (sum.is_zero() || D.is_zero()) throw InvalidArgument("center chart undefined for these roots");
  FacilitationCenterChart c;
  c.n2 = sum.inverse();
  const ExactScalar& n = c.n2;
  ExactScalar num = ExactScalar(2) * (n * x0 - one) * x0 + one;
  ExactScalar den = (ExactScalar(8) * n * n - ExactScalar(6) * n + one) * (n * x0 - one) * x0 + ExactScalar(2) * n * n - n;
  if (den.is_zero()) throw InvalidArgument("center chart undefined for these roots");
  c.k2_squared = num / den;
  c.omega_c = {ExactScalar(0), ExactScalar(2) * x0 * x1 / D};
  c.omega_rc_minus = {x0 * x1 * (sum - ExactScalar(2)) / D, -(x0 * x1 * (x0 - x1) * (x0 - x1)) / (D * D)};
  return c;
}

}  // namespace pwk::field
