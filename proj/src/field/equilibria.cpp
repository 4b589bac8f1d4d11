#include "pwk/field/equilibria.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>
#include <algorithm>
#include <cmath>

#include "pwk/errors.hpp"

namespace pwk::field {

namespace {

constexpr double kImagTol = 1e-10;
constexpr double kMergeTol = 1e-9;

std::vector<ExactScalar> trim(std::vector<ExactScalar> c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  return c;
}

std::vector<RealRoot> numeric_roots(const std::vector<ExactScalar>& c) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<Eigen::Index>(i)] = c[i].to_double();
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(v);
  std::vector<RealRoot> out;
  for (const auto& z : solver.roots()) {
    if (std::abs(z.imag()) <= kImagTol * std::max(1.0, std::abs(z))) out.push_back({z.real(), std::nullopt});
  }
  return out;
}

std::vector<RealRoot> quadratic_roots(const ExactScalar& c0, const ExactScalar& c1, const ExactScalar& c2) {
  ExactScalar disc = c1 * c1 - ExactScalar(4) * c2 * c0;
  int s = disc.sign();
  if (s < 0) return {};
  ExactScalar inv = (ExactScalar(2) * c2).inverse();
  if (s == 0) {
    ExactScalar r = -c1 * inv;
    return {{r.to_double(), r}};
  }
  if (disc.is_rational()) {
    if (auto root = ExactScalar::sqrt_of(disc.rational_part())) {
      try {
        ExactScalar r1 = (-c1 - *root) * inv;
        ExactScalar r2 = (-c1 + *root) * inv;
        return {{r1.to_double(), r1}, {r2.to_double(), r2}};
      } catch (const FieldMismatch&) {
      }
    }
  }
  return numeric_roots({c0, c1, c2});
}

// True when p = a*v + b(other) with a constant a, for v = y (along_y) or x.
bool linear_in(const Poly2& p, bool along_y, ExactScalar& coeff) {
  coeff = ExactScalar();
  for (const auto& [e, c] : p.terms()) {
    int in = along_y ? e.second : e.first;
    int out = along_y ? e.first : e.second;
    if (in == 0) continue;
    if (in != 1 || out != 0) return false;
    coeff = c;
  }
  return !coeff.is_zero();
}

struct Candidate {
  double x, y;
  std::optional<Point> exact;
};

std::vector<ExactScalar> univariate(const Poly2& p, bool in_x) {
  std::vector<ExactScalar> out;
  for (const auto& [e, c] : p.terms()) {
    int deg = in_x ? e.first : e.second;
    if ((in_x ? e.second : e.first) != 0) throw NumericalFailure("elimination left a mixed term");
    if (static_cast<int>(out.size()) <= deg) out.resize(static_cast<std::size_t>(deg) + 1);
    out[static_cast<std::size_t>(deg)] += c;
  }
  return out;
}

std::vector<Candidate> newton_fallback(const Poly2& F, const Poly2& G) {
  const algebra::NumericPoly2 f(F), g(G), fx(F.dx()), fy(F.dy()), gx(G.dx()), gy(G.dy());
  std::vector<Candidate> out;
  for (int i = 0; i <= 16; ++i) {
    for (int j = 0; j <= 16; ++j) {
      double x = -4.0 + 0.5 * i;
      double y = -4.0 + 0.5 * j;
      for (int it = 0; it < 60; ++it) {
        double a = fx(x, y), b = fy(x, y), c = gx(x, y), d = gy(x, y);
        double det = a * d - b * c;
        if (std::abs(det) < 1e-14) break;
        double r1 = f(x, y), r2 = g(x, y);
        x -= (d * r1 - b * r2) / det;
        y -= (a * r2 - c * r1) / det;
        if (!std::isfinite(x) || !std::isfinite(y)) break;
      }
      if (std::isfinite(x) && std::isfinite(y) && std::abs(f(x, y)) < 1e-11 && std::abs(g(x, y)) < 1e-11) {
        out.push_back({x, y, std::nullopt});
      }
    }
  }
  return out;
}

// Common zeros of F and G.
std::vector<Candidate> solve_pair(const Poly2& F, const Poly2& G) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    const Poly2& lin = attempt % 2 == 0 ? G : F;
    const Poly2& other = attempt % 2 == 0 ? F : G;
    bool along_y = attempt < 2;
    ExactScalar a;
    if (!linear_in(lin, along_y, a)) continue;
    Poly2 rest = lin - (along_y ? Poly2::y() : Poly2::x()) * a;
    Poly2 sub = -rest * a.inverse();
    Poly2 reduced = along_y ? other.compose(Poly2::x(), sub) : other.compose(sub, Poly2::y());
    std::vector<Candidate> out;
    if (reduced.is_zero()) return newton_fallback(F, G);
    for (const auto& r : real_roots(univariate(reduced, along_y))) {
      Candidate c{};
      double v = r.value;
      if (r.exact) {
        try {
          ExactScalar w = along_y ? sub.eval(*r.exact, ExactScalar()) : sub.eval(ExactScalar(), *r.exact);
          c.exact = along_y ? Point{*r.exact, w} : Point{w, *r.exact};
        } catch (const FieldMismatch&) {
        }
      }
      if (c.exact) {
        c.x = c.exact->x.to_double();
        c.y = c.exact->y.to_double();
      } else {
        double w = along_y ? sub.eval(v, 0.0) : sub.eval(0.0, v);
        c.x = along_y ? v : w;
        c.y = along_y ? w : v;
      }
      out.push_back(c);
    }
    return out;
  }
  return newton_fallback(F, G);
}

}  // namespace

std::string to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Saddle: return "saddle";
    case EquilibriumKind::StableNode: return "stable node";
    case EquilibriumKind::UnstableNode: return "unstable node";
    case EquilibriumKind::StableFocus: return "stable focus";
    case EquilibriumKind::UnstableFocus: return "unstable focus";
    case EquilibriumKind::CenterCandidate: return "center candidate";
    case EquilibriumKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

std::vector<RealRoot> real_roots(std::vector<ExactScalar> c) {
  c = trim(std::move(c));
  std::vector<RealRoot> out;
  if (c.size() <= 1) return out;
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros].is_zero()) ++zeros;
  if (zeros > 0) {
    out.push_back({0.0, ExactScalar()});
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  }
  std::vector<RealRoot> rest;
  if (c.size() == 2) {
    ExactScalar r = -c[0] / c[1];
    rest.push_back({r.to_double(), r});
  } else if (c.size() == 3) {
    rest = quadratic_roots(c[0], c[1], c[2]);
  } else if (c.size() > 3) {
    rest = numeric_roots(c);
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

EquilibriumKind classify(const Jacobian& j) {
  int det = j.det().sign();
  if (det < 0) return EquilibriumKind::Saddle;
  if (det == 0) return EquilibriumKind::Degenerate;
  int tr = j.trace().sign();
  ExactScalar disc = j.trace() * j.trace() - ExactScalar(4) * j.det();
  if (tr == 0) return EquilibriumKind::CenterCandidate;
  if (disc.sign() < 0) return tr < 0 ? EquilibriumKind::StableFocus : EquilibriumKind::UnstableFocus;
  return tr < 0 ? EquilibriumKind::StableNode : EquilibriumKind::UnstableNode;
}

std::vector<Equilibrium> equilibria(const PolyVectorField& field) {
  std::vector<Candidate> cands;
  if (field.is_kolmogorov()) {
    const Poly2 f = field.f();
    const Poly2 g = field.g();
    cands.push_back({0.0, 0.0, Point{ExactScalar(), ExactScalar()}});
    for (const auto& r : real_roots(g.restrict_x(ExactScalar()))) {
      cands.push_back({0.0, r.value, r.exact ? std::optional<Point>(Point{ExactScalar(), *r.exact}) : std::nullopt});
    }
    std::vector<ExactScalar> fx0;
    for (const auto& [e, c] : f.terms()) {
      if (e.second != 0) continue;
      if (static_cast<int>(fx0.size()) <= e.first) fx0.resize(static_cast<std::size_t>(e.first) + 1);
      fx0[static_cast<std::size_t>(e.first)] += c;
    }
    for (const auto& r : real_roots(fx0)) {
      cands.push_back({r.value, 0.0, r.exact ? std::optional<Point>(Point{*r.exact, ExactScalar()}) : std::nullopt});
    }
    auto inner = solve_pair(f, g);
    cands.insert(cands.end(), inner.begin(), inner.end());
  } else {
    cands = solve_pair(field.P(), field.Q());
  }

  std::vector<Equilibrium> out;
  for (const auto& c : cands) {
    bool dup = false;
    for (auto& e : out) {
      if (std::hypot(e.x - c.x, e.y - c.y) < kMergeTol * std::max(1.0, std::hypot(c.x, c.y))) {
        if (!e.exact && c.exact) e.exact = c.exact;
        dup = true;
        break;
      }
    }
    if (dup) continue;
    Equilibrium e;
    e.x = c.x;
    e.y = c.y;
    e.exact = c.exact;
    out.push_back(e);
  }

  for (auto& e : out) {
    double a, b, cc, d;
    if (e.exact) {
      Jacobian j = field.jacobian(*e.exact);
      e.kind = classify(j);
      a = j.a.to_double();
      b = j.b.to_double();
      cc = j.c.to_double();
      d = j.d.to_double();
    } else {
      a = field.P().dx().eval(e.x, e.y);
      b = field.P().dy().eval(e.x, e.y);
      cc = field.Q().dx().eval(e.x, e.y);
      d = field.Q().dy().eval(e.x, e.y);
      double tr = a + d;
      double det = a * d - b * cc;
      double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(cc), std::abs(d)});
      if (std::abs(det) < 1e-12 * scale * scale) {
        e.kind = EquilibriumKind::Degenerate;
      } else if (det < 0) {
        e.kind = EquilibriumKind::Saddle;
      } else if (std::abs(tr) < 1e-12 * scale) {
        e.kind = EquilibriumKind::CenterCandidate;
      } else if (tr * tr - 4 * det < 0) {
        e.kind = tr < 0 ? EquilibriumKind::StableFocus : EquilibriumKind::UnstableFocus;
      } else {
        e.kind = tr < 0 ? EquilibriumKind::StableNode : EquilibriumKind::UnstableNode;
      }
    }
    std::complex<double> tr(a + d, 0.0);
    std::complex<double> disc = std::sqrt(std::complex<double>((a - d) * (a - d) + 4 * b * cc, 0.0));
    e.lambda1 = 0.5 * (tr + disc);
    e.lambda2 = 0.5 * (tr - disc);
  }
  std::sort(out.begin(), out.end(), [](const Equilibrium& l, const Equilibrium& r) {
    return l.x != r.x ? l.x < r.x : l.y < r.y;
  });
  return out;
}

}  // namespace pwk::field
