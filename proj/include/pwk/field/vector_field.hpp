#pragma once

#include <array>
#include <string>

#include "pwk/algebra/exact_scalar.hpp"
#include "pwk/algebra/poly2.hpp"

namespace pwk::field {

using algebra::ExactScalar;
using algebra::Poly2;

struct Point {
  ExactScalar x;
  ExactScalar y;
};

struct Jacobian {
  ExactScalar a, b, c, d;  // [[a, b], [c, d]]

  ExactScalar trace() const { return a + d; }
  ExactScalar det() const { return a * d - b * c; }
};

/// x' = P(x, y), y' = Q(x, y).
class PolyVectorField {
 public:
  PolyVectorField() = default;
  /// With kolmogorov set, x must divide P and y must divide Q.
  PolyVectorField(Poly2 P, Poly2 Q, bool kolmogorov = false);

  /// x' = x f, y' = y g.
  static PolyVectorField kolmogorov(const Poly2& f, const Poly2& g);

  const Poly2& P() const { return P_; }
  const Poly2& Q() const { return Q_; }
  bool is_kolmogorov() const { return kolmogorov_; }
  /// Per-capita rates P/x and Q/y; needs the Kolmogorov flag.
  Poly2 f() const;
  Poly2 g() const;

  int degree() const;
  long radicand() const;
  std::array<ExactScalar, 2> eval(const Point& p) const;
  Jacobian jacobian(const Point& p) const;
  std::string to_string() const;

  friend bool operator==(const PolyVectorField& l, const PolyVectorField& r) {
    return l.P_ == r.P_ && l.Q_ == r.Q_;
  }

 private:
  Poly2 P_;
  Poly2 Q_;
  bool kolmogorov_ = false;
};

/// Z1 on {x < sigma_x}, Z2 on {x > sigma_x}.
class PiecewiseKolmogorovSystem {
 public:
  PiecewiseKolmogorovSystem() = default;
  PiecewiseKolmogorovSystem(PolyVectorField z1, PolyVectorField z2, ExactScalar sigma_x = ExactScalar(1));

  /// Same field on both sides.
  static PiecewiseKolmogorovSystem smooth(const PolyVectorField& z, ExactScalar sigma_x = ExactScalar(1));

  const PolyVectorField& z1() const { return z1_; }
  const PolyVectorField& z2() const { return z2_; }
  const PolyVectorField& zone(int i) const { return i == 1 ? z1_ : z2_; }
  const ExactScalar& sigma_x() const { return sigma_x_; }
  bool is_smooth() const { return z1_ == z2_; }
  long radicand() const;

 private:
  PolyVectorField z1_;
  PolyVectorField z2_;
  ExactScalar sigma_x_{1};
};

}  // namespace pwk::field
