#pragma once

#include <array>

#include "pwk/algebra/poly2.hpp"
#include "pwk/field/vector_field.hpp"

namespace pwk::flow {

using State = std::array<double, 2>;

/// Double-precision evaluation of one zone.
class NumericZone {
 public:
  NumericZone() = default;
  explicit NumericZone(const field::PolyVectorField& z);

  State operator()(const State& s) const { return {P_(s[0], s[1]), Q_(s[0], s[1])}; }
  double P(double x, double y) const { return P_(x, y); }
  double Q(double x, double y) const { return Q_(x, y); }
  /// (Z)^2 h for h = x - sigma: P_x P + P_y Q.
  double second_lie(double x, double y) const;

 private:
  algebra::NumericPoly2 P_, Q_, Px_, Py_;
};

class NumericSystem {
 public:
  NumericSystem() = default;
  explicit NumericSystem(const field::PiecewiseKolmogorovSystem& sys);

  const NumericZone& zone(int i) const { return i == 1 ? z1_ : z2_; }
  double sigma() const { return sigma_; }
  bool kolmogorov() const { return kolmogorov_; }

 private:
  NumericZone z1_, z2_;
  double sigma_ = 1.0;
  bool kolmogorov_ = false;
};

}  // namespace pwk::flow
