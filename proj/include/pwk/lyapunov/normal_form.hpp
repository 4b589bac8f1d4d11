#pragma once

#include <vector>

#include "pwk/field/models.hpp"
#include "pwk/field/vector_field.hpp"

namespace pwk::lyap {

using algebra::ExactScalar;
using algebra::Poly2;
using field::Point;
using field::PolyVectorField;

/// Weak focus moved to the origin with the linear part brought to a rotation.
///
/// With (u, v) = (x - x0, y - y0) and time divided by omega = sqrt(det J):
///   X = (a u + b v) / b,  Y = -u / b
/// which gives the clockwise form X' = Y + ..., Y' = -X + ... stored in P, Q.
/// On the line u = 0 the change is X = v, so a vertical separation line goes to Y = 0
/// and both zones of a piecewise system get twin changes that agree on it.
struct NormalFormSystem {
  ExactScalar tau;  // only 0 is produced
  Point focus;
  ExactScalar a;      // J11 / omega
  ExactScalar b;      // J12 / omega
  ExactScalar omega;  // time scale
  Poly2 P;            // X' in the clockwise frame
  Poly2 Q;            // Y' in the clockwise frame
  /// Original rotation sense; the clockwise frame reverses it when b < 0.
  bool counter_clockwise = false;
  /// After the reflection Y -> -Y, the half-plane u < 0 lands in the upper half.
  bool left_side_upper = false;

  /// Nonlinear parts (F, G) in the counter-clockwise frame x' = -y + F, y' = x + G.
  std::pair<Poly2, Poly2> counter_clockwise_nonlinear() const;
  /// Original field point for normal-form coordinates (X, Y).
  Point to_original(const ExactScalar& X, const ExactScalar& Y) const;
};

/// Rejects nonzero trace and non-positive determinant.
NormalFormSystem normalize_at_weak_focus(const PolyVectorField& field, const Point& p);

/// tau of the linear part at p: trace / sqrt(4 det - trace^2), numerically.
double linear_tau(const PolyVectorField& field, const Point& p);

}  // namespace pwk::lyap
