#include "pwk/lyapunov/normal_form.hpp"

#include <cmath>

#include "pwk/errors.hpp"

namespace pwk::lyap {

std::pair<Poly2, Poly2> NormalFormSystem::counter_clockwise_nonlinear() const {
  // Reflect Y -> -Y: (X, Y) = (x, -y), so x' = X'(x, -y) and y' = -Y'(x, -y).
  const Poly2 x = Poly2::x();
  const Poly2 my = -Poly2::y();
  Poly2 F = P.compose(x, my);
  Poly2 G = -Q.compose(x, my);
  // Remove the linear rotation (-y, x).
  F += Poly2::y();
  G -= Poly2::x();
  if (!F.homogeneous(1).is_zero() || !G.homogeneous(1).is_zero() || !F.homogeneous(0).is_zero() ||
      !G.homogeneous(0).is_zero()) {
    throw NumericalFailure("normal form has a residual linear or constant part");
  }
  return {F, G};
}

Point NormalFormSystem::to_original(const ExactScalar& X, const ExactScalar& Y) const {
  ExactScalar u = -b * Y;
  ExactScalar v = X - a * u / b;
  return {focus.x + u, focus.y + v};
}

NormalFormSystem normalize_at_weak_focus(const PolyVectorField& field, const Point& p) {
  auto value = field.eval(p);
  if (!value[0].is_zero() || !value[1].is_zero()) {
    throw InvalidArgument("point is not an equilibrium of the field");
  }
  field::Jacobian j = field.jacobian(p);
  if (!j.trace().is_zero()) throw InvalidArgument("nonzero trace at the focus: tau != 0 is not supported");
  ExactScalar det = j.det();
  if (det.sign() <= 0) throw InvalidArgument("determinant at the focus is not positive: not monodromic");
  if (j.b.is_zero()) throw InvalidArgument("degenerate linear part (J12 = 0)");
  if (!det.is_rational()) throw InvalidArgument("determinant outside Q: cannot rescale time exactly");
  auto omega = ExactScalar::sqrt_of(det.rational_part());
  if (!omega) throw InvalidArgument("sqrt(det) is not representable");

  NormalFormSystem nf;
  nf.focus = p;
  try {
    nf.omega = *omega;
    nf.a = j.a / nf.omega;
    nf.b = j.b / nf.omega;
  } catch (const FieldMismatch&) {
    throw InvalidArgument("time rescaling by sqrt(det) leaves the coefficient field");
  }

  const Poly2 x = Poly2::x();
  const Poly2 y = Poly2::y();
  // Translate, rescale time, then substitute u = -b Y, v = X + a Y.
  Poly2 Pt = field.P().compose(x + Poly2(p.x), y + Poly2(p.y)) * nf.omega.inverse();
  Poly2 Qt = field.Q().compose(x + Poly2(p.x), y + Poly2(p.y)) * nf.omega.inverse();
  Poly2 us = y * (-nf.b);
  Poly2 vs = x + y * nf.a;
  Poly2 Pu = Pt.compose(us, vs);
  Poly2 Qu = Qt.compose(us, vs);
  ExactScalar inv_b = nf.b.inverse();
  nf.P = (Pu * nf.a + Qu * nf.b) * inv_b;
  nf.Q = -(Pu * inv_b);
  nf.counter_clockwise = nf.b.sign() < 0;
  nf.left_side_upper = nf.b.sign() < 0;

  if (!(nf.P.homogeneous(1) == y) || !(nf.Q.homogeneous(1) == -x)) {
    throw NumericalFailure("normal form linear part is not (y, -x)");
  }
  return nf;
}

double linear_tau(const PolyVectorField& field, const Point& p) {
  field::Jacobian j = field.jacobian(p);
  double t = j.trace().to_double();
  double d = j.det().to_double();
  double disc = 4.0 * d - t * t;
  if (disc <= 0.0) throw InvalidArgument("linear part is not a focus");
  return t / std::sqrt(disc);
}

}  // namespace pwk::lyap
