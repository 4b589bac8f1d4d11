#include "pwk/field/vector_field.hpp"

#include "pwk/errors.hpp"

namespace pwk::field {

PolyVectorField::PolyVectorField(Poly2 P, Poly2 Q, bool kolmogorov)
    : P_(std::move(P)), Q_(std::move(Q)), kolmogorov_(kolmogorov) {
  if (kolmogorov_ && !(P_.divisible_by_x() && Q_.divisible_by_y())) {
    throw InvalidArgument("field is not of Kolmogorov form (x must divide P, y must divide Q)");
  }
}

PolyVectorField PolyVectorField::kolmogorov(const Poly2& f, const Poly2& g) {
  return PolyVectorField(Poly2::x() * f, Poly2::y() * g, true);
}

Poly2 PolyVectorField::f() const {
  if (!kolmogorov_) throw InvalidArgument("per-capita rate requested on a non-Kolmogorov field");
  return P_.divide_by_x();
}

Poly2 PolyVectorField::g() const {
  if (!kolmogorov_) throw InvalidArgument("per-capita rate requested on a non-Kolmogorov field");
  return Q_.divide_by_y();
}

int PolyVectorField::degree() const { return std::max(P_.total_degree(), Q_.total_degree()); }

long PolyVectorField::radicand() const {
  return algebra::common_radicand(P_.radicand(), Q_.radicand());
}

std::array<ExactScalar, 2> PolyVectorField::eval(const Point& p) const {
  return {P_.eval(p.x, p.y), Q_.eval(p.x, p.y)};
}

Jacobian PolyVectorField::jacobian(const Point& p) const {
  return {P_.dx().eval(p.x, p.y), P_.dy().eval(p.x, p.y), Q_.dx().eval(p.x, p.y),
          Q_.dy().eval(p.x, p.y)};
}

std::string PolyVectorField::to_string() const {
  return "x' = " + P_.to_string() + "\ny' = " + Q_.to_string();
}

PiecewiseKolmogorovSystem::PiecewiseKolmogorovSystem(PolyVectorField z1, PolyVectorField z2,
                                                     ExactScalar sigma_x)
    : z1_(std::move(z1)), z2_(std::move(z2)), sigma_x_(std::move(sigma_x)) {
  radicand();
}

PiecewiseKolmogorovSystem PiecewiseKolmogorovSystem::smooth(const PolyVectorField& z,
                                                            ExactScalar sigma_x) {
  return PiecewiseKolmogorovSystem(z, z, std::move(sigma_x));
}

long PiecewiseKolmogorovSystem::radicand() const {
  long d = algebra::common_radicand(z1_.radicand(), z2_.radicand());
  return algebra::common_radicand(d, sigma_x_.is_rational() ? 0 : sigma_x_.radicand());
}

}  // namespace pwk::field
