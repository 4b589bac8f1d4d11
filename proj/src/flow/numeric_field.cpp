#include "pwk/flow/numeric_field.hpp"

namespace pwk::flow {

NumericZone::NumericZone(const field::PolyVectorField& z)
    : P_(z.P()), Q_(z.Q()), Px_(z.P().dx()), Py_(z.P().dy()) {}

double NumericZone::second_lie(double x, double y) const {
  return Px_(x, y) * P_(x, y) + Py_(x, y) * Q_(x, y);
}

NumericSystem::NumericSystem(const field::PiecewiseKolmogorovSystem& sys)
    : z1_(sys.z1()),
      z2_(sys.z2()),
      sigma_(sys.sigma_x().to_double()),
      kolmogorov_(sys.z1().is_kolmogorov() && sys.z2().is_kolmogorov()) {}

}  // namespace pwk::flow
