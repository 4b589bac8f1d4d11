#pragma once

#include "pwk/algebra/exact_scalar.hpp"
#include "pwk/algebra/pi_polynomial.hpp"

namespace pwk::lyap {

using algebra::ExactScalar;
using algebra::PiPolynomial;

/// Second-order center polynomial of the competition/facilitation pair.
ExactScalar hat_v2(const ExactScalar& k1, const ExactScalar& n1, const ExactScalar& e1, const ExactScalar& k2,
                   const ExactScalar& n2, const ExactScalar& e2);

/// Facilitation center polynomial; the cubic coefficient is (2n - 1)^3.
ExactScalar hat_v3(const ExactScalar& k2, const ExactScalar& n2, const ExactScalar& e2);
/// Same with the cubic coefficient 8n^3 - 12n^2 - 6n - 1 as printed in the source.
ExactScalar hat_v3_printed(const ExactScalar& k2, const ExactScalar& n2, const ExactScalar& e2);

/// e2 solving hat_v3 = 0 (linear in e2).
ExactScalar center_e2(const ExactScalar& k2, const ExactScalar& n2);
ExactScalar center_e2_printed(const ExactScalar& k2, const ExactScalar& n2);
/// e1 solving hat_v2 = 0 (linear in e1).
ExactScalar center_e1(const ExactScalar& k1, const ExactScalar& n1, const ExactScalar& k2, const ExactScalar& n2,
                      const ExactScalar& e2);

/// Expected series values; V > 0 repels.
PiPolynomial smooth_v3_closed(const ExactScalar& k2, const ExactScalar& n2, const ExactScalar& e2);
PiPolynomial piecewise_v2_closed(const ExactScalar& k1, const ExactScalar& n1, const ExactScalar& e1,
                                 const ExactScalar& k2, const ExactScalar& n2, const ExactScalar& e2);
/// Valid on hat_v2 = 0.
PiPolynomial piecewise_v3_closed(const ExactScalar& k2, const ExactScalar& n2, const ExactScalar& e2);

}  // namespace pwk::lyap
