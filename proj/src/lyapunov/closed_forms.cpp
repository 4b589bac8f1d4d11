#include "pwk/lyapunov/closed_forms.hpp"

#include "pwk/errors.hpp"

namespace pwk::lyap {

namespace {

ExactScalar q(long a, long b = 1) { return ExactScalar::rational(a, b); }

ExactScalar cubic_coeff(const ExactScalar& n, bool printed) {
  ExactScalar n2 = n * n;
  ExactScalar n3 = n2 * n;
  return printed ? q(8) * n3 - q(12) * n2 - q(6) * n - q(1) : q(8) * n3 - q(12) * n2 + q(6) * n - q(1);
}

ExactScalar hv3(const ExactScalar& k, const ExactScalar& n, const ExactScalar& e, bool printed) {
  ExactScalar k2 = k * k;
  return k2 * k * cubic_coeff(n, printed) + k2 * e * (q(8) * n * n - q(6) * n + q(1)) + k * (q(2) * n - q(1)) +
         q(2) * e;
}

ExactScalar ce2(const ExactScalar& k, const ExactScalar& n, bool printed) {
  ExactScalar den = k * k * (q(8) * n * n - q(6) * n + q(1)) + q(2);
  if (den.is_zero()) throw InvalidArgument("hat_v3 does not depend on e2 at these (k2, n2)");
  return -k * (k * k * cubic_coeff(n, printed) + q(2) * n - q(1)) / den;
}

}  // namespace

ExactScalar hat_v2(const ExactScalar& k1, const ExactScalar& n1, const ExactScalar& e1, const ExactScalar& k2,
                   const ExactScalar& n2, const ExactScalar& e2) {
  ExactScalar c = k1 * n1;
  return q(4) * (e2 + k2 * n2 - k2) * k2 * n2 - (c + e1) * c + (k2 - e2) * k2;
}

ExactScalar hat_v3(const ExactScalar& k2, const ExactScalar& n2, const ExactScalar& e2) {
  return hv3(k2, n2, e2, false);
}

ExactScalar hat_v3_printed(const ExactScalar& k2, const ExactScalar& n2, const ExactScalar& e2) {
  return hv3(k2, n2, e2, true);
}

ExactScalar center_e2(const ExactScalar& k2, const ExactScalar& n2) { return ce2(k2, n2, false); }

ExactScalar center_e2_printed(const ExactScalar& k2, const ExactScalar& n2) { return ce2(k2, n2, true); }

ExactScalar center_e1(const ExactScalar& k1, const ExactScalar& n1, const ExactScalar& k2, const ExactScalar& n2,
                      const ExactScalar& e2) {
  ExactScalar c = k1 * n1;
  if (c.is_zero()) throw InvalidArgument("hat_v2 does not depend on e1 when k1 n1 = 0");
  return (q(4) * (e2 + k2 * n2 - k2) * k2 * n2 + (k2 - e2) * k2 - c * c) / c;
}

PiPolynomial smooth_v3_closed(const ExactScalar& k2, const ExactScalar& n2, const ExactScalar& e2) {
  return PiPolynomial::pi_power(1, -q(1, 4) * e2 * k2 * n2 * hat_v3(k2, n2, e2));
}

PiPolynomial piecewise_v2_closed(const ExactScalar& k1, const ExactScalar& n1, const ExactScalar& e1,
                                 const ExactScalar& k2, const ExactScalar& n2, const ExactScalar& e2) {
  return PiPolynomial(-q(2, 3) * hat_v2(k1, n1, e1, k2, n2, e2));
}

PiPolynomial piecewise_v3_closed(const ExactScalar& k2, const ExactScalar& n2, const ExactScalar& e2) {
  return PiPolynomial::pi_power(1, -q(1, 8) * e2 * k2 * n2 * hat_v3(k2, n2, e2));
}

}  // namespace pwk::lyap
