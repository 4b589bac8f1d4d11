#pragma once

#include <string>
#include <vector>

#include "pwk/algebra/exact_scalar.hpp"

namespace pwk::algebra {

/// Polynomial in pi with coefficients in Q(sqrt(d)): c[0] + c[1] pi + ...
class PiPolynomial {
 public:
  PiPolynomial() = default;
  PiPolynomial(const ExactScalar& c);
  explicit PiPolynomial(std::vector<ExactScalar> coeffs);

  static PiPolynomial pi_power(int k, const ExactScalar& c = ExactScalar(1));

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  ExactScalar coeff(int k) const;
  const std::vector<ExactScalar>& coeffs() const { return c_; }

  /// Sign of the real number it denotes; exact when the polynomial is a monomial.
  int sign() const;
  double to_double() const;
  std::string to_string() const;

  PiPolynomial& operator+=(const PiPolynomial& o);
  PiPolynomial& operator-=(const PiPolynomial& o);
  PiPolynomial& operator*=(const PiPolynomial& o);
  PiPolynomial& operator*=(const ExactScalar& s);
  PiPolynomial operator-() const;

  friend PiPolynomial operator+(PiPolynomial l, const PiPolynomial& r) { return l += r; }
  friend PiPolynomial operator-(PiPolynomial l, const PiPolynomial& r) { return l -= r; }
  friend PiPolynomial operator*(PiPolynomial l, const PiPolynomial& r) { return l *= r; }
  friend PiPolynomial operator*(PiPolynomial l, const ExactScalar& s) { return l *= s; }
  friend PiPolynomial operator*(const ExactScalar& s, PiPolynomial l) { return l *= s; }
  friend bool operator==(const PiPolynomial& l, const PiPolynomial& r) { return l.c_ == r.c_; }

 private:
  void trim();
  std::vector<ExactScalar> c_;
};

}  // namespace pwk::algebra
