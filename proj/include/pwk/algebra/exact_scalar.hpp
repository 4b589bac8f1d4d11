#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace pwk::algebra {

/// Element a + b*sqrt(d) of Q(sqrt(d)), d square-free and > 1.
/// Rational values carry d == 0. Mixing two different radicands throws FieldMismatch.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(int v) : a_(v) {}
  ExactScalar(long v) : a_(v) {}
  ExactScalar(const mpq_class& a) : a_(a) { a_.canonicalize(); }
  ExactScalar(const mpq_class& a, const mpq_class& b, long d);

  static ExactScalar rational(long num, long den);
  /// sqrt(d) for a positive integer d; perfect-square factors are pulled out.
  static ExactScalar sqrt(long d);
  /// Exact square root of a non-negative rational, if it lies in some Q(sqrt(d))
  /// with d small enough to be certified square-free.
  static std::optional<ExactScalar> sqrt_of(const mpq_class& q);
  /// Arithmetic expression over rationals, decimals, sqrt(...), + - * / and parentheses.
  static ExactScalar parse(std::string_view text);

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& radical_part() const { return b_; }
  long radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  /// -1, 0 or +1, decided exactly.
  int sign() const;
  ExactScalar inverse() const;
  ExactScalar conjugate() const;
  double to_double() const;
  std::string to_string() const;

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);
  ExactScalar operator-() const;

  friend ExactScalar operator+(ExactScalar l, const ExactScalar& r) { return l += r; }
  friend ExactScalar operator-(ExactScalar l, const ExactScalar& r) { return l -= r; }
  friend ExactScalar operator*(ExactScalar l, const ExactScalar& r) { return l *= r; }
  friend ExactScalar operator/(ExactScalar l, const ExactScalar& r) { return l /= r; }

  friend bool operator==(const ExactScalar& l, const ExactScalar& r);
  friend bool operator<(const ExactScalar& l, const ExactScalar& r) { return (l - r).sign() < 0; }
  friend bool operator>(const ExactScalar& l, const ExactScalar& r) { return r < l; }
  friend bool operator<=(const ExactScalar& l, const ExactScalar& r) { return !(r < l); }
  friend bool operator>=(const ExactScalar& l, const ExactScalar& r) { return !(l < r); }

 private:
  void normalize();
  long join_radicand(const ExactScalar& o) const;

  mpq_class a_{0};
  mpq_class b_{0};
  long d_ = 0;
};

ExactScalar pow(const ExactScalar& x, unsigned n);
std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

/// Radicand shared by the arguments (0 if all rational); throws FieldMismatch otherwise.
long common_radicand(long d1, long d2);

}  // namespace pwk::algebra
