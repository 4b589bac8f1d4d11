#pragma once

#include <map>
#include <string>
#include <tuple>

#include "pwk/algebra/exact_scalar.hpp"
#include "pwk/algebra/pi_polynomial.hpp"

namespace pwk::algebra {

enum class Trig { Cos, Sin };

/// Monomial theta^m * cos(j theta) or theta^m * sin(j theta), j >= 0.
struct TrigKey {
  int m = 0;
  int j = 0;
  Trig kind = Trig::Cos;

  friend bool operator<(const TrigKey& a, const TrigKey& b) {
    return std::tie(a.m, a.j, a.kind) < std::tie(b.m, b.j, b.kind);
  }
  friend bool operator==(const TrigKey& a, const TrigKey& b) {
    return a.m == b.m && a.j == b.j && a.kind == b.kind;
  }
};

/// Finite sum of coefficient * theta^m * {cos,sin}(j theta).
class QuasiTrigPoly {
 public:
  using Terms = std::map<TrigKey, ExactScalar>;

  QuasiTrigPoly() = default;
  QuasiTrigPoly(const ExactScalar& c);

  static QuasiTrigPoly monomial(int m, int j, Trig kind, const ExactScalar& c = ExactScalar(1));
  static QuasiTrigPoly cos_theta() { return monomial(0, 1, Trig::Cos); }
  static QuasiTrigPoly sin_theta() { return monomial(0, 1, Trig::Sin); }
  /// cos^a(theta) sin^b(theta) in product-to-sum form.
  static QuasiTrigPoly cos_sin_power(int a, int b);

  const Terms& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  /// Highest power of theta that occurs.
  int theta_degree() const;
  ExactScalar constant_term() const;

  void add_term(const TrigKey& k, const ExactScalar& c);

  QuasiTrigPoly derivative() const;
  /// Antiderivative F with F(0) = 0.
  QuasiTrigPoly antiderivative() const;
  /// Value at theta = n*pi for an integer n.
  PiPolynomial at_pi_multiple(int n) const;
  /// f(theta + pi); defined only when no theta powers occur.
  QuasiTrigPoly shift_by_pi() const;
  double evaluate(double theta) const;
  std::string to_string() const;

  QuasiTrigPoly& operator+=(const QuasiTrigPoly& o);
  QuasiTrigPoly& operator-=(const QuasiTrigPoly& o);
  QuasiTrigPoly& operator*=(const ExactScalar& s);
  QuasiTrigPoly operator-() const;

  friend QuasiTrigPoly operator+(QuasiTrigPoly l, const QuasiTrigPoly& r) { return l += r; }
  friend QuasiTrigPoly operator-(QuasiTrigPoly l, const QuasiTrigPoly& r) { return l -= r; }
  friend QuasiTrigPoly operator*(const QuasiTrigPoly& l, const QuasiTrigPoly& r);
  friend QuasiTrigPoly operator*(QuasiTrigPoly l, const ExactScalar& s) { return l *= s; }
  friend QuasiTrigPoly operator*(const ExactScalar& s, QuasiTrigPoly l) { return l *= s; }
  friend bool operator==(const QuasiTrigPoly& l, const QuasiTrigPoly& r) { return l.t_ == r.t_; }

 private:
  Terms t_;
};

}  // namespace pwk::algebra
