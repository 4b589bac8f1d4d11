#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pwk/algebra/exact_scalar.hpp"

namespace pwk::algebra {

/// Bivariate polynomial sum c_ij x^i y^j over Q(sqrt(d)).
class Poly2 {
 public:
  using Exponent = std::pair<int, int>;
  using Terms = std::map<Exponent, ExactScalar>;

  Poly2() = default;
  Poly2(const ExactScalar& c);

  static Poly2 x() { return monomial(1, 0); }
  static Poly2 y() { return monomial(0, 1); }
  static Poly2 monomial(int i, int j, const ExactScalar& c = ExactScalar(1));

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  ExactScalar coeff(int i, int j) const;
  void add_term(int i, int j, const ExactScalar& c);
  int total_degree() const;
  /// Part of total degree k.
  Poly2 homogeneous(int k) const;
  /// Common radicand of all coefficients (0 when rational).
  long radicand() const;

  Poly2 dx() const;
  Poly2 dy() const;
  ExactScalar eval(const ExactScalar& x, const ExactScalar& y) const;
  double eval(double x, double y) const;
  /// P(xs(x,y), ys(x,y)).
  Poly2 compose(const Poly2& xs, const Poly2& ys) const;
  /// Univariate coefficients in y of P(c, y), lowest degree first.
  std::vector<ExactScalar> restrict_x(const ExactScalar& c) const;
  /// P / x when x divides P; throws otherwise.
  Poly2 divide_by_x() const;
  Poly2 divide_by_y() const;
  bool divisible_by_x() const;
  bool divisible_by_y() const;

  std::string to_string(const char* xv = "x", const char* yv = "y") const;

  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  Poly2& operator*=(const ExactScalar& s);
  Poly2 operator-() const;

  friend Poly2 operator+(Poly2 l, const Poly2& r) { return l += r; }
  friend Poly2 operator-(Poly2 l, const Poly2& r) { return l -= r; }
  friend Poly2 operator*(const Poly2& l, const Poly2& r);
  friend Poly2 operator*(Poly2 l, const ExactScalar& s) { return l *= s; }
  friend Poly2 operator*(const ExactScalar& s, Poly2 l) { return l *= s; }
  friend bool operator==(const Poly2& l, const Poly2& r) { return l.t_ == r.t_; }

 private:
  Terms t_;
};

Poly2 pow(const Poly2& p, unsigned n);

/// Double-precision copy for fast evaluation.
class NumericPoly2 {
 public:
  NumericPoly2() = default;
  explicit NumericPoly2(const Poly2& p);
  double operator()(double x, double y) const;

 private:
  struct Term {
    int i;
    int j;
    double c;
  };
  std::vector<Term> terms_;
  int max_i_ = 0;
  int max_j_ = 0;
};

}  // namespace pwk::algebra
