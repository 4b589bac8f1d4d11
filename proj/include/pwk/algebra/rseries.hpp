#pragma once

#include <optional>
#include <vector>

#include "pwk/algebra/exact_scalar.hpp"
#include "pwk/algebra/limits.hpp"
#include "pwk/algebra/pi_polynomial.hpp"
#include "pwk/algebra/quasi_trig.hpp"
#include "pwk/errors.hpp"

namespace pwk::algebra {

inline std::optional<ExactScalar> unit_inverse(const ExactScalar& c) {
  if (c.is_zero()) return std::nullopt;
  return c.inverse();
}

inline std::optional<PiPolynomial> unit_inverse(const PiPolynomial& c) {
  if (!c.is_constant() || c.is_zero()) return std::nullopt;
  return PiPolynomial(c.coeff(0).inverse());
}

inline std::optional<QuasiTrigPoly> unit_inverse(const QuasiTrigPoly& c) {
  if (!c.is_constant() || c.is_zero()) return std::nullopt;
  return QuasiTrigPoly(c.constant_term().inverse());
}

/// Truncated series a_1 r + ... + a_K r^K with no constant term.
template <class C>
class RSeries {
 public:
  explicit RSeries(int order) : a_(static_cast<std::size_t>(order) + 1) {
    if (order < 1 || order > kMaxOrder + 2) {
      throw ResourceLimit("series order " + std::to_string(order) + " out of range");
    }
  }

  static RSeries identity(int order) {
    RSeries s(order);
    s[1] = C(ExactScalar(1));
    return s;
  }

  int order() const { return static_cast<int>(a_.size()) - 1; }
  C& operator[](int k) { return a_.at(static_cast<std::size_t>(k)); }
  const C& operator[](int k) const { return a_.at(static_cast<std::size_t>(k)); }

  RSeries& operator+=(const RSeries& o) {
    for (int k = 1; k <= order(); ++k) a_[k] += o[k];
    return *this;
  }
  RSeries& operator-=(const RSeries& o) {
    for (int k = 1; k <= order(); ++k) a_[k] -= o[k];
    return *this;
  }
  friend RSeries operator+(RSeries l, const RSeries& r) { return l += r; }
  friend RSeries operator-(RSeries l, const RSeries& r) { return l -= r; }

  friend RSeries operator*(const RSeries& l, const RSeries& r) {
    RSeries out(l.order());
    for (int i = 1; i <= l.order(); ++i) {
      if (l[i].is_zero()) continue;
      for (int j = 1; i + j <= l.order(); ++j) {
        if (!r[j].is_zero()) out[i + j] += l[i] * r[j];
      }
    }
    return out;
  }

  RSeries scaled(const C& c) const {
    RSeries out(order());
    for (int k = 1; k <= order(); ++k) out[k] = a_[k] * c;
    return out;
  }

  /// this(inner(r)), truncated at the common order.
  RSeries compose(const RSeries& inner) const {
    RSeries out(order());
    RSeries power = inner;
    for (int j = 1; j <= order(); ++j) {
      if (j > 1) power = power * inner;
      if (!a_[j].is_zero()) out += power.scaled(a_[j]);
    }
    return out;
  }

  /// Compositional inverse; needs an invertible linear coefficient.
  RSeries inverse() const {
    auto inv1 = unit_inverse(a_[1]);
    if (!inv1) throw InvalidArgument("series inversion needs a unit linear coefficient");
    RSeries b(order());
    b[1] = *inv1;
    for (int k = 2; k <= order(); ++k) {
      // Coefficient k of this(b(r)) must vanish; b[k] enters linearly through a_1 b_k.
      RSeries trial = compose(b);
      b[k] = -(trial[k] * *inv1);
    }
    return b;
  }

 private:
  std::vector<C> a_;
};

}  // namespace pwk::algebra
