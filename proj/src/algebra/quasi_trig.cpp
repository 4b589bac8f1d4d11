#include "pwk/algebra/quasi_trig.hpp"

#include <cmath>
#include <sstream>

#include "pwk/algebra/limits.hpp"

namespace pwk::algebra {

namespace {

const ExactScalar kHalf = ExactScalar::rational(1, 2);

// Adds c * theta^m * kind(j theta) with j of either sign.
void add_signed(QuasiTrigPoly& p, int m, int j, Trig kind, const ExactScalar& c) {
  if (j < 0) {
    j = -j;
    if (kind == Trig::Sin) {
      p.add_term({m, j, kind}, -c);
      return;
    }
  }
  p.add_term({m, j, kind}, c);
}

}  // namespace

QuasiTrigPoly::QuasiTrigPoly(const ExactScalar& c) {
  if (!c.is_zero()) t_.emplace(TrigKey{0, 0, Trig::Cos}, c);
}

QuasiTrigPoly QuasiTrigPoly::monomial(int m, int j, Trig kind, const ExactScalar& c) {
  QuasiTrigPoly p;
  add_signed(p, m, j, kind, c);
  return p;
}

QuasiTrigPoly QuasiTrigPoly::cos_sin_power(int a, int b) {
  QuasiTrigPoly r(ExactScalar(1));
  for (int i = 0; i < a; ++i) r = r * cos_theta();
  for (int i = 0; i < b; ++i) r = r * sin_theta();
  return r;
}

void QuasiTrigPoly::add_term(const TrigKey& k, const ExactScalar& c) {
  if (c.is_zero()) return;
  if (k.kind == Trig::Sin && k.j == 0) return;
  auto [it, inserted] = t_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

bool QuasiTrigPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first == TrigKey{0, 0, Trig::Cos});
}

int QuasiTrigPoly::theta_degree() const {
  int d = 0;
  for (const auto& [k, c] : t_) d = std::max(d, k.m);
  return d;
}

ExactScalar QuasiTrigPoly::constant_term() const {
  auto it = t_.find(TrigKey{0, 0, Trig::Cos});
  return it == t_.end() ? ExactScalar() : it->second;
}

QuasiTrigPoly& QuasiTrigPoly::operator+=(const QuasiTrigPoly& o) {
  for (const auto& [k, c] : o.t_) add_term(k, c);
  return *this;
}

QuasiTrigPoly& QuasiTrigPoly::operator-=(const QuasiTrigPoly& o) {
  for (const auto& [k, c] : o.t_) add_term(k, -c);
  return *this;
}

QuasiTrigPoly& QuasiTrigPoly::operator*=(const ExactScalar& s) {
  if (s.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [k, c] : t_) c *= s;
  return *this;
}

QuasiTrigPoly QuasiTrigPoly::operator-() const {
  QuasiTrigPoly r = *this;
  for (auto& [k, c] : r.t_) c = -c;
  return r;
}

QuasiTrigPoly operator*(const QuasiTrigPoly& l, const QuasiTrigPoly& r) {
  QuasiTrigPoly out;
  for (const auto& [k1, c1] : l.t_) {
    for (const auto& [k2, c2] : r.t_) {
      ExactScalar c = c1 * c2 * kHalf;
      int m = k1.m + k2.m;
      int a = k1.j;
      int b = k2.j;
      if (k1.kind == Trig::Cos && k2.kind == Trig::Cos) {
        add_signed(out, m, a - b, Trig::Cos, c);
        add_signed(out, m, a + b, Trig::Cos, c);
      } else if (k1.kind == Trig::Sin && k2.kind == Trig::Sin) {
        add_signed(out, m, a - b, Trig::Cos, c);
        add_signed(out, m, a + b, Trig::Cos, -c);
      } else if (k1.kind == Trig::Sin) {
        add_signed(out, m, a + b, Trig::Sin, c);
        add_signed(out, m, a - b, Trig::Sin, c);
      } else {
        add_signed(out, m, a + b, Trig::Sin, c);
        add_signed(out, m, b - a, Trig::Sin, c);
      }
    }
    check_term_count(out.size(), "quasi-trigonometric product");
  }
  return out;
}

QuasiTrigPoly QuasiTrigPoly::derivative() const {
  QuasiTrigPoly d;
  for (const auto& [k, c] : t_) {
    if (k.m > 0) d.add_term({k.m - 1, k.j, k.kind}, c * ExactScalar(k.m));
    if (k.j == 0) continue;
    if (k.kind == Trig::Cos) {
      d.add_term({k.m, k.j, Trig::Sin}, -c * ExactScalar(k.j));
    } else {
      d.add_term({k.m, k.j, Trig::Cos}, c * ExactScalar(k.j));
    }
  }
  return d;
}

QuasiTrigPoly QuasiTrigPoly::antiderivative() const {
  std::map<TrigKey, QuasiTrigPoly> memo;
  // Integration by parts, lowering m by one each time.
  auto integral = [&memo](auto&& self, const TrigKey& k) -> QuasiTrigPoly {
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    QuasiTrigPoly r;
    if (k.j == 0) {
      r.add_term({k.m + 1, 0, Trig::Cos}, ExactScalar::rational(1, k.m + 1));
    } else {
      ExactScalar inv_j = ExactScalar::rational(1, k.j);
      if (k.kind == Trig::Cos) {
        r.add_term({k.m, k.j, Trig::Sin}, inv_j);
        if (k.m > 0) r -= self(self, TrigKey{k.m - 1, k.j, Trig::Sin}) * (inv_j * ExactScalar(k.m));
      } else {
        r.add_term({k.m, k.j, Trig::Cos}, -inv_j);
        if (k.m > 0) r += self(self, TrigKey{k.m - 1, k.j, Trig::Cos}) * (inv_j * ExactScalar(k.m));
      }
    }
    memo.emplace(k, r);
    return r;
  };
  QuasiTrigPoly out;
  for (const auto& [k, c] : t_) out += integral(integral, k) * c;
  ExactScalar at_zero;
  for (const auto& [k, c] : out.t_) {
    if (k.m == 0 && k.kind == Trig::Cos) at_zero += c;
  }
  out.add_term({0, 0, Trig::Cos}, -at_zero);
  return out;
}

PiPolynomial QuasiTrigPoly::at_pi_multiple(int n) const {
  PiPolynomial out;
  for (const auto& [k, c] : t_) {
    if (k.kind == Trig::Sin) continue;
    bool odd = ((static_cast<long>(k.j) * n) % 2) != 0;
    ExactScalar v = odd ? -c : c;
    v *= pow(ExactScalar(n), static_cast<unsigned>(k.m));
    out += PiPolynomial::pi_power(k.m, v);
  }
  return out;
}

QuasiTrigPoly QuasiTrigPoly::shift_by_pi() const {
  QuasiTrigPoly out;
  for (const auto& [k, c] : t_) {
    if (k.m != 0) throw InvalidArgument("shift_by_pi needs a purely trigonometric polynomial");
    out.add_term(k, k.j % 2 == 0 ? c : -c);
  }
  return out;
}

double QuasiTrigPoly::evaluate(double theta) const {
  double acc = 0.0;
  for (const auto& [k, c] : t_) {
    double f = k.kind == Trig::Cos ? std::cos(k.j * theta) : std::sin(k.j * theta);
    acc += c.to_double() * std::pow(theta, k.m) * f;
  }
  return acc;
}

std::string QuasiTrigPoly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (k.m > 0) os << "*t^" << k.m;
    if (k.j > 0) os << "*" << (k.kind == Trig::Cos ? "cos(" : "sin(") << k.j << "t)";
  }
  return os.str();
}

}  // namespace pwk::algebra
