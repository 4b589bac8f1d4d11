#include "pwk/algebra/poly2.hpp"

#include <cmath>
#include <sstream>

#include "pwk/algebra/limits.hpp"
#include "pwk/errors.hpp"

namespace pwk::algebra {

Poly2::Poly2(const ExactScalar& c) {
  if (!c.is_zero()) t_.emplace(Exponent{0, 0}, c);
}

Poly2 Poly2::monomial(int i, int j, const ExactScalar& c) {
  Poly2 p;
  p.add_term(i, j, c);
  return p;
}

ExactScalar Poly2::coeff(int i, int j) const {
  auto it = t_.find({i, j});
  return it == t_.end() ? ExactScalar() : it->second;
}

void Poly2::add_term(int i, int j, const ExactScalar& c) {
  if (c.is_zero()) return;
  if (i < 0 || j < 0) throw InvalidArgument("negative exponent");
  auto [it, inserted] = t_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

int Poly2::total_degree() const {
  int d = t_.empty() ? -1 : 0;
  for (const auto& [e, c] : t_) d = std::max(d, e.first + e.second);
  return d;
}

Poly2 Poly2::homogeneous(int k) const {
  Poly2 r;
  for (const auto& [e, c] : t_) {
    if (e.first + e.second == k) r.t_.emplace(e, c);
  }
  return r;
}

long Poly2::radicand() const {
  long d = 0;
  for (const auto& [e, c] : t_) d = common_radicand(d, c.is_rational() ? 0 : c.radicand());
  return d;
}

Poly2 Poly2::dx() const {
  Poly2 r;
  for (const auto& [e, c] : t_) {
    if (e.first > 0) r.add_term(e.first - 1, e.second, c * ExactScalar(e.first));
  }
  return r;
}

Poly2 Poly2::dy() const {
  Poly2 r;
  for (const auto& [e, c] : t_) {
    if (e.second > 0) r.add_term(e.first, e.second - 1, c * ExactScalar(e.second));
  }
  return r;
}

ExactScalar Poly2::eval(const ExactScalar& x, const ExactScalar& y) const {
  ExactScalar acc;
  for (const auto& [e, c] : t_) {
    acc += c * pow(x, static_cast<unsigned>(e.first)) * pow(y, static_cast<unsigned>(e.second));
  }
  return acc;
}

double Poly2::eval(double x, double y) const {
  double acc = 0.0;
  for (const auto& [e, c] : t_) acc += c.to_double() * std::pow(x, e.first) * std::pow(y, e.second);
  return acc;
}

Poly2 Poly2::compose(const Poly2& xs, const Poly2& ys) const {
  std::map<int, Poly2> xp{{0, Poly2(ExactScalar(1))}};
  std::map<int, Poly2> yp{{0, Poly2(ExactScalar(1))}};
  auto power = [](std::map<int, Poly2>& cache, const Poly2& base, int n) -> const Poly2& {
    for (int k = static_cast<int>(cache.size()); k <= n; ++k) cache[k] = cache[k - 1] * base;
    return cache[n];
  };
  Poly2 out;
  for (const auto& [e, c] : t_) {
    out += power(xp, xs, e.first) * power(yp, ys, e.second) * c;
  }
  return out;
}

std::vector<ExactScalar> Poly2::restrict_x(const ExactScalar& c) const {
  std::vector<ExactScalar> out;
  for (const auto& [e, v] : t_) {
    if (static_cast<int>(out.size()) <= e.second) out.resize(static_cast<std::size_t>(e.second) + 1);
    out[static_cast<std::size_t>(e.second)] += v * pow(c, static_cast<unsigned>(e.first));
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

bool Poly2::divisible_by_x() const {
  for (const auto& [e, c] : t_) {
    if (e.first == 0) return false;
  }
  return true;
}

bool Poly2::divisible_by_y() const {
  for (const auto& [e, c] : t_) {
    if (e.second == 0) return false;
  }
  return true;
}

Poly2 Poly2::divide_by_x() const {
  if (!divisible_by_x()) throw InvalidArgument("polynomial is not divisible by x");
  Poly2 r;
  for (const auto& [e, c] : t_) r.t_.emplace(Exponent{e.first - 1, e.second}, c);
  return r;
}

Poly2 Poly2::divide_by_y() const {
  if (!divisible_by_y()) throw InvalidArgument("polynomial is not divisible by y");
  Poly2 r;
  for (const auto& [e, c] : t_) r.t_.emplace(Exponent{e.first, e.second - 1}, c);
  return r;
}

std::string Poly2::to_string(const char* xv, const char* yv) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    bool bare = e.first == 0 && e.second == 0;
    if (bare || !(c == ExactScalar(1))) {
      os << "(" << c.to_string() << ")";
      if (!bare) os << "*";
    }
    if (e.first > 0) os << xv << (e.first > 1 ? "^" + std::to_string(e.first) : "");
    if (e.first > 0 && e.second > 0) os << "*";
    if (e.second > 0) os << yv << (e.second > 1 ? "^" + std::to_string(e.second) : "");
  }
  return os.str();
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [e, c] : o.t_) add_term(e.first, e.second, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [e, c] : o.t_) add_term(e.first, e.second, -c);
  return *this;
}

Poly2& Poly2::operator*=(const ExactScalar& s) {
  if (s.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [e, c] : t_) c *= s;
  return *this;
}

Poly2 Poly2::operator-() const {
  Poly2 r = *this;
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

Poly2 operator*(const Poly2& l, const Poly2& r) {
  Poly2 out;
  for (const auto& [e1, c1] : l.t_) {
    for (const auto& [e2, c2] : r.t_) out.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
  }
  check_term_count(out.terms().size(), "bivariate product");
  return out;
}

Poly2 pow(const Poly2& p, unsigned n) {
  Poly2 r(ExactScalar(1));
  for (unsigned i = 0; i < n; ++i) r = r * p;
  return r;
}

NumericPoly2::NumericPoly2(const Poly2& p) {
  for (const auto& [e, c] : p.terms()) {
    terms_.push_back({e.first, e.second, c.to_double()});
    max_i_ = std::max(max_i_, e.first);
    max_j_ = std::max(max_j_, e.second);
  }
}

double NumericPoly2::operator()(double x, double y) const {
  double xp[16];
  double yp[16];
  if (max_i_ >= 16 || max_j_ >= 16) {
    double acc = 0.0;
    for (const auto& t : terms_) acc += t.c * std::pow(x, t.i) * std::pow(y, t.j);
    return acc;
  }
  xp[0] = 1.0;
  yp[0] = 1.0;
  for (int k = 1; k <= max_i_; ++k) xp[k] = xp[k - 1] * x;
  for (int k = 1; k <= max_j_; ++k) yp[k] = yp[k - 1] * y;
  double acc = 0.0;
  for (const auto& t : terms_) acc += t.c * xp[t.i] * yp[t.j];
  return acc;
}

}  // namespace pwk::algebra
