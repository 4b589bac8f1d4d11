#include "pwk/algebra/pi_polynomial.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <sstream>

namespace pwk::algebra {

PiPolynomial::PiPolynomial(const ExactScalar& c) {
  if (!c.is_zero()) c_.push_back(c);
}

PiPolynomial::PiPolynomial(std::vector<ExactScalar> coeffs) : c_(std::move(coeffs)) { trim(); }

PiPolynomial PiPolynomial::pi_power(int k, const ExactScalar& c) {
  std::vector<ExactScalar> v(static_cast<std::size_t>(k) + 1);
  v[static_cast<std::size_t>(k)] = c;
  return PiPolynomial(std::move(v));
}

void PiPolynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ExactScalar PiPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return ExactScalar();
  return c_[static_cast<std::size_t>(k)];
}

int PiPolynomial::sign() const {
  int nonzero = 0;
  int s = 0;
  for (const auto& c : c_) {
    if (!c.is_zero()) {
      ++nonzero;
      s = c.sign();
    }
  }
  if (nonzero <= 1) return s;
  // pi is transcendental, so the value is nonzero once some coefficient is.
  using Big = boost::multiprecision::cpp_bin_float_100;
  auto big = [](const mpq_class& q) {
    return Big(q.get_num().get_str()) / Big(q.get_den().get_str());
  };
  const Big pi = boost::math::constants::pi<Big>();
  Big acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    Big c = big(it->rational_part());
    if (!it->is_rational()) c += big(it->radical_part()) * sqrt(Big(it->radicand()));
    acc = acc * pi + c;
  }
  return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

double PiPolynomial::to_double() const {
  const double pi = boost::math::constants::pi<double>();
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * pi + it->to_double();
  return acc;
}

std::string PiPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const ExactScalar& c = c_[k];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool compound = !c.is_rational() && c.rational_part() != 0;
    if (!first) os << " + ";
    first = false;
    if (k == 0) {
      os << cs;
      continue;
    }
    if (c == ExactScalar(1)) {
    } else if (c == ExactScalar(-1)) {
      os << "-";
    } else if (compound) {
      os << "(" << cs << ")*";
    } else {
      os << cs << "*";
    }
    os << "pi";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

PiPolynomial& PiPolynomial::operator+=(const PiPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

PiPolynomial& PiPolynomial::operator-=(const PiPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

PiPolynomial& PiPolynomial::operator*=(const PiPolynomial& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<ExactScalar> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

PiPolynomial& PiPolynomial::operator*=(const ExactScalar& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

PiPolynomial PiPolynomial::operator-() const {
  PiPolynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

}  // namespace pwk::algebra
