#include "pwk/algebra/exact_scalar.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "pwk/errors.hpp"

namespace pwk::algebra {

namespace {

constexpr unsigned long kTrialBound = 200000;

// n = s^2 * r with r square-free, provided the cofactor can be certified.
std::optional<std::pair<mpz_class, mpz_class>> split_square(mpz_class n) {
  mpz_class s = 1;
  mpz_class r = 1;
  for (unsigned long p = 2; p <= kTrialBound; ++p) {
    if (mpz_class(p) * p > n) break;
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) s *= p;
    if (e % 2 == 1) r *= p;
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      s *= sqrt(n);
    } else if (n < mpz_class(kTrialBound) * kTrialBound) {
      r *= n;
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(s, r);
}

class Parser {
 public:
  explicit Parser(std::string_view t) : t_(t) {}

  ExactScalar run() {
    ExactScalar v = expr();
    skip();
    if (i_ != t_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidArgument("cannot parse scalar '" + std::string(t_) + "': " + why);
  }
  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < t_.size() && t_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  ExactScalar expr() {
    ExactScalar v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }
  ExactScalar term() {
    ExactScalar v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        ExactScalar den = factor();
        if (den.is_zero()) fail("division by zero");
        v /= den;
      } else {
        return v;
      }
    }
  }
  ExactScalar factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    if (eat('(')) {
      ExactScalar v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    skip();
    if (t_.substr(i_, 4) == "sqrt") {
      i_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      ExactScalar arg = expr();
      if (!eat(')')) fail("missing ')'");
      if (!arg.is_rational()) fail("nested radical");
      auto r = ExactScalar::sqrt_of(arg.rational_part());
      if (!r) fail("sqrt of negative or uncertifiable radicand");
      return *r;
    }
    return number();
  }
  ExactScalar number() {
    skip();
    std::size_t start = i_;
    while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
    std::string whole(t_.substr(start, i_ - start));
    std::string frac;
    if (i_ < t_.size() && t_[i_] == '.') {
      ++i_;
      std::size_t fs = i_;
      while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
      frac = std::string(t_.substr(fs, i_ - fs));
    }
    if (whole.empty() && frac.empty()) fail("expected a number");
    mpz_class num(whole.empty() ? "0" : whole);
    mpz_class den = 1;
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    mpq_class q(num, den);
    q.canonicalize();
    if (i_ < t_.size() && (t_[i_] == 'e' || t_[i_] == 'E')) {
      ++i_;
      int sgn = 1;
      if (i_ < t_.size() && (t_[i_] == '-' || t_[i_] == '+')) sgn = t_[i_++] == '-' ? -1 : 1;
      std::size_t es = i_;
      while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
      if (es == i_) fail("bad exponent");
      long e = std::stol(std::string(t_.substr(es, i_ - es)));
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
      if (sgn > 0) {
        q *= p;
      } else {
        q /= p;
      }
      q.canonicalize();
    }
    return ExactScalar(q);
  }

  std::string_view t_;
  std::size_t i_ = 0;
};

}  // namespace

long common_radicand(long d1, long d2) {
  if (d1 == 0) return d2;
  if (d2 == 0 || d1 == d2) return d1;
  throw FieldMismatch("radicands " + std::to_string(d1) + " and " + std::to_string(d2) +
                      " cannot be combined");
}

ExactScalar::ExactScalar(const mpq_class& a, const mpq_class& b, long d) : a_(a), b_(b), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 0) b_ = 0;
  if (b_ != 0) {
    if (d_ < 0) throw InvalidArgument("negative radicand");
    auto sr = split_square(mpz_class(d_));
    if (!sr) throw InvalidArgument("radicand too large to certify");
    b_ *= sr->first;
    d_ = sr->second.get_si();
  }
  normalize();
}

ExactScalar ExactScalar::rational(long num, long den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return ExactScalar(q);
}

ExactScalar ExactScalar::sqrt(long d) {
  if (d < 0) throw InvalidArgument("sqrt of negative integer");
  return ExactScalar(mpq_class(0), mpq_class(1), d);
}

std::optional<ExactScalar> ExactScalar::sqrt_of(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return ExactScalar();
  mpz_class n = q.get_num() * q.get_den();
  auto sr = split_square(n);
  if (!sr || !sr->second.fits_slong_p()) return std::nullopt;
  mpq_class coef(sr->first, q.get_den());
  return ExactScalar(mpq_class(0), coef, sr->second.get_si());
}

ExactScalar ExactScalar::parse(std::string_view text) { return Parser(text).run(); }

void ExactScalar::normalize() {
  if (b_ == 0 || d_ == 0 || d_ == 1) {
    if (d_ == 1) a_ += b_;
    b_ = 0;
    d_ = 0;
  }
}

long ExactScalar::join_radicand(const ExactScalar& o) const {
  return common_radicand(is_rational() ? 0 : d_, o.is_rational() ? 0 : o.d_);
}

int ExactScalar::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  mpq_class lhs = a_ * a_;
  mpq_class rhs = b_ * b_ * d_;
  return lhs > rhs ? sa : sb;
}

ExactScalar ExactScalar::conjugate() const {
  ExactScalar r = *this;
  r.b_ = -r.b_;
  return r;
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw InvalidArgument("inverse of zero");
  mpq_class norm = a_ * a_ - b_ * b_ * d_;
  ExactScalar r;
  r.a_ = a_ / norm;
  r.b_ = -b_ / norm;
  r.d_ = d_;
  r.normalize();
  return r;
}

double ExactScalar::to_double() const {
  if (is_rational()) return a_.get_d();
  mpf_class root(d_, 256);
  root = ::sqrt(root);
  mpf_class v(a_, 256);
  v += mpf_class(b_, 256) * root;
  return v.get_d();
}

std::string ExactScalar::to_string() const {
  std::ostringstream os;
  if (is_rational()) {
    os << a_;
    return os.str();
  }
  if (a_ != 0) os << a_;
  if (b_ < 0) {
    os << "-";
  } else if (a_ != 0) {
    os << "+";
  }
  mpq_class mag = abs(b_);
  if (mag != 1) os << mag << "*";
  os << "sqrt(" << d_ << ")";
  return os.str();
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  long d = join_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  d_ = d;
  normalize();
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  long d = join_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  d_ = d;
  normalize();
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  long d = join_radicand(o);
  if (d == 0) {
    a_ *= o.a_;
  } else {
    mpq_class na = a_ * o.a_ + b_ * o.b_ * d;
    mpq_class nb = a_ * o.b_ + b_ * o.a_;
    a_ = na;
    b_ = nb;
  }
  d_ = d;
  normalize();
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.is_rational()) {
    if (o.a_ == 0) throw InvalidArgument("division by zero");
    a_ /= o.a_;
    b_ /= o.a_;
    normalize();
    return *this;
  }
  return *this *= o.inverse();
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

bool operator==(const ExactScalar& l, const ExactScalar& r) {
  if (l.is_rational() && r.is_rational()) return l.a_ == r.a_;
  return l.a_ == r.a_ && l.b_ == r.b_ && l.d_ == r.d_;
}

ExactScalar pow(const ExactScalar& x, unsigned n) {
  ExactScalar result(1);
  ExactScalar base = x;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.to_string(); }

}  // namespace pwk::algebra
