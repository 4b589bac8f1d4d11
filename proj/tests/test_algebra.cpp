#include <random>

#include "doctest.h"
#include "pwk/algebra/pi_polynomial.hpp"
#include "pwk/algebra/poly2.hpp"
#include "pwk/algebra/quasi_trig.hpp"
#include "pwk/algebra/rseries.hpp"
#include "pwk/errors.hpp"
#include "support.hpp"

using namespace pwk;
using namespace pwk::algebra;
using pwk::test::q;

namespace {

QuasiTrigPoly mono(int m, int j, Trig kind, const ExactScalar& c = ExactScalar(1)) {
  return QuasiTrigPoly::monomial(m, j, kind, c);
}

QuasiTrigPoly random_trig(std::mt19937& rng, bool with_theta) {
  std::uniform_int_distribution<int> terms(1, 4), m(0, with_theta ? 2 : 0), j(0, 3), kind(0, 1);
  std::uniform_int_distribution<long> num(-6, 6), den(1, 5);
  QuasiTrigPoly p;
  int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    p += mono(m(rng), j(rng), kind(rng) ? Trig::Sin : Trig::Cos, q(num(rng), den(rng)));
  }
  return p;
}

ExactScalar random_scalar(std::mt19937& rng, long d) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
  return ExactScalar(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)), d);
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("exact scalar arithmetic in Q(sqrt 401)") {
    ExactScalar r = ExactScalar::sqrt(401);
    CHECK(r * r == ExactScalar(401));
    CHECK(r.radicand() == 401);
    CHECK((r - r).is_zero());
    CHECK((r - r).radicand() == 0);
    ExactScalar k1 = (r - ExactScalar(1)) / ExactScalar(5);
    CHECK(k1 == ExactScalar::parse("(sqrt(401)-1)/5"));
    CHECK(k1 * k1.inverse() == ExactScalar(1));
    // 319 sqrt(401) > 4119 since 319^2 * 401 = 40806761 > 4119^2 = 16966161.
    CHECK((ExactScalar(319) * r - ExactScalar(4119)).sign() > 0);
    CHECK((ExactScalar(4119) - ExactScalar(319) * r).sign() < 0);
  }

  TEST_CASE("square-free reduction and parsing") {
    CHECK(ExactScalar::sqrt(8) == ExactScalar(2) * ExactScalar::sqrt(2));
    CHECK(ExactScalar::sqrt(9) == ExactScalar(3));
    CHECK(ExactScalar::parse("3/4") == q(3, 4));
    CHECK(ExactScalar::parse("0.25") == q(1, 4));
    CHECK(ExactScalar::parse("1/2+3/7*sqrt(5)") == q(1, 2) + q(3, 7) * ExactScalar::sqrt(5));
    auto s = ExactScalar::sqrt_of(mpq_class(9, 4));
    REQUIRE(s.has_value());
    CHECK(*s == q(3, 2));
  }

  TEST_CASE("mixing radicands is rejected") {
    CHECK_THROWS_AS(ExactScalar::sqrt(2) + ExactScalar::sqrt(3), FieldMismatch);
    QuasiTrigPoly a(ExactScalar::sqrt(2)), b(ExactScalar::sqrt(3));
    CHECK_THROWS_AS(a * b, FieldMismatch);
  }

  TEST_CASE("zero has no inverse") { CHECK_THROWS(ExactScalar(0).inverse()); }

  TEST_CASE("trig products") {
    auto c = QuasiTrigPoly::cos_theta();
    auto s = QuasiTrigPoly::sin_theta();
    CHECK(c * c == QuasiTrigPoly(q(1, 2)) + mono(0, 2, Trig::Cos, q(1, 2)));
    CHECK(s * c == mono(0, 2, Trig::Sin, q(1, 2)));
    CHECK(mono(1, 1, Trig::Cos) * s == mono(1, 2, Trig::Sin, q(1, 2)));
    CHECK((mono(2, 1, Trig::Cos) * mono(1, 3, Trig::Sin)).theta_degree() == 3);
  }

  TEST_CASE("sin of zero frequency is never stored") {
    CHECK(mono(0, 0, Trig::Sin).is_zero());
    CHECK(mono(2, 0, Trig::Sin, q(5)).is_zero());
    auto s = QuasiTrigPoly::sin_theta();
    CHECK((s - s).is_zero());
  }

  TEST_CASE("antiderivatives vanish at zero") {
    CHECK(mono(0, 2, Trig::Cos).antiderivative() == mono(0, 2, Trig::Sin, q(1, 2)));
    CHECK(QuasiTrigPoly(ExactScalar(1)).antiderivative() == mono(1, 0, Trig::Cos));
    QuasiTrigPoly expect = mono(1, 1, Trig::Sin) + mono(0, 1, Trig::Cos) - QuasiTrigPoly(ExactScalar(1));
    CHECK(mono(1, 1, Trig::Cos).antiderivative() == expect);
  }

  TEST_CASE("evaluation at multiples of pi") {
    CHECK(mono(2, 2, Trig::Cos).at_pi_multiple(1) == PiPolynomial::pi_power(2));
    CHECK(mono(0, 3, Trig::Sin).at_pi_multiple(1).is_zero());
    QuasiTrigPoly p = mono(1, 0, Trig::Cos) + mono(0, 2, Trig::Sin, q(1, 2));
    CHECK(p.at_pi_multiple(2) == PiPolynomial::pi_power(1, ExactScalar(2)));
    CHECK(mono(0, 1, Trig::Cos).at_pi_multiple(1) == PiPolynomial(ExactScalar(-1)));
  }

  TEST_CASE("shift by pi flips odd frequencies") {
    auto c = QuasiTrigPoly::cos_theta();
    CHECK(c.shift_by_pi() == -c);
    CHECK(mono(0, 2, Trig::Sin).shift_by_pi() == mono(0, 2, Trig::Sin));
    CHECK_THROWS(mono(1, 1, Trig::Cos).shift_by_pi());
  }

  TEST_CASE("series inversion") {
    using S = RSeries<ExactScalar>;
    S id = S::identity(4);
    CHECK(id.inverse()[1] == ExactScalar(1));
    CHECK(id.inverse()[2].is_zero());

    S two(3);
    two[1] = ExactScalar(2);
    S half = two.inverse();
    CHECK(half[1] == q(1, 2));
    CHECK(half[2].is_zero());
    CHECK(half[3].is_zero());

    S s(3);
    s[1] = ExactScalar(1);
    s[2] = ExactScalar(1);
    S t = s.inverse();
    CHECK(t[1] == ExactScalar(1));
    CHECK(t[2] == ExactScalar(-1));
    CHECK(t[3] == ExactScalar(2));

    S zero_lead(3);
    zero_lead[2] = ExactScalar(1);
    CHECK_THROWS_AS(zero_lead.inverse(), InvalidArgument);
  }

  TEST_CASE("series order guardrail") {
    CHECK_THROWS_AS(RSeries<ExactScalar>(kMaxOrder + 3), ResourceLimit);
    CHECK_THROWS_AS(RSeries<ExactScalar>(0), ResourceLimit);
  }

  TEST_CASE("pi polynomials") {
    PiPolynomial p({q(1), q(-2)});
    CHECK(p.degree() == 1);
    CHECK((p - p).is_zero());
    CHECK((p * p).coeff(2) == ExactScalar(4));
    CHECK(PiPolynomial::pi_power(1, q(3)).sign() > 0);
    CHECK(p.to_double() == doctest::Approx(1.0 - 2.0 * M_PI));
  }

  TEST_CASE("bivariate polynomials") {
    Poly2 x = Poly2::x(), y = Poly2::y();
    Poly2 p = x * x * y - x * q(3) + Poly2(q(2));
    CHECK(p.total_degree() == 3);
    CHECK(p.dx() == x * y * q(2) - Poly2(q(3)));
    CHECK(p.eval(q(1), q(2)) == ExactScalar(1));
    CHECK(p.homogeneous(1) == x * q(-3));
    CHECK((x * y).divide_by_x() == y);
    CHECK_THROWS(p.divide_by_x());
    CHECK(p.compose(y, x) == y * y * x - y * q(3) + Poly2(q(2)));
    auto r = p.restrict_x(q(1));
    REQUIRE(r.size() == 2);
    CHECK(r[0] == q(-1));
    CHECK(r[1] == q(1));
  }

  TEST_CASE("property: field axioms on random samples") {
    std::mt19937 rng(20261017);
    for (long d : {0L, 2L, 401L}) {
      for (int i = 0; i < 40; ++i) {
        ExactScalar a = random_scalar(rng, d), b = random_scalar(rng, d), c = random_scalar(rng, d);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * a.inverse() == ExactScalar(1));
      }
    }
  }

  TEST_CASE("property: derivative undoes antiderivative") {
    std::mt19937 rng(7);
    for (int i = 0; i < 60; ++i) {
      QuasiTrigPoly p = random_trig(rng, true);
      CHECK(p.antiderivative().derivative() == p);
      CHECK(p.antiderivative().at_pi_multiple(0).is_zero());
    }
  }

  TEST_CASE("property: evaluation is multiplicative") {
    std::mt19937 rng(11);
    for (int i = 0; i < 60; ++i) {
      QuasiTrigPoly a = random_trig(rng, true), b = random_trig(rng, true);
      for (int n : {1, 2}) CHECK((a * b).at_pi_multiple(n) == a.at_pi_multiple(n) * b.at_pi_multiple(n));
    }
  }

  TEST_CASE("property: numeric evaluation agrees with the exact ring") {
    std::mt19937 rng(13);
    for (int i = 0; i < 30; ++i) {
      QuasiTrigPoly a = random_trig(rng, true), b = random_trig(rng, true);
      for (double th : {0.3, 1.7, 4.0}) CHECK((a * b).evaluate(th) == doctest::Approx(a.evaluate(th) * b.evaluate(th)));
    }
  }

  TEST_CASE("property: double inversion is the identity") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    for (int i = 0; i < 25; ++i) {
      RSeries<ExactScalar> s(6);
      s[1] = q(num(rng) == 0 ? 1 : num(rng), den(rng));
      if (s[1].is_zero()) s[1] = ExactScalar(1);
      for (int k = 2; k <= 6; ++k) s[k] = q(num(rng), den(rng));
      auto t = s.inverse();
      auto back = t.inverse();
      for (int k = 1; k <= 6; ++k) CHECK(back[k] == s[k]);
      auto id = s.compose(t);
      CHECK(id[1] == ExactScalar(1));
      for (int k = 2; k <= 6; ++k) CHECK(id[k].is_zero());
    }
  }
}
