#pragma once

#include <random>

#include "pwk/algebra/exact_scalar.hpp"
#include "pwk/field/models.hpp"

namespace pwk::test {

using algebra::ExactScalar;

inline ExactScalar q(long a, long b = 1) { return ExactScalar::rational(a, b); }

inline field::Point one_one() { return {ExactScalar(1), ExactScalar(1)}; }

/// Positive rational num/den with num in [1, max_num], den in [1, max_den].
inline ExactScalar random_positive(std::mt19937& rng, long max_num = 9, long max_den = 7) {
  std::uniform_int_distribution<long> num(1, max_num), den(1, max_den);
  long a = num(rng);
  long b = den(rng);
  return q(a, b);
}

/// Rational in (0, 1) with a small denominator, excluding 1/2 unless allowed.
inline ExactScalar random_unit(std::mt19937& rng, bool allow_half = true) {
  std::uniform_int_distribution<long> den(2, 11);
  for (;;) {
    long d = den(rng);
    std::uniform_int_distribution<long> num(1, d - 1);
    ExactScalar v = q(num(rng), d);
    if (allow_half || !(v == q(1, 2))) return v;
  }
}

inline field::ZoneSpec competition(const ExactScalar& k, const ExactScalar& n, const ExactScalar& e,
                                   field::MonodromyKnobs knobs = {}) {
  return {field::ZoneModel::Competition, k, n, e, knobs};
}

inline field::ZoneSpec facilitation(const ExactScalar& k, const ExactScalar& n, const ExactScalar& e,
                                    field::MonodromyKnobs knobs = {}) {
  return {field::ZoneModel::Facilitation, k, n, e, knobs};
}

}  // namespace pwk::test
