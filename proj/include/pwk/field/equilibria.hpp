#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "pwk/field/vector_field.hpp"

namespace pwk::field {

enum class EquilibriumKind {
  Saddle,
  StableNode,
  UnstableNode,
  StableFocus,
  UnstableFocus,
  CenterCandidate,
  Degenerate,
};

std::string to_string(EquilibriumKind k);

struct Equilibrium {
  double x = 0.0;
  double y = 0.0;
  std::optional<Point> exact;  // set when closed-form coordinates exist
  std::complex<double> lambda1;
  std::complex<double> lambda2;
  EquilibriumKind kind = EquilibriumKind::Degenerate;
};

/// Real root of a univariate polynomial, exact when it lies in the coefficient field.
struct RealRoot {
  double value = 0.0;
  std::optional<ExactScalar> exact;
};

/// Coefficients lowest degree first. The zero polynomial yields no roots.
std::vector<RealRoot> real_roots(std::vector<ExactScalar> coeffs);

/// All isolated equilibria, sorted by (x, y).
std::vector<Equilibrium> equilibria(const PolyVectorField& field);

/// Type from the Jacobian at a point.
EquilibriumKind classify(const Jacobian& j);

}  // namespace pwk::field
