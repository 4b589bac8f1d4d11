#pragma once

#include <array>
#include <string>

#include "pwk/field/vector_field.hpp"

namespace pwk::field {

enum class SigmaTag { Crossing, Sliding, Escaping, Tangential };

enum class FoldKind { None, Visible, Invisible, Degenerate };

std::string to_string(SigmaTag t);
std::string to_string(FoldKind f);

/// Classification of a point of {x = sigma_x}, with h(x, y) = x - sigma_x.
struct SigmaPointClass {
  SigmaTag tag = SigmaTag::Crossing;
  ExactScalar z1h;
  ExactScalar z2h;
  /// Fold type per zone; None unless that zone is tangent.
  FoldKind fold1 = FoldKind::None;
  FoldKind fold2 = FoldKind::None;
};

SigmaPointClass classify_sigma_point(const PiecewiseKolmogorovSystem& sys, const ExactScalar& y);

/// Filippov convex combination lambda Z1 + (1 - lambda) Z2 tangent to sigma.
struct SlidingVelocity {
  ExactScalar lambda;
  std::array<ExactScalar, 2> v;
};

SlidingVelocity sliding_vector_field(const PiecewiseKolmogorovSystem& sys, const ExactScalar& y);

/// Same rule on raw field values, for callers that already evaluated Z1, Z2.
SlidingVelocity sliding_combination(const std::array<ExactScalar, 2>& z1, const std::array<ExactScalar, 2>& z2);

}  // namespace pwk::field
