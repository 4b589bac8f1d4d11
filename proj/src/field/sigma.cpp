#include "pwk/field/sigma.hpp"

#include "pwk/errors.hpp"

namespace pwk::field {

namespace {

// A fold of Z1 is invisible when its orbit bends into x > sigma, i.e. (Z1)^2 h > 0; mirrored for Z2.
FoldKind fold_kind(const PolyVectorField& z, const Point& p, int zone) {
  ExactScalar second = z.P().dx().eval(p.x, p.y) * z.P().eval(p.x, p.y) +
                       z.P().dy().eval(p.x, p.y) * z.Q().eval(p.x, p.y);
  int s = second.sign();
  if (s == 0) return FoldKind::Degenerate;
  bool invisible = zone == 1 ? s > 0 : s < 0;
  return invisible ? FoldKind::Invisible : FoldKind::Visible;
}

}  // namespace

std::string to_string(SigmaTag t) {
  switch (t) {
    case SigmaTag::Crossing: return "crossing";
    case SigmaTag::Sliding: return "sliding";
    case SigmaTag::Escaping: return "escaping";
    case SigmaTag::Tangential: return "tangential";
  }
  return "unknown";
}

std::string to_string(FoldKind f) {
  switch (f) {
    case FoldKind::None: return "none";
    case FoldKind::Visible: return "visible fold";
    case FoldKind::Invisible: return "invisible fold";
    case FoldKind::Degenerate: return "degenerate tangency";
  }
  return "unknown";
}

SigmaPointClass classify_sigma_point(const PiecewiseKolmogorovSystem& sys, const ExactScalar& y) {
  const Point p{sys.sigma_x(), y};
  SigmaPointClass c;
  c.z1h = sys.z1().P().eval(p.x, p.y);
  c.z2h = sys.z2().P().eval(p.x, p.y);
  int s1 = c.z1h.sign();
  int s2 = c.z2h.sign();
  if (s1 == 0 || s2 == 0) {
    c.tag = SigmaTag::Tangential;
    if (s1 == 0) c.fold1 = fold_kind(sys.z1(), p, 1);
    if (s2 == 0) c.fold2 = fold_kind(sys.z2(), p, 2);
  } else if (s1 == s2) {
    c.tag = SigmaTag::Crossing;
  } else {
    c.tag = s1 > 0 ? SigmaTag::Sliding : SigmaTag::Escaping;
  }
  return c;
}

SlidingVelocity sliding_combination(const std::array<ExactScalar, 2>& z1, const std::array<ExactScalar, 2>& z2) {
  if (z1[0].sign() * z2[0].sign() >= 0) {
    throw InvalidArgument("sliding vector field requested at a point that is not sliding or escaping");
  }
  SlidingVelocity out;
  out.lambda = z2[0] / (z2[0] - z1[0]);
  ExactScalar mu = ExactScalar(1) - out.lambda;
  out.v = {ExactScalar(), out.lambda * z1[1] + mu * z2[1]};
  return out;
}

SlidingVelocity sliding_vector_field(const PiecewiseKolmogorovSystem& sys, const ExactScalar& y) {
  const Point p{sys.sigma_x(), y};
  return sliding_combination(sys.z1().eval(p), sys.z2().eval(p));
}

}  // namespace pwk::field
