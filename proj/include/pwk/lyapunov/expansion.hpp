#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwk/algebra/pi_polynomial.hpp"
#include "pwk/algebra/quasi_trig.hpp"
#include "pwk/algebra/rseries.hpp"
#include "pwk/lyapunov/normal_form.hpp"

namespace pwk::lyap {

using algebra::PiPolynomial;
using algebra::QuasiTrigPoly;

/// V_1..V_K. Smooth: r(2 pi) - r0 = sum V_k r0^k.
/// Piecewise: Pi2^{-1}(r0) - Pi1(r0) = -sum V_k r0^k. In both, V_j > 0 at the first
/// nonzero index means the focus repels.
struct LyapunovExpansion {
  std::vector<PiPolynomial> V;  // index 0 unused
  int order() const { return static_cast<int>(V.size()) - 1; }
  const PiPolynomial& operator[](int k) const { return V.at(static_cast<std::size_t>(k)); }
  /// First index with V_k != 0, or nullopt when all vanish up to the order.
  std::optional<int> first_nonzero() const;
};

/// S_2..S_K (index k) of dr/dtheta = sum S_k r^k for x' = -y + F, y' = x + G.
std::vector<QuasiTrigPoly> polar_expansion(const Poly2& F, const Poly2& G, int K);
std::vector<QuasiTrigPoly> polar_expansion(const NormalFormSystem& nf, int K);

/// u_1..u_K (index k) of r(theta, r0) = sum u_k(theta) r0^k with u_1 = 1, u_k(0) = 0.
std::vector<QuasiTrigPoly> radial_coefficients(const std::vector<QuasiTrigPoly>& S, int K);

LyapunovExpansion smooth_lyapunov(const PolyVectorField& field, const Point& p, int K);

/// Both zones must have the monodromic point p on the separation line.
LyapunovExpansion piecewise_lyapunov(const field::PiecewiseKolmogorovSystem& sys, const Point& p, int K);

/// Half-return maps as r0-series, for inspection.
struct HalfMaps {
  algebra::RSeries<PiPolynomial> pi1;      // first-passage zone
  algebra::RSeries<PiPolynomial> pi2;      // second zone
  algebra::RSeries<PiPolynomial> pi2_inv;  // compositional inverse of pi2
  int first_zone = 1;
};
HalfMaps piecewise_half_maps(const field::PiecewiseKolmogorovSystem& sys, const Point& p, int K);

/// exp(2 pi tau) - 1.
double first_lyapunov_smooth(double tau);
/// exp(pi tau1) - exp(-pi tau2), tau_i taken in the first-passage order.
double first_lyapunov_piecewise(double tau_first, double tau_second);
/// V_1 of a piecewise system from its linear parts at p; zones in first-passage order.
double first_lyapunov_piecewise(const field::PiecewiseKolmogorovSystem& sys, const Point& p);

}  // namespace pwk::lyap
