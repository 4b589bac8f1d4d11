#pragma once

#include <string>
#include <vector>

#include "pwk/field/vector_field.hpp"

namespace pwk::lyap {

using algebra::ExactScalar;
using algebra::Poly2;

/// H = A x^B y^C is a first integral and W = x^D y^E an integrating factor.
struct DarbouxCertificate {
  Poly2 A;
  ExactScalar B, C, D, E;
};

/// Per-zone certificates whose restrictions to x = 1 are H_i(1, u) = gamma_i * L(u) u^kappa.
struct SigmaCenterCertificate {
  DarbouxCertificate zone1;
  DarbouxCertificate zone2;
  ExactScalar gamma1;
  ExactScalar gamma2;
  std::vector<ExactScalar> hhat_factor;  // L(u), lowest degree first
  ExactScalar hhat_exponent;             // kappa
};

struct DarbouxCheck {
  bool ok = false;
  Poly2 integral_residual;  // A' + A (B f + C g)
  Poly2 factor_residual;    // (D+1) f + x f_x + (E+1) g + y g_y
};

struct SigmaCenterCheck {
  bool ok = false;
  DarbouxCheck zone1;
  DarbouxCheck zone2;
  /// A_i(1, u) - gamma_i L(u), lowest degree first.
  std::vector<ExactScalar> restriction1_residual;
  std::vector<ExactScalar> restriction2_residual;
  bool exponents_match = false;
  std::string failure;
};

/// Competition center under the weak-focus conditions with t = 0, a = 1.
DarbouxCertificate competition_center_certificate(const ExactScalar& k1, const ExactScalar& n1,
                                                  const ExactScalar& e1);
/// Facilitation center; valid when e2 solves hat_v3 = 0.
DarbouxCertificate facilitation_center_certificate(const ExactScalar& k2, const ExactScalar& n2);
/// Piecewise center; valid on hat_v2 = hat_v3 = 0.
SigmaCenterCertificate piecewise_center_certificate(const ExactScalar& k1, const ExactScalar& n1,
                                                    const ExactScalar& k2, const ExactScalar& n2);

/// Rejects non-Kolmogorov fields.
DarbouxCheck verify_darboux(const field::PolyVectorField& field, const DarbouxCertificate& cert);
SigmaCenterCheck verify_sigma_center(const field::PiecewiseKolmogorovSystem& sys,
                                     const SigmaCenterCertificate& cert);

}  // namespace pwk::lyap
