#include "pwk/lyapunov/certificates.hpp"

#include "pwk/errors.hpp"

namespace pwk::lyap {

namespace {

ExactScalar q(long a, long b = 1) { return ExactScalar::rational(a, b); }

std::vector<ExactScalar> sub(std::vector<ExactScalar> a, const std::vector<ExactScalar>& b, const ExactScalar& s) {
  if (b.size() > a.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= s * b[i];
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  return a;
}

}  // namespace

DarbouxCertificate competition_center_certificate(const ExactScalar& k1, const ExactScalar& n1,
                                                  const ExactScalar& e1) {
  const ExactScalar c = k1 * n1;
  const ExactScalar m = c * c + e1 * c + q(1);
  DarbouxCertificate cert;
  cert.A = Poly2::x() * (c * m) + Poly2::y() * (e1 * c * (c + e1)) - Poly2((c + e1) * m);
  cert.B = c * m / e1;
  cert.C = c * (c + e1);
  cert.D = (c * c * c + e1 * c * c + c - e1) / e1;
  cert.E = c * c + e1 * c - q(1);
  return cert;
}

DarbouxCertificate facilitation_center_certificate(const ExactScalar& k2, const ExactScalar& n2) {
  const ExactScalar k = k2 * k2;
  const ExactScalar m = n2 * q(2) - q(1);
  const ExactScalar den = (q(8) * n2 * n2 - q(6) * n2 + q(1)) * k + q(2);
  const Poly2 x = Poly2::x();
  DarbouxCertificate cert;
  cert.A = (x * n2 - Poly2(q(1))) * x * (q(2) * den) + Poly2::y() * (k * m * m) + Poly2(q(2) * m * k * n2 + q(2));
  cert.B = q(-2);
  cert.C = -m * k / den;
  cert.D = q(-3);
  cert.E = -q(2) * (q(4) * k * n2 * n2 - q(2) * k * n2 + q(1)) / den;
  return cert;
}

SigmaCenterCertificate piecewise_center_certificate(const ExactScalar& k1, const ExactScalar& n1,
                                                    const ExactScalar& k2, const ExactScalar& n2) {
  const ExactScalar K1 = k1 * k1 * n1 * n1;  // k1^2 n1^2
  const ExactScalar K2 = k2 * k2;
  const ExactScalar m = q(2) * n2 - q(1);
  const ExactScalar s = q(8) * n2 * n2 - q(6) * n2 + q(1);
  const ExactScalar den = s * K2 + q(2);
  const ExactScalar mm = m * m * K2 + q(1);
  const ExactScalar dd = s * K1 * K2 + q(2) * K1 + m * K2;
  const Poly2 x = Poly2::x();
  const Poly2 y = Poly2::y();

  SigmaCenterCertificate c;
  c.zone1.A = x * (q(2) * K1 * mm * den) + y * (K2 * m * dd) + Poly2(q(2) * K2 * m * mm);
  c.zone1.B = -q(2) * K1 * mm / dd;
  c.zone1.C = -m * K2 / den;
  c.zone1.D = -((q(16) * n2 * n2 - q(14) * n2 + q(3)) * K1 * K2 + q(4) * K1 + m * K2) / dd;
  c.zone1.E = -q(2) * (q(2) * m * K2 * n2 + q(1)) / den;

  c.zone2.A = (x * n2 - Poly2(q(1))) * x * den + y * (m * m * K2 * q(1, 2)) + Poly2(m * K2 * n2 + q(1));
  c.zone2.B = q(-2);
  c.zone2.C = (q(1) - q(2) * n2) * K2 / den;
  c.zone2.D = q(-3);
  c.zone2.E = -q(2) * (q(2) * m * K2 * n2 + q(1)) / den;

  // L(u) = 1 + (4 n2 + u - 2)(2 n2 - 1) k2^2 / 2
  c.hhat_factor = {q(1) + (q(4) * n2 - q(2)) * m * K2 * q(1, 2), m * K2 * q(1, 2)};
  c.hhat_exponent = (q(1) - q(2) * n2) * K2 / den;
  c.gamma1 = (q(2) * k1 * k1 * n1 * n1 * (q(4) * n2 - q(1)) * m + q(4) * n2 - q(2)) * K2 + q(4) * K1;
  c.gamma2 = m;
  return c;
}

DarbouxCheck verify_darboux(const field::PolyVectorField& field, const DarbouxCertificate& cert) {
  if (!field.is_kolmogorov()) throw InvalidArgument("Darboux check needs a Kolmogorov field");
  const Poly2 f = field.f();
  const Poly2 g = field.g();
  const Poly2 x = Poly2::x();
  const Poly2 y = Poly2::y();
  DarbouxCheck out;
  Poly2 Adot = cert.A.dx() * field.P() + cert.A.dy() * field.Q();
  out.integral_residual = Adot + cert.A * (f * cert.B + g * cert.C);
  out.factor_residual = f * (cert.D + ExactScalar(1)) + x * f.dx() + g * (cert.E + ExactScalar(1)) + y * g.dy();
  out.ok = out.integral_residual.is_zero() && out.factor_residual.is_zero();
  return out;
}

SigmaCenterCheck verify_sigma_center(const field::PiecewiseKolmogorovSystem& sys,
                                     const SigmaCenterCertificate& cert) {
  SigmaCenterCheck out;
  out.zone1 = verify_darboux(sys.z1(), cert.zone1);
  out.zone2 = verify_darboux(sys.z2(), cert.zone2);
  const ExactScalar& s = sys.sigma_x();
  out.restriction1_residual = sub(cert.zone1.A.restrict_x(s), cert.hhat_factor, cert.gamma1);
  out.restriction2_residual = sub(cert.zone2.A.restrict_x(s), cert.hhat_factor, cert.gamma2);
  out.exponents_match = cert.zone1.C == cert.hhat_exponent && cert.zone2.C == cert.hhat_exponent;
  // x^B contributes s^B, a positive constant absorbed into gamma only when s = 1.
  bool unit_sigma = s == ExactScalar(1);
  if (!out.zone1.ok) {
    out.failure = "zone 1 Darboux identity fails";
  } else if (!out.zone2.ok) {
    out.failure = "zone 2 Darboux identity fails";
  } else if (!unit_sigma) {
    out.failure = "certificate restriction assumes the separation line x = 1";
  } else if (!out.restriction1_residual.empty()) {
    out.failure = "zone 1 restriction is not gamma1 * L(u)";
  } else if (!out.restriction2_residual.empty()) {
    out.failure = "zone 2 restriction is not gamma2 * L(u)";
  } else if (!out.exponents_match) {
    out.failure = "y-exponents differ from the shared exponent of H-hat";
  } else if (cert.gamma1.is_zero() || cert.gamma2.is_zero()) {
    out.failure = "a gamma vanishes";
  }
  out.ok = out.failure.empty();
  return out;
}

}  // namespace pwk::lyap
