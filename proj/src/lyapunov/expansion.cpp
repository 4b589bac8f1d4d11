#include "pwk/lyapunov/expansion.hpp"

#include <cmath>
#include <map>

#include "pwk/errors.hpp"

namespace pwk::lyap {

namespace {

using algebra::RSeries;

QuasiTrigPoly trig_of_homogeneous(const Poly2& h, std::map<std::pair<int, int>, QuasiTrigPoly>& cache) {
  QuasiTrigPoly out;
  for (const auto& [e, c] : h.terms()) {
    auto it = cache.find(e);
    if (it == cache.end()) it = cache.emplace(e, QuasiTrigPoly::cos_sin_power(e.first, e.second)).first;
    out += it->second * c;
  }
  return out;
}

void check_order(int K) {
  if (K < 2) throw InvalidArgument("truncation order must be at least 2");
  if (K > algebra::kMaxOrder) {
    throw ResourceLimit("truncation order " + std::to_string(K) + " exceeds the limit " +
                        std::to_string(algebra::kMaxOrder));
  }
}

RSeries<PiPolynomial> half_map_series(const std::vector<QuasiTrigPoly>& S, int K) {
  auto u = radial_coefficients(S, K);
  RSeries<PiPolynomial> out(K);
  for (int k = 1; k <= K; ++k) out[k] = u[static_cast<std::size_t>(k)].at_pi_multiple(1);
  return out;
}

}  // namespace

std::optional<int> LyapunovExpansion::first_nonzero() const {
  for (int k = 1; k <= order(); ++k) {
    if (!V[static_cast<std::size_t>(k)].is_zero()) return k;
  }
  return std::nullopt;
}

std::vector<QuasiTrigPoly> polar_expansion(const Poly2& F, const Poly2& G, int K) {
  check_order(K);
  std::map<std::pair<int, int>, QuasiTrigPoly> cache;
  const QuasiTrigPoly c = QuasiTrigPoly::cos_theta();
  const QuasiTrigPoly s = QuasiTrigPoly::sin_theta();
  // r' = sum A_k r^k,  theta' = 1 + sum B_k r^(k-1).
  std::vector<QuasiTrigPoly> A(static_cast<std::size_t>(K) + 1), B(static_cast<std::size_t>(K) + 1);
  for (int k = 2; k <= K; ++k) {
    QuasiTrigPoly Xk = trig_of_homogeneous(F.homogeneous(k), cache);
    QuasiTrigPoly Yk = trig_of_homogeneous(G.homogeneous(k), cache);
    A[static_cast<std::size_t>(k)] = c * Xk + s * Yk;
    B[static_cast<std::size_t>(k)] = c * Yk - s * Xk;
  }
  // 1 / (1 + sum B_{j+1} r^j) as a series in r.
  const int N = K - 1;
  std::vector<QuasiTrigPoly> inv(static_cast<std::size_t>(N) + 1);
  inv[0] = QuasiTrigPoly(ExactScalar(1));
  for (int n = 1; n <= N; ++n) {
    QuasiTrigPoly acc;
    for (int j = 1; j <= n; ++j) {
      const auto& b = B[static_cast<std::size_t>(j + 1)];
      if (!b.is_zero()) acc += b * inv[static_cast<std::size_t>(n - j)];
    }
    inv[static_cast<std::size_t>(n)] = -acc;
  }
  std::vector<QuasiTrigPoly> S(static_cast<std::size_t>(K) + 1);
  for (int k = 2; k <= K; ++k) {
    QuasiTrigPoly acc;
    for (int j = 1; j <= k - 1; ++j) {
      const auto& a = A[static_cast<std::size_t>(j + 1)];
      if (!a.is_zero()) acc += a * inv[static_cast<std::size_t>(k - 1 - j)];
    }
    S[static_cast<std::size_t>(k)] = acc;
  }
  return S;
}

std::vector<QuasiTrigPoly> polar_expansion(const NormalFormSystem& nf, int K) {
  if (!nf.tau.is_zero()) throw InvalidArgument("polar expansion needs tau = 0");
  auto [F, G] = nf.counter_clockwise_nonlinear();
  return polar_expansion(F, G, K);
}

std::vector<QuasiTrigPoly> radial_coefficients(const std::vector<QuasiTrigPoly>& S, int K) {
  check_order(K);
  if (static_cast<int>(S.size()) < K + 1) throw InvalidArgument("too few S_k for the requested order");
  std::vector<QuasiTrigPoly> u(static_cast<std::size_t>(K) + 1);
  u[1] = QuasiTrigPoly(ExactScalar(1));
  // pw[j][m] = coefficient of r0^m in r^j.
  std::map<std::pair<int, int>, QuasiTrigPoly> pw;
  auto power = [&](auto&& self, int j, int m) -> const QuasiTrigPoly& {
    auto key = std::make_pair(j, m);
    auto it = pw.find(key);
    if (it != pw.end()) return it->second;
    QuasiTrigPoly acc;
    if (j == 1) {
      acc = u[static_cast<std::size_t>(m)];
    } else {
      for (int i = 1; i <= m - j + 1; ++i) {
        const auto& ui = u[static_cast<std::size_t>(i)];
        if (ui.is_zero()) continue;
        const auto& rest = self(self, j - 1, m - i);
        if (!rest.is_zero()) acc += ui * rest;
      }
    }
    return pw.emplace(key, std::move(acc)).first->second;
  };
  for (int k = 2; k <= K; ++k) {
    QuasiTrigPoly acc;
    for (int j = 2; j <= k; ++j) {
      const auto& sj = S[static_cast<std::size_t>(j)];
      if (sj.is_zero()) continue;
      const auto& pjk = power(power, j, k);
      if (!pjk.is_zero()) acc += sj * pjk;
    }
    u[static_cast<std::size_t>(k)] = acc.antiderivative();
  }
  return u;
}

LyapunovExpansion smooth_lyapunov(const PolyVectorField& field, const Point& p, int K) {
  check_order(K);
  NormalFormSystem nf = normalize_at_weak_focus(field, p);
  auto u = radial_coefficients(polar_expansion(nf, K), K);
  LyapunovExpansion out;
  out.V.resize(static_cast<std::size_t>(K) + 1);
  for (int k = 2; k <= K; ++k) out.V[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k)].at_pi_multiple(2);
  return out;
}

HalfMaps piecewise_half_maps(const field::PiecewiseKolmogorovSystem& sys, const Point& p, int K) {
  check_order(K);
  if (!(p.x == sys.sigma_x())) throw InvalidArgument("monodromic point is not on the separation line");
  NormalFormSystem nf1 = normalize_at_weak_focus(sys.z1(), p);
  NormalFormSystem nf2 = normalize_at_weak_focus(sys.z2(), p);
  if (nf1.b.sign() != nf2.b.sign()) {
    throw InvalidArgument("zones rotate in opposite senses: inconsistent orientation on sigma");
  }
  const bool z1_upper = nf1.left_side_upper;
  const NormalFormSystem& up = z1_upper ? nf1 : nf2;
  const NormalFormSystem& low = z1_upper ? nf2 : nf1;

  auto S_up = polar_expansion(up, K);
  auto S_low = polar_expansion(low, K);
  // The lower zone is run on [pi, 2 pi] from fresh data: shift theta by pi.
  for (auto& s : S_low) s = s.shift_by_pi();

  HalfMaps hm{half_map_series(S_up, K), half_map_series(S_low, K), RSeries<PiPolynomial>(K), z1_upper ? 1 : 2};
  hm.pi2_inv = hm.pi2.inverse();
  return hm;
}

LyapunovExpansion piecewise_lyapunov(const field::PiecewiseKolmogorovSystem& sys, const Point& p, int K) {
  HalfMaps hm = piecewise_half_maps(sys, p, K);
  LyapunovExpansion out;
  out.V.resize(static_cast<std::size_t>(K) + 1);
  for (int k = 1; k <= K; ++k) out.V[static_cast<std::size_t>(k)] = hm.pi1[k] - hm.pi2_inv[k];
  return out;
}

double first_lyapunov_smooth(double tau) { return std::expm1(2.0 * M_PI * tau); }

double first_lyapunov_piecewise(double tau_first, double tau_second) {
  return std::exp(M_PI * tau_first) - std::exp(-M_PI * tau_second);
}

double first_lyapunov_piecewise(const field::PiecewiseKolmogorovSystem& sys, const Point& p) {
  double t1 = linear_tau(sys.z1(), p);
  double t2 = linear_tau(sys.z2(), p);
  bool z1_first = sys.z1().jacobian(p).b.sign() < 0;
  return z1_first ? first_lyapunov_piecewise(t1, t2) : first_lyapunov_piecewise(t2, t1);
}

}  // namespace pwk::lyap
