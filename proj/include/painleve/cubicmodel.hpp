#ifndef PAINLEVE_CUBICMODEL_HPP
#define PAINLEVE_CUBICMODEL_HPP

// Cubic model: orthogonality weight exp(-N V(s; t)) with V(s; t) = -s^3/3 + s t on the
// contour chain Gamma = alpha_0 L_0 + alpha_1 L_1 + alpha_2 L_2 (L_j the ray of angle
// (-1 + 2j/3) pi, oriented towards the origin).
//
// Moments have the closed Airy form
//   m_k(t) = 2^{k/3} N^{-(k+1)/3} phi^{(k)}(z),   z = -(sqrt(2) N)^{2/3} t,
// with the same seed phi as the tau functions, (C1, C2) = ((alpha_1 - alpha_2) pi i, alpha_0 pi).
// Consequently D_n(t) = 2^{n(n+1)/3} N^{-(n+1)^2/3} tau_{n+1}(z).

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "painleve/airy.hpp"
#include "painleve/hankel.hpp"
#include "painleve/scaled.hpp"
#include "painleve/taufun.hpp"

namespace painleve {

template <class Real = double>
struct ContourWeights {
  ExtendedComplex<Real> lambda{};
  Complex<Real> alpha0, alpha1, alpha2;

  static ContourWeights from_lambda(ExtendedComplex<Real> lam) {
    const Real pi = detail::pi_value<Real>();
    ContourWeights w;
    w.lambda = lam;
    if (lam.infinite) {
      w.alpha0 = Real(1) / pi;
      w.alpha1 = Real(-1) / (Real(2) * pi);
      w.alpha2 = Real(-1) / (Real(2) * pi);
    } else {
      const Complex<Real> i(0, 1);
      w.alpha0 = lam.value / pi;
      w.alpha1 = -lam.value / (Real(2) * pi) + Real(1) / (Real(2) * pi * i);
      w.alpha2 = -lam.value / (Real(2) * pi) - Real(1) / (Real(2) * pi * i);
    }
    return w;
  }
  static ContourWeights from_lambda(Complex<Real> lam) { return from_lambda(ExtendedComplex<Real>{lam, false}); }

  /// Seed weights (C1, C2) = ((alpha_1 - alpha_2) pi i, alpha_0 pi).
  SeedWeights<Real> seed() const {
    const Real pi = detail::pi_value<Real>();
    SeedWeights<Real> s;
    s.c1 = (alpha1 - alpha2) * pi * Complex<Real>(0, 1);
    s.c2 = alpha0 * pi;
    s.lambda = lambda;
    return s;
  }
};

/// kappa = (sqrt(2) N)^{2/3}; z = -kappa t.
template <class Real = double>
Real t_to_z_scale(Real bigN) {
  using std::cbrt;
  using std::sqrt;
  const Real a = sqrt(Real(2)) * bigN;
  return cbrt(a * a);
}

template <class Real = double>
struct MomentTable {
  Complex<Real> t{0};
  Real bigN{1};
  ContourWeights<Real> weights{};
  std::vector<Scaled<Real>> m;
  // Same moments as plain complex numbers times exp(log_scale).
  std::vector<Complex<Real>> raw;
  Real log_scale{0};
};

template <class Real = double>
MomentTable<Real> moments(const Complex<Real>& t, Real bigN, const ContourWeights<Real>& weights, std::size_t count) {
  using std::pow;
  if (!(bigN > Real(0))) throw std::invalid_argument("moments: N must be positive");
  if (count < 1) throw std::invalid_argument("moments: count must be >= 1");
  const Complex<Real> z = -t_to_z_scale(bigN) * t;
  const ComplexJet<Real> jet = seed_jet(z, weights.seed(), std::max<std::size_t>(count - 1, 1));
  MomentTable<Real> out;
  out.t = t;
  out.bigN = bigN;
  out.weights = weights;
  out.log_scale = jet.log_scale;
  out.raw.resize(count);
  out.m.resize(count);
  const ComplexJet<Real> unit{jet.center, {Complex<Real>(1)}, jet.log_scale};
  const Scaled<Real> common = unit.scaled(0);
  for (std::size_t k = 0; k < count; ++k) {
    const Real c = pow(Real(2), Real(k) / Real(3)) * pow(bigN, -Real(k + 1) / Real(3));
    out.raw[k] = c * jet.values[k];
    out.m[k] = Scaled<Real>(out.raw[k]) * common;
  }
  return out;
}

/// D_n(t) and its first `max_derivative` t-derivatives (D_{-1} = 1).
template <class Real = double>
struct DEval {
  long n = -1;
  Complex<Real> t{0};
  std::array<Scaled<Real>, 3> d{Scaled<Real>(Complex<Real>(1)), Scaled<Real>(), Scaled<Real>()};
  bool precision_warning = false;
  const Scaled<Real>& value() const { return d[0]; }
};

template <class Real = double>
DEval<Real> hankel_D(long n, const Complex<Real>& t, Real bigN, const ContourWeights<Real>& weights,
                     std::size_t max_derivative = 2) {
  if (n < -1) throw std::invalid_argument("hankel_D: n must be >= -1");
  if (max_derivative > 2) throw std::invalid_argument("hankel_D: derivative order > 2");
  if (n + 1 > static_cast<long>(kDefaultMaxN) + 1) throw CapacityError("hankel_D: n exceeds n_max");
  DEval<Real> out;
  out.n = n;
  out.t = t;
  if (n == -1) return out;
  const auto size = static_cast<std::size_t>(n + 1);
  const MomentTable<Real> mt = moments(t, bigN, weights, 2 * size - 1 + max_derivative);
  const HankelJet<Real> h = hankel_jet<Real>(size, mt.raw, mt.log_scale, max_derivative, Complex<Real>(-bigN));
  for (std::size_t k = 0; k <= max_derivative; ++k) out.d[k] = h.d[k];
  out.precision_warning = h.precision_warning;
  return out;
}

/// beta_n, gamma_n^2 and the subleading coefficient p_{n,n-1} of P_n.
template <class Real = double>
struct RecurrenceCoeffs {
  long n = 0;
  Complex<Real> beta, gamma2, p_sub;
};

/// Degeneration (a vanishing D) is reported as a PoleSignal whose index is the witness determinant.
template <class Real = double>
Outcome<RecurrenceCoeffs<Real>, Real> recurrence_coeffs(long n, const Complex<Real>& t, Real bigN,
                                                        const ContourWeights<Real>& weights) {
  if (n < 0) throw std::invalid_argument("recurrence_coeffs: n must be >= 0");
  const DEval<Real> dn = hankel_D(n, t, bigN, weights, 1);
  const DEval<Real> dn1 = hankel_D(n - 1, t, bigN, weights, 1);
  if (dn.value().is_zero()) return PoleSignal<Real>{t, static_cast<std::size_t>(n)};
  if (dn1.value().is_zero()) return PoleSignal<Real>{t, static_cast<std::size_t>(n - 1)};
  RecurrenceCoeffs<Real> r;
  r.n = n;
  const Complex<Real> ldn = ratio(dn.d[1], dn.d[0]);
  const Complex<Real> ldn1 = ratio(dn1.d[1], dn1.d[0]);
  r.p_sub = ldn1 / bigN;
  r.beta = (ldn1 - ldn) / bigN;
  if (n >= 1) {
    const DEval<Real> dn2 = hankel_D(n - 2, t, bigN, weights, 0);
    r.gamma2 = ratio(dn.d[0] * dn2.d[0], dn1.d[0] * dn1.d[0]);
  } else {
    r.gamma2 = Complex<Real>(0);
  }
  return r;
}

/// Coefficients c_0..c_n (ascending, c_n = 1) of the monic orthogonal polynomial P_n.
template <class Real = double>
Outcome<std::vector<Complex<Real>>, Real> orthopoly(std::size_t n, const Complex<Real>& t, Real bigN,
                                                    const ContourWeights<Real>& weights) {
  using std::abs;
  std::vector<Complex<Real>> c(n + 1, Complex<Real>(0));
  c[n] = Complex<Real>(1);
  if (n == 0) return c;
  const MomentTable<Real> mt = moments(t, bigN, weights, 2 * n);
  // Solve sum_j c_j m_{k+j} = -m_{k+n}, k < n, by Gaussian elimination with partial pivoting.
  std::vector<Complex<Real>> a(n * (n + 1));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) a[k * (n + 1) + j] = mt.raw[k + j];
    a[k * (n + 1) + n] = -mt.raw[k + n];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a[r * (n + 1) + col]) > abs(a[piv * (n + 1) + col])) piv = r;
    if (a[piv * (n + 1) + col] == Complex<Real>(0)) return PoleSignal<Real>{t, n - 1};
    if (piv != col)
      for (std::size_t j = 0; j <= n; ++j) std::swap(a[piv * (n + 1) + j], a[col * (n + 1) + j]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex<Real> f = a[r * (n + 1) + col] / a[col * (n + 1) + col];
      for (std::size_t j = col; j <= n; ++j) a[r * (n + 1) + j] -= f * a[col * (n + 1) + j];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex<Real> s = a[i * (n + 1) + n];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * (n + 1) + j] * c[j];
    c[i] = s / a[i * (n + 1) + i];
  }
  return c;
}

/// The three identities linking the cubic model at t = -z / kappa to Painleve quantities at z.
template <class Real = double>
struct BridgeValues {
  std::size_t n = 0;
  Complex<Real> z, t;
  Complex<Real> beta_lhs, beta_rhs;      // beta_{n-1}(t)  vs  -(2/N)^{1/3} q_n(z)
  Complex<Real> gamma2_lhs, gamma2_rhs;  // gamma_n^2(t)   vs  -(1/2)(2/N)^{2/3} p_n(z)
  Complex<Real> psub_lhs, psub_rhs;      // p_{n,n-1}(t)   vs  -(2/N)^{1/3} sigma_n(z)

  Real max_relative_error() const {
    using std::abs;
    auto rel = [](const Complex<Real>& a, const Complex<Real>& b) { return abs(a - b) / abs(b); };
    return std::max({rel(beta_lhs, beta_rhs), rel(gamma2_lhs, gamma2_rhs), rel(psub_lhs, psub_rhs)});
  }
};

template <class Real = double>
Outcome<BridgeValues<Real>, Real> bridge(std::size_t n, const Complex<Real>& z, Real bigN,
                                         const ContourWeights<Real>& weights) {
  using std::cbrt;
  if (n < 1) throw std::invalid_argument("bridge: n must be >= 1");
  BridgeValues<Real> b;
  b.n = n;
  b.z = z;
  b.t = -z / t_to_z_scale(bigN);
  const auto tri = painleve_triple(n, z, weights.seed());
  if (!tri) return tri.pole();
  const auto below = recurrence_coeffs(static_cast<long>(n) - 1, b.t, bigN, weights);
  if (!below) return below.pole();
  const auto at = recurrence_coeffs(static_cast<long>(n), b.t, bigN, weights);
  if (!at) return at.pole();
  const Real c = cbrt(Real(2) / bigN);
  b.beta_lhs = below->beta;
  b.beta_rhs = -c * tri->q;
  b.gamma2_lhs = at->gamma2;
  b.gamma2_rhs = -Real(0.5) * c * c * tri->p;
  b.psub_lhs = at->p_sub;
  b.psub_rhs = -c * tri->sigma;
  return b;
}

/// D_n(-t) N^{(n+1)^2/3} / 2^{n(n+1)/3} and tau_{n+1}(kappa t), as a pair of scaled values.
template <class Real = double>
std::pair<Scaled<Real>, Scaled<Real>> d_tau_pair(std::size_t n, const Complex<Real>& t, Real bigN,
                                                 const ContourWeights<Real>& weights, Real n_exponent) {
  using std::pow;
  const DEval<Real> d = hankel_D(static_cast<long>(n), Complex<Real>(-t), bigN, weights, 0);
  const Real nn = Real(n);
  const Real factor = pow(bigN, n_exponent) / pow(Real(2), nn * (nn + Real(1)) / Real(3));
  const auto tv = tau(n + 1, Complex<Real>(t_to_z_scale(bigN) * t), weights.seed());
  return {d.value() * Complex<Real>(factor), tv.value};
}

/// Exponent of N in the D-tau scaling identity: (n+1)^2 / 3.
template <class Real = double>
Real d_tau_exponent(std::size_t n) {
  return Real((n + 1) * (n + 1)) / Real(3);
}

/// |D_n'' D_n - D_n'^2 - N^2 D_{n+1} D_{n-1}| relative to the largest term.
template <class Real = double>
Real d_toda_residual(long n, const Complex<Real>& t, Real bigN, const ContourWeights<Real>& weights) {
  using std::pow;
  const DEval<Real> a = hankel_D(n, t, bigN, weights, 2);
  const DEval<Real> up = hankel_D(n + 1, t, bigN, weights, 0);
  const DEval<Real> down = hankel_D(n - 1, t, bigN, weights, 0);
  const Scaled<Real> x = a.d[2] * a.d[0];
  const Scaled<Real> y = a.d[1] * a.d[1];
  const Scaled<Real> w = up.d[0] * down.d[0] * Complex<Real>(bigN * bigN);
  const Scaled<Real> res = x - y - w;
  if (res.is_zero()) return Real(0);
  return pow(Real(10), res.log10_abs() - std::max({x.log10_abs(), y.log10_abs(), w.log10_abs()}));
}

}  // namespace painleve

#endif
