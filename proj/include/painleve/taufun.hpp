#ifndef PAINLEVE_TAUFUN_HPP
#define PAINLEVE_TAUFUN_HPP

// Tau functions tau_n(z; lambda) = det[phi^{(j+k)}(z)]_{j,k<n} of the Airy seed, the
// sigma functions sigma_n = tau_n'/tau_n, the Painleve II solutions
// q_n = sigma_{n-1} - sigma_n with momenta p_n = -2 sigma_n', Backlund maps and
// residual checkers for P2, P34, the sigma form and the Hamiltonian system.
//
// All derivatives are exact (Hankel shift rule); nothing here differentiates numerically.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "painleve/airy.hpp"
#include "painleve/hankel.hpp"
#include "painleve/scaled.hpp"

namespace painleve {

inline constexpr std::size_t kDefaultMaxN = 20;

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Evaluation hit a zero of tau_{tau_index}: a pole of the derived quantity.
template <class Real = double>
struct PoleSignal {
  Complex<Real> z;
  std::size_t tau_index = 0;
};

/// Either a value or a pole signal; poles are an expected outcome, not an error.
template <class T, class Real = double>
class Outcome {
 public:
  Outcome(T value) : v_(std::move(value)) {}
  Outcome(PoleSignal<Real> pole) : v_(pole) {}

  bool ok() const { return v_.index() == 0; }
  bool is_pole() const { return v_.index() == 1; }
  explicit operator bool() const { return ok(); }

  const T& value() const {
    if (!ok()) throw std::runtime_error("Outcome: value requested at a pole");
    return std::get<0>(v_);
  }
  const T& operator*() const { return value(); }
  const T* operator->() const { return &value(); }
  const PoleSignal<Real>& pole() const { return std::get<1>(v_); }

 private:
  std::variant<T, PoleSignal<Real>> v_;
};

template <class Real = double>
struct TauEval {
  std::size_t n = 0;
  Complex<Real> z{0};
  Scaled<Real> value{Complex<Real>(1)};
  std::array<Scaled<Real>, 4> dvals{};  // tau^{(1..4)}
  bool precision_warning = false;

  const Complex<Real>& mantissa() const { return value.mantissa(); }
  std::int64_t exp10() const { return value.exp10(); }
  /// k-th derivative, k = 0..4.
  const Scaled<Real>& derivative(std::size_t k) const { return k == 0 ? value : dvals.at(k - 1); }
};

/// tau_n from a seed jet of order >= 2n - 2 + max_derivative; derivatives above max_derivative stay zero.
template <class Real = double>
TauEval<Real> tau_from_jet(std::size_t n, const ComplexJet<Real>& jet, std::size_t max_derivative = 4) {
  TauEval<Real> out;
  out.n = n;
  out.z = jet.center;
  if (n == 0) return out;
  const HankelJet<Real> h = hankel_jet<Real>(n, jet.values, jet.log_scale, max_derivative);
  out.value = h.d[0];
  for (std::size_t k = 1; k <= max_derivative; ++k) out.dvals[k - 1] = h.d[k];
  out.precision_warning = h.precision_warning;
  return out;
}

template <class Real = double>
TauEval<Real> tau(std::size_t n, const Complex<Real>& z, const SeedWeights<Real>& weights,
                  std::size_t n_max = kDefaultMaxN) {
  if (n > n_max) throw CapacityError("tau: n = " + std::to_string(n) + " exceeds n_max = " + std::to_string(n_max));
  if (n == 0) {
    TauEval<Real> out;
    out.z = z;
    return out;
  }
  return tau_from_jet(n, seed_jet(z, weights, 2 * n + 2), 4);
}

/// tau_n and its first `max_derivative` derivatives through a seed cache.
template <class Real = double>
TauEval<Real> tau(std::size_t n, const Complex<Real>& z, SeedCache<Real>& cache, std::size_t max_derivative = 4,
                  std::size_t n_max = kDefaultMaxN) {
  if (n > n_max) throw CapacityError("tau: n = " + std::to_string(n) + " exceeds n_max = " + std::to_string(n_max));
  if (n == 0) {
    TauEval<Real> out;
    out.z = z;
    return out;
  }
  return tau_from_jet(n, cache.jet(z, 2 * n - 2 + std::max<std::size_t>(max_derivative, 1)), max_derivative);
}

/// (sigma, sigma', sigma'', sigma''') of sigma = tau'/tau.
template <class Real = double>
struct SigmaJet {
  std::array<Complex<Real>, 4> s{};
  const Complex<Real>& operator[](std::size_t k) const { return s[k]; }
};

/// Logarithmic-derivative algebra on a tau jet; pole signal where tau vanishes.
template <class Real = double>
Outcome<SigmaJet<Real>, Real> sigma_from_tau(const TauEval<Real>& t) {
  using std::isfinite;
  SigmaJet<Real> out;
  if (t.n == 0) return out;
  if (t.value.is_zero()) return PoleSignal<Real>{t.z, t.n};
  std::array<Complex<Real>, 5> r{};
  for (std::size_t k = 1; k <= 4; ++k) {
    r[k] = ratio(t.dvals[k - 1], t.value);
    if (!isfinite(r[k].real()) || !isfinite(r[k].imag())) return PoleSignal<Real>{t.z, t.n};
  }
  const Complex<Real> r1 = r[1], r2 = r[2], r3 = r[3], r4 = r[4];
  out.s[0] = r1;
  out.s[1] = r2 - r1 * r1;
  out.s[2] = r3 - Real(3) * r1 * r2 + Real(2) * r1 * r1 * r1;
  out.s[3] = r4 - Real(4) * r1 * r3 - Real(3) * r2 * r2 + Real(12) * r1 * r1 * r2 - Real(6) * r1 * r1 * r1 * r1;
  return out;
}

template <class Real = double>
Outcome<SigmaJet<Real>, Real> sigma(std::size_t n, const Complex<Real>& z, const SeedWeights<Real>& weights) {
  return sigma_from_tau(tau(n, z, weights));
}

template <class Real = double>
struct PainleveTriple {
  std::size_t n = 0;
  Complex<Real> z, q, p, sigma, dq, dsigma, d2sigma;
  // Higher jets, used by the residual checkers.
  Complex<Real> d2q, dp, d2p, d3sigma;
};

template <class Real = double>
Outcome<PainleveTriple<Real>, Real> triple_from_taus(const TauEval<Real>& below, const TauEval<Real>& at) {
  const auto sb = sigma_from_tau(below);
  if (!sb) return sb.pole();
  const auto sa = sigma_from_tau(at);
  if (!sa) return sa.pole();
  PainleveTriple<Real> t;
  t.n = at.n;
  t.z = at.z;
  t.q = (*sb)[0] - (*sa)[0];
  t.dq = (*sb)[1] - (*sa)[1];
  t.d2q = (*sb)[2] - (*sa)[2];
  t.sigma = (*sa)[0];
  t.dsigma = (*sa)[1];
  t.d2sigma = (*sa)[2];
  t.d3sigma = (*sa)[3];
  t.p = Real(-2) * t.dsigma;
  t.dp = Real(-2) * t.d2sigma;
  t.d2p = Real(-2) * t.d3sigma;
  return t;
}

/// q_n, p_n, sigma_n and their jets for n >= 1.
template <class Real = double>
Outcome<PainleveTriple<Real>, Real> painleve_triple(std::size_t n, const Complex<Real>& z,
                                                    const SeedWeights<Real>& weights) {
  if (n < 1) throw std::invalid_argument("painleve_triple: n must be >= 1");
  return triple_from_taus(tau(n - 1, z, weights), tau(n, z, weights));
}

template <class Real = double>
Outcome<PainleveTriple<Real>, Real> painleve_triple(std::size_t n, const Complex<Real>& z, SeedCache<Real>& cache) {
  if (n < 1) throw std::invalid_argument("painleve_triple: n must be >= 1");
  return triple_from_taus(tau(n - 1, z, cache, 4), tau(n, z, cache, 4));
}

/// q_n for any integer n, using q_n = -q_{1-n} for n <= 0.
template <class Real = double>
Outcome<Complex<Real>, Real> q_value(long n, const Complex<Real>& z, const SeedWeights<Real>& weights) {
  const bool mirrored = n <= 0;
  const auto m = static_cast<std::size_t>(mirrored ? 1 - n : n);
  const auto t = painleve_triple(m, z, weights);
  if (!t) return t.pole();
  return mirrored ? Complex<Real>(-t->q) : t->q;
}

/// q_{n+1} from (q_n, q_n') at z.
template <class Real = double>
Outcome<Complex<Real>, Real> backlund_forward(const Complex<Real>& q, const Complex<Real>& dq, const Complex<Real>& z,
                                              std::size_t n) {
  const Complex<Real> den = Real(2) * q * q + Real(2) * dq + z;
  if (den == Complex<Real>(0)) return PoleSignal<Real>{z, n + 1};
  return Complex<Real>(-q - Real(2 * n) / den);
}

/// q_{m-1} from (q_m, q_m') at z.
template <class Real = double>
Outcome<Complex<Real>, Real> backlund_inverse(const Complex<Real>& q, const Complex<Real>& dq, const Complex<Real>& z,
                                              std::size_t m) {
  const Complex<Real> den = Real(2) * dq - Real(2) * q * q - z;
  if (den == Complex<Real>(0)) return PoleSignal<Real>{z, m - 1};
  return Complex<Real>(-q + Real(2) * (Real(m) - Real(1)) / den);
}

template <class Real = double>
struct Residuals {
  Complex<Real> p2, p34, s2, ham1, ham2;
};

template <class Real = double>
Residuals<Real> residuals_from_triple(const PainleveTriple<Real>& t) {
  const Real n = Real(t.n);
  const Complex<Real>& z = t.z;
  Residuals<Real> r;
  r.p2 = t.d2q - Real(2) * t.q * t.q * t.q - z * t.q - (n - Real(0.5));
  r.p34 = t.d2p - (t.dp * t.dp - n * n) / (Real(2) * t.p) - Real(2) * t.p * t.p + z * t.p;
  r.s2 = t.d2sigma * t.d2sigma + Real(4) * t.dsigma * t.dsigma * t.dsigma +
         Real(2) * t.dsigma * (z * t.dsigma - t.sigma) - (n / Real(2)) * (n / Real(2));
  r.ham1 = t.dq - t.p + t.q * t.q + z / Real(2);
  r.ham2 = t.dp - Real(2) * t.p * t.q - n;
  return r;
}

/// Magnitude of the largest term in each residual, for relative comparisons.
template <class Real = double>
std::array<Real, 5> residual_scales(const PainleveTriple<Real>& t) {
  using std::abs;
  const Real n = Real(t.n);
  const Real az = abs(t.z);
  const Real q = abs(t.q), p = abs(t.p), s1 = abs(t.dsigma);
  return {std::max({abs(t.d2q), Real(2) * q * q * q, az * q, abs(n - Real(0.5))}),
          std::max({abs(t.d2p), abs(t.dp * t.dp - n * n) / (Real(2) * p), Real(2) * p * p, az * p}),
          std::max({abs(t.d2sigma * t.d2sigma), Real(4) * s1 * s1 * s1, Real(2) * s1 * abs(t.z * t.dsigma - t.sigma),
                    n * n / Real(4)}),
          std::max({abs(t.dq), p, q * q, az / Real(2)}),
          std::max({abs(t.dp), Real(2) * p * q, n})};
}

template <class Real = double>
Outcome<Residuals<Real>, Real> residuals(std::size_t n, const Complex<Real>& z, const SeedWeights<Real>& weights) {
  const auto t = painleve_triple(n, z, weights);
  if (!t) return t.pole();
  return residuals_from_triple(*t);
}

/// q_1' - q_1^2 - z/2.
template <class Real = double>
Outcome<Complex<Real>, Real> riccati_residual(const Complex<Real>& z, const SeedWeights<Real>& weights) {
  const auto t = painleve_triple<Real>(1, z, weights);
  if (!t) return t.pole();
  return Complex<Real>(t->dq - t->q * t->q - z / Real(2));
}

/// |tau_n tau_n'' - tau_n'^2 - tau_{n+1} tau_{n-1}| relative to the largest of the three products.
template <class Real = double>
Real toda_residual(std::size_t n, const Complex<Real>& z, const SeedWeights<Real>& weights) {
  if (n < 1) throw std::invalid_argument("toda_residual: n must be >= 1");
  const auto a = tau(n, z, weights);
  const auto up = tau(n + 1, z, weights);
  const auto down = tau(n - 1, z, weights);
  const Scaled<Real> lhs1 = a.value * a.dvals[1];
  const Scaled<Real> lhs2 = a.dvals[0] * a.dvals[0];
  const Scaled<Real> rhs = up.value * down.value;
  const Scaled<Real> res = lhs1 - lhs2 - rhs;
  Real scale = std::max({lhs1.log10_abs(), lhs2.log10_abs(), rhs.log10_abs()});
  using std::pow;
  if (res.is_zero()) return Real(0);
  return pow(Real(10), res.log10_abs() - scale);
}

}  // namespace painleve

#endif
