#ifndef PAINLEVE_AIRY_HPP
#define PAINLEVE_AIRY_HPP

// Complex Airy functions Ai, Bi and derivative jets of the rescaled Airy seed
//   phi(z) = C1 Ai(-2^{-1/3} z) + C2 Bi(-2^{-1/3} z),   phi'' = -z phi / 2.
//
// Evaluation strategy (all in-repo):
//   * |w| >= R: Poincare asymptotic expansion of Ai for |arg w| <= 2pi/3, and the
//     rotation identity Ai(w) + e^{2pi i/3} Ai(w e^{2pi i/3}) + e^{-2pi i/3} Ai(w e^{-2pi i/3}) = 0
//     elsewhere.
//   * |w| <  R: Taylor re-expansion of y'' = w y along a ray. Where Ai is recessive
//     (|arg w| <= pi/3) the ray is walked inward from the asymptotic value at radius R,
//     elsewhere outward from the Maclaurin data at 0, so Ai is never the decaying
//     solution in the direction of integration.
//   * Bi(w) = e^{i pi/6} Ai(w e^{2pi i/3}) + e^{-i pi/6} Ai(w e^{-2pi i/3}).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <utility>
#include <numbers>
#include <type_traits>
#include <stdexcept>
#include <vector>

#include "painleve/scaled.hpp"

#ifdef PAINLEVE_HAVE_FLOAT128
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>
#endif

namespace painleve {

#ifdef PAINLEVE_HAVE_FLOAT128
using quad = boost::multiprecision::float128;
#endif

template <class Real>
struct AiryTraits;

template <>
struct AiryTraits<double> {
  static constexpr double asymptotic_radius = 9.5;
  static constexpr double step = 0.5;
  static double epsilon() { return 1e-17; }
  static double ai0() { return 0.355028053887817239260063186004183176398; }
  static double aip0() { return -0.2588194037928067984051835601892039634791; }
  static int max_asymptotic_terms() { return 40; }
};

template <>
struct AiryTraits<long double> {
  static constexpr long double asymptotic_radius = 11.0L;
  static constexpr long double step = 0.5L;
  static long double epsilon() { return 1e-20L; }
  static long double ai0() { return 0.355028053887817239260063186004183176398L; }
  static long double aip0() { return -0.2588194037928067984051835601892039634791L; }
  static int max_asymptotic_terms() { return 50; }
};

#ifdef PAINLEVE_HAVE_FLOAT128
template <>
struct AiryTraits<quad> {
  static constexpr double asymptotic_radius = 16.0;
  static constexpr double step = 0.5;
  static quad epsilon() { return quad("1e-36"); }
  static quad ai0() { return quad("0.355028053887817239260063186004183176398"); }
  static quad aip0() { return quad("-0.2588194037928067984051835601892039634791"); }
  static int max_asymptotic_terms() { return 90; }
};
#endif

/// Ai, Ai', Bi, Bi' at one point. All four are multiplied by exp(-log_scale);
/// log_scale is 0 unless the unscaled values would leave the floating-point range.
template <class Real = double>
struct AiryPair {
  Complex<Real> ai, aip, bi, bip;
  Real log_scale{0};
};

/// Point of the Riemann sphere used as the seed ratio lambda = C2 / C1.
template <class Real = double>
struct ExtendedComplex {
  Complex<Real> value{0};
  bool infinite = false;

  static ExtendedComplex infinity() { return {Complex<Real>(0), true}; }
  bool operator==(const ExtendedComplex&) const = default;
};

/// Seed weights (C1, C2): (1, lambda) for finite lambda, (0, 1) at infinity.
template <class Real = double>
struct SeedWeights {
  Complex<Real> c1{1};
  Complex<Real> c2{0};
  ExtendedComplex<Real> lambda{};

  static SeedWeights from_lambda(ExtendedComplex<Real> lam) {
    if (lam.infinite) return {Complex<Real>(0), Complex<Real>(1), lam};
    return {Complex<Real>(1), lam.value, lam};
  }
  static SeedWeights from_lambda(Complex<Real> lam) { return from_lambda(ExtendedComplex<Real>{lam, false}); }
  static SeedWeights at_infinity() { return from_lambda(ExtendedComplex<Real>::infinity()); }
};

/// Values of f and its first `order` derivatives at `center`, times exp(-log_scale).
template <class Real = double>
struct ComplexJet {
  Complex<Real> center{0};
  std::vector<Complex<Real>> values;
  Real log_scale{0};

  std::size_t order() const { return values.empty() ? 0 : values.size() - 1; }
  const Complex<Real>& operator[](std::size_t k) const { return values[k]; }
  Scaled<Real> scaled(std::size_t k) const {
    using std::log;
    const Real ln10 = log(Real(10));
    const Real e10 = log_scale / ln10;
    const auto whole = static_cast<std::int64_t>(std::floor(static_cast<double>(e10)));
    using std::pow;
    return Scaled<Real>(values[k] * pow(Real(10), e10 - Real(whole)), whole);
  }
};

namespace detail {

template <class Real>
Complex<Real> omega() {
  using std::sqrt;
  return {Real(-0.5), sqrt(Real(3)) / Real(2)};
}

template <class Real>
Real pi_value() {
  if constexpr (std::is_floating_point_v<Real>) {
    return std::numbers::pi_v<Real>;
  } else {
#ifdef PAINLEVE_HAVE_FLOAT128
    return boost::math::constants::pi<Real>();
#else
    return Real(std::numbers::pi_v<long double>);
#endif
  }
}

/// One Taylor step of y''(c + s) = (c0 + c1 s) y from s = 0 to s = h.
template <class Real>
void taylor_step_linear(const Complex<Real>& c0, const Complex<Real>& c1, Complex<Real>& y, Complex<Real>& yp,
                        const Complex<Real>& h) {
  using std::abs;
  const Real eps = AiryTraits<Real>::epsilon();
  // Coefficients a_k of y(c + s) = sum a_k s^k satisfy
  // (k+1)(k+2) a_{k+2} = c0 a_k + c1 a_{k-1}.
  Complex<Real> a_km1(0), a_k = y, a_kp1 = yp;
  Complex<Real> hpow = h;  // h^{k+1}
  Complex<Real> sum = y + yp * h, dsum = yp;
  int quiet = 0;
  for (int k = 0; k < 400; ++k) {
    const Complex<Real> a_kp2 = (c0 * a_k + c1 * a_km1) / (Real(k + 1) * Real(k + 2));
    const Complex<Real> dterm = Real(k + 2) * a_kp2 * hpow;
    hpow *= h;
    const Complex<Real> term = a_kp2 * hpow;
    sum += term;
    dsum += dterm;
    const Real scale = std::max(abs(sum), abs(dsum));
    if (abs(term) <= eps * scale && abs(dterm) <= eps * scale) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
    a_km1 = a_k;
    a_k = a_kp1;
    a_kp1 = a_kp2;
  }
  y = sum;
  yp = dsum;
}

/// One Taylor step of y'' = w y from `c` to `c + h`.
template <class Real>
void taylor_step(const Complex<Real>& c, Complex<Real>& y, Complex<Real>& yp, const Complex<Real>& h) {
  taylor_step_linear(c, Complex<Real>(1), y, yp, h);
}

/// Ai(w) = pref * exp(logscale) with the phase of the exponential folded into pref.
template <class Real>
struct AiTerm {
  Complex<Real> ai, aip;
  Real logscale{0};
};

/// Poincare expansion, valid for |arg w| <= 2pi/3 and |w| >= asymptotic_radius.
template <class Real>
AiTerm<Real> ai_asymptotic(const Complex<Real>& w) {
  using std::abs;
  using std::exp;
  using std::pow;
  using std::sqrt;
  const Real pi = pi_value<Real>();
  const Complex<Real> sw = sqrt(w);
  const Complex<Real> zeta = Real(2) / Real(3) * w * sw;
  const Complex<Real> w14 = sqrt(sw);
  Complex<Real> su(1), sv(1);
  Real u = 1;
  Complex<Real> zk(1);
  Real last = std::numeric_limits<double>::max();
  const int kmax = AiryTraits<Real>::max_asymptotic_terms();
  for (int k = 1; k <= kmax; ++k) {
    u *= Real((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / (Real(2 * k - 1) * Real(216) * Real(k));
    const Real v = -Real(6 * k + 1) / Real(6 * k - 1) * u;
    zk *= -zeta;
    const Complex<Real> tu = u / zk;
    const Real mag = abs(tu);
    if (mag > last) break;  // divergent tail
    last = mag;
    su += tu;
    sv += v / zk;
    if (mag < AiryTraits<Real>::epsilon() * Real(1e-2)) break;
  }
  const Real norm = Real(1) / (Real(2) * sqrt(pi));
  const Complex<Real> phase = exp(Complex<Real>(0, -zeta.imag()));
  AiTerm<Real> out;
  out.ai = norm / w14 * su * phase;
  out.aip = -norm * w14 * sv * phase;
  out.logscale = -zeta.real();
  return out;
}

template <class Real>
AiTerm<Real> combine(const Complex<Real>& ca, const AiTerm<Real>& a, const Complex<Real>& cb, const AiTerm<Real>& b,
                     const Complex<Real>& da, const Complex<Real>& db) {
  using std::exp;
  AiTerm<Real> out;
  out.logscale = std::max(a.logscale, b.logscale);
  const Real fa = exp(a.logscale - out.logscale);
  const Real fb = exp(b.logscale - out.logscale);
  out.ai = ca * a.ai * fa + cb * b.ai * fb;
  out.aip = da * a.aip * fa + db * b.aip * fb;
  return out;
}

/// Walks y'' = w y along the straight segment from `from` to `to`.
template <class Real>
void walk(Complex<Real> from, const Complex<Real>& to, Complex<Real>& y, Complex<Real>& yp) {
  using std::abs;
  using std::ceil;
  const Real len = abs(to - from);
  if (len == Real(0)) return;
  const int steps = std::max(1, static_cast<int>(ceil(static_cast<double>(len / Real(AiryTraits<Real>::step)))));
  const Complex<Real> h = (to - from) / Real(steps);
  for (int i = 0; i < steps; ++i) {
    taylor_step(from, y, yp, h);
    from += h;
  }
}

/// Ai by continuation inside the disk |w| < R.
template <class Real>
AiTerm<Real> ai_continued(const Complex<Real>& w) {
  using std::abs;
  using std::arg;
  using std::exp;
  using std::polar;
  const Real pi = pi_value<Real>();
  const Real R = AiryTraits<Real>::asymptotic_radius;
  AiTerm<Real> out;
  if (abs(arg(w)) <= pi / Real(3) && abs(w) > Real(0)) {
    const Complex<Real> start = polar(R, arg(w));
    const AiTerm<Real> a = ai_asymptotic(start);
    const Real f = exp(a.logscale);
    Complex<Real> y = a.ai * f, yp = a.aip * f;
    walk(start, w, y, yp);
    out.ai = y;
    out.aip = yp;
  } else {
    Complex<Real> y(AiryTraits<Real>::ai0()), yp(AiryTraits<Real>::aip0());
    walk(Complex<Real>(0), w, y, yp);
    out.ai = y;
    out.aip = yp;
  }
  return out;
}

/// Ai and Ai' at any finite w, as pref * exp(logscale).
template <class Real>
AiTerm<Real> ai_any(const Complex<Real>& w) {
  using std::abs;
  using std::arg;
  const Real pi = pi_value<Real>();
  if (abs(w) < Real(AiryTraits<Real>::asymptotic_radius)) return ai_continued(w);
  if (abs(arg(w)) <= Real(2) * pi / Real(3)) return ai_asymptotic(w);
  // Ai(w) = -om Ai(om w) - om^2 Ai(om^2 w);  Ai'(w) = -om^2 Ai'(om w) - om Ai'(om^2 w).
  const Complex<Real> om = omega<Real>();
  const Complex<Real> om2 = std::conj(om);
  const AiTerm<Real> a = ai_asymptotic(Complex<Real>(om * w));
  const AiTerm<Real> b = ai_asymptotic(Complex<Real>(om2 * w));
  return combine<Real>(-om, a, -om2, b, -om2, -om);
}

}  // namespace detail

/// Ai(w), Ai'(w), Bi(w), Bi'(w).
template <class Real = double>
AiryPair<Real> airy_pair(const Complex<Real>& w) {
  using std::exp;
  using std::isfinite;
  using std::polar;
  if (!isfinite(w.real()) || !isfinite(w.imag())) throw std::domain_error("airy_pair: non-finite argument");
  const Real pi = detail::pi_value<Real>();
  const Complex<Real> om = detail::omega<Real>();
  const Complex<Real> om2 = std::conj(om);
  const detail::AiTerm<Real> a = detail::ai_any(w);
  const detail::AiTerm<Real> a1 = detail::ai_any(Complex<Real>(om * w));
  const detail::AiTerm<Real> a2 = detail::ai_any(Complex<Real>(om2 * w));
  const Complex<Real> e6 = polar(Real(1), pi / Real(6));
  const detail::AiTerm<Real> b = detail::combine<Real>(e6, a1, std::conj(e6), a2, e6 * om, std::conj(e6) * om2);

  AiryPair<Real> out;
  const Real top = std::max(a.logscale, b.logscale);
  // Keep unscaled output whenever it is representable.
  out.log_scale = top > Real(600) ? top : Real(0);
  const Real fa = exp(a.logscale - out.log_scale);
  const Real fb = exp(b.logscale - out.log_scale);
  out.ai = a.ai * fa;
  out.aip = a.aip * fa;
  out.bi = b.ai * fb;
  out.bip = b.aip * fb;
  return out;
}

/// Derivative jet of phi(z) = C1 Ai(-2^{-1/3} z) + C2 Bi(-2^{-1/3} z) up to `order`.
template <class Real = double>
ComplexJet<Real> seed_jet(const Complex<Real>& z, const SeedWeights<Real>& weights, std::size_t order) {
  using std::cbrt;
  if (order < 1) throw std::invalid_argument("seed_jet: order must be >= 1");
  const Real k = Real(1) / cbrt(Real(2));
  const AiryPair<Real> p = airy_pair(Complex<Real>(-k * z));
  ComplexJet<Real> jet;
  jet.center = z;
  jet.log_scale = p.log_scale;
  jet.values.resize(order + 1);
  jet.values[0] = weights.c1 * p.ai + weights.c2 * p.bi;
  jet.values[1] = -k * (weights.c1 * p.aip + weights.c2 * p.bip);
  for (std::size_t j = 0; j + 2 <= order; ++j) {
    const Complex<Real> prev = j >= 1 ? jet.values[j - 1] : Complex<Real>(0);
    jet.values[j + 2] = -Real(0.5) * (z * jet.values[j] + Real(j) * prev);
  }
  return jet;
}

/// Seed jets through a lattice of cached anchors: phi and phi' are evaluated once per
/// lattice point (spacing 1/2) and carried to z by one Taylor step of phi'' = -z phi / 2.
/// The anchor depends only on z, so results do not depend on evaluation order.
template <class Real = double>
class SeedCache {
 public:
  explicit SeedCache(SeedWeights<Real> weights, Real spacing = Real(0.5)) : weights_(weights), spacing_(spacing) {}

  const SeedWeights<Real>& weights() const { return weights_; }

  ComplexJet<Real> jet(const Complex<Real>& z, std::size_t order) {
    using std::round;
    if (order < 1) throw std::invalid_argument("SeedCache::jet: order must be >= 1");
    const long ix = static_cast<long>(round(static_cast<double>(z.real() / spacing_)));
    const long iy = static_cast<long>(round(static_cast<double>(z.imag() / spacing_)));
    Anchor a;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = anchors_.find({ix, iy});
      if (it == anchors_.end()) {
        const Complex<Real> c(Real(ix) * spacing_, Real(iy) * spacing_);
        const ComplexJet<Real> j = seed_jet(c, weights_, 1);
        it = anchors_.emplace(std::make_pair(ix, iy), Anchor{c, j.values[0], j.values[1], j.log_scale}).first;
      }
      a = it->second;
    }
    Complex<Real> y = a.phi, yp = a.dphi;
    if (z != a.center) detail::taylor_step_linear(Complex<Real>(-a.center / Real(2)), Complex<Real>(Real(-0.5)), y, yp,
                                                  Complex<Real>(z - a.center));
    ComplexJet<Real> jet;
    jet.center = z;
    jet.log_scale = a.log_scale;
    jet.values.resize(order + 1);
    jet.values[0] = y;
    jet.values[1] = yp;
    for (std::size_t j = 0; j + 2 <= order; ++j) {
      const Complex<Real> prev = j >= 1 ? jet.values[j - 1] : Complex<Real>(0);
      jet.values[j + 2] = -Real(0.5) * (z * jet.values[j] + Real(j) * prev);
    }
    return jet;
  }

 private:
  struct Anchor {
    Complex<Real> center, phi, dphi;
    Real log_scale{0};
  };
  SeedWeights<Real> weights_;
  Real spacing_;
  std::mutex mu_;
  std::map<std::pair<long, long>, Anchor> anchors_;
};

}  // namespace painleve

#endif
