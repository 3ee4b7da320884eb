#ifndef PAINLEVE_ZEROFIND_HPP
#define PAINLEVE_ZEROFIND_HPP

// Zeros of entire functions in rectangles: argument-principle counts by adaptive
// phase continuation along the boundary, quadtree subdivision down to single zeros,
// Newton polishing with exact derivatives. Used for tau_n, D_n and the numerator
// tau_{n-1}' tau_n - tau_n' tau_{n-1} whose zeros are the zeros of q_n.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <functional>
#include <future>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "painleve/scaled.hpp"
#include "painleve/taufun.hpp"

namespace painleve {

using cplx = std::complex<double>;

struct Window {
  cplx lo, hi;

  Window() = default;
  Window(cplx lo_, cplx hi_) : lo(lo_), hi(hi_) {
    if (!(hi.real() > lo.real() && hi.imag() > lo.imag())) throw std::invalid_argument("Window: need hi > lo in both axes");
  }
  double width() const { return hi.real() - lo.real(); }
  double height() const { return hi.imag() - lo.imag(); }
  double diagonal() const { return std::abs(hi - lo); }
  cplx center() const { return 0.5 * (lo + hi); }
  bool contains(cplx z, double margin = 0) const {
    return z.real() >= lo.real() - margin && z.real() <= hi.real() + margin && z.imag() >= lo.imag() - margin &&
           z.imag() <= hi.imag() + margin;
  }
};

/// f and f' at a point, in scaled arithmetic.
struct FValue {
  Scaled<double> f, df;
};

using Evaluator = std::function<FValue(cplx)>;

class BoundaryZeroError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CountResult {
  int count = 0;
  Window window;  // the window actually integrated over (jittered if needed)
  int attempts = 1;
};

namespace detail {

struct PhaseWalk {
  double total = 0;
  bool boundary_zero = false;
};

inline double phase_step(const Scaled<double>& a, const Scaled<double>& b) { return std::arg(ratio(b, a)); }

/// Accumulates arg f along the segment [a, b]. A step is accepted once its phase increment is
/// below pi/2, the midpoint agrees, and the step is short against |f / f'| at both ends (a
/// proxy for the distance to the nearest zero), so fast turns near the edge are not aliased.
inline void walk_segment(const Evaluator& f, cplx a, const FValue& fa, cplx b, const FValue& fb, double min_len,
                         int depth, PhaseWalk& acc) {
  if (acc.boundary_zero) return;
  if (fa.f.is_zero() || fb.f.is_zero()) {
    acc.boundary_zero = true;
    return;
  }
  const double h = std::abs(b - a);
  const double d = phase_step(fa.f, fb.f);
  const bool resolved = h * std::abs(ratio(fa.df, fa.f)) < 0.5 && h * std::abs(ratio(fb.df, fb.f)) < 0.5;
  const cplx m = 0.5 * (a + b);
  if (std::abs(d) < std::numbers::pi / 2 && resolved && depth >= 2) {
    const FValue fm = f(m);
    if (fm.f.is_zero()) {
      acc.boundary_zero = true;
      return;
    }
    const double d1 = phase_step(fa.f, fm.f), d2 = phase_step(fm.f, fb.f);
    if (std::abs(d1) < std::numbers::pi / 2 && std::abs(d2) < std::numbers::pi / 2 && std::abs(d1 + d2 - d) < 1e-3) {
      acc.total += d;
      return;
    }
    if (h < min_len || depth > 60) {
      acc.boundary_zero = true;
      return;
    }
    walk_segment(f, a, fa, m, fm, min_len, depth + 1, acc);
    walk_segment(f, m, fm, b, fb, min_len, depth + 1, acc);
    return;
  }
  if (h < min_len || depth > 60) {
    acc.boundary_zero = true;
    return;
  }
  const FValue fm = f(m);
  walk_segment(f, a, fa, m, fm, min_len, depth + 1, acc);
  walk_segment(f, m, fm, b, fb, min_len, depth + 1, acc);
}

/// Winding number of f around the window, or nullopt when a zero sits on (or too near) the boundary.
inline std::optional<int> try_count(const Evaluator& f, const Window& w) {
  const cplx corners[4] = {w.lo, cplx(w.hi.real(), w.lo.imag()), w.hi, cplx(w.lo.real(), w.hi.imag())};
  const double min_len = 1e-9 * w.diagonal();
  PhaseWalk acc;
  const int per_edge = 8;
  std::vector<cplx> pts;
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e], b = corners[(e + 1) % 4];
    for (int i = 0; i < per_edge; ++i) pts.push_back(a + (b - a) * (static_cast<double>(i) / per_edge));
  }
  std::vector<FValue> vals;
  vals.reserve(pts.size());
  for (const auto& p : pts) {
    vals.push_back(f(p));
    if (vals.back().f.is_zero()) return std::nullopt;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t j = (i + 1) % pts.size();
    walk_segment(f, pts[i], vals[i], pts[j], vals[j], min_len, 0, acc);
    if (acc.boundary_zero) return std::nullopt;
  }
  const double turns = acc.total / (2 * std::numbers::pi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-3) return std::nullopt;
  return static_cast<int>(rounded);
}

/// Deterministic pseudo-random sequence in [-1, 1] seeded from window coordinates.
inline double jitter_value(const Window& w, int attempt, int axis) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(v));
    h ^= bits;
    h *= 1099511628211ull;
    h ^= h >> 29;
  };
  mix(w.lo.real());
  mix(w.lo.imag());
  mix(w.hi.real());
  mix(w.hi.imag());
  mix(static_cast<double>(attempt * 4 + axis));
  h *= 0x9E3779B97F4A7C15ull;
  return static_cast<double>(h >> 11) / static_cast<double>(1ull << 53) * 2.0 - 1.0;
}

}  // namespace detail

/// Argument-principle zero count; a zero on the boundary triggers up to 5 deterministic
/// jitters of the window by 1e-3 of its diagonal.
inline CountResult count_zeros(const Evaluator& f, const Window& w) {
  Window cur = w;
  for (int attempt = 1; attempt <= 6; ++attempt) {
    if (const auto c = detail::try_count(f, cur)) return {*c, cur, attempt};
    if (attempt == 6) break;
    const double s = 1e-3 * w.diagonal();
    const cplx shift_lo(detail::jitter_value(w, attempt, 0), detail::jitter_value(w, attempt, 1));
    const cplx shift_hi(detail::jitter_value(w, attempt, 2), detail::jitter_value(w, attempt, 3));
    cur = Window(w.lo + s * shift_lo, w.hi + s * shift_hi);
  }
  throw BoundaryZeroError("count_zeros: zero on the window boundary persists after 5 jitters");
}

struct UnresolvedLeaf {
  Window window;
  int count = 0;
  std::string reason;
};

struct LocateResult {
  std::vector<cplx> zeros;
  std::vector<UnresolvedLeaf> unresolved;
  int counted = 0;
  Window window;
  bool consistent() const { return unresolved.empty() && static_cast<int>(zeros.size()) == counted; }
};

inline bool lex_less(const cplx& a, const cplx& b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

/// Newton iteration z <- z - m f/f'; returns the polished point or nullopt after 50 iterations.
inline constexpr double kNewtonNoiseFloor = 1e-6;

inline std::optional<cplx> newton_polish(const Evaluator& f, cplx z, double tol, int multiplicity = 1,
                                         int max_iter = 50) {
  double prev = 1e300;
  for (int it = 0; it < max_iter; ++it) {
    const FValue v = f(z);
    if (v.f.is_zero()) return z;
    if (v.df.is_zero()) return std::nullopt;
    const cplx step = static_cast<double>(multiplicity) * ratio(v.f, v.df);
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return std::nullopt;
    const double len = std::abs(step);
    // Evaluation noise can keep the step above tol; stop once it no longer shrinks. The floor
    // covers high-level tau at large |z|, whose relative accuracy is near 1e-9.
    if (len <= tol || (len < std::max(1e3 * tol, kNewtonNoiseFloor) && len >= prev)) return z - step;
    z -= step;
    prev = len;
  }
  return std::nullopt;
}

namespace detail {

constexpr int kMaxDepth = 12;

inline void locate_in(const Evaluator& f, const Window& w, int count, int depth, double tol, LocateResult& out) {
  if (count <= 0) return;
  const double margin = 1e-12 * w.diagonal();
  if (count == 1) {
    if (const auto z = newton_polish(f, w.center(), tol); z && w.contains(*z, margin)) {
      out.zeros.push_back(*z);
      return;
    }
  }
  if (depth >= kMaxDepth) {
    if (count > 1) {
      // A cluster that survived every subdivision is treated as one multiple zero.
      if (const auto z = newton_polish(f, w.center(), tol, count); z && w.contains(*z, margin)) {
        for (int i = 0; i < count; ++i) out.zeros.push_back(*z);
        return;
      }
    }
    out.unresolved.push_back({w, count, count == 1 ? "newton did not converge" : "depth limit"});
    return;
  }
  // Split into quadrants; move the split lines if a child boundary passes through a zero.
  static constexpr double offsets[] = {0.0, 0.0137, -0.0213, 0.0371, -0.0459, 0.0613};
  for (double off : offsets) {
    const double xm = w.lo.real() + w.width() * (0.5 + off);
    const double ym = w.lo.imag() + w.height() * (0.5 - 0.7 * off);
    const Window kids[4] = {Window(w.lo, cplx(xm, ym)), Window(cplx(xm, w.lo.imag()), cplx(w.hi.real(), ym)),
                            Window(cplx(w.lo.real(), ym), cplx(xm, w.hi.imag())), Window(cplx(xm, ym), w.hi)};
    int counts[4];
    bool ok = true;
    int sum = 0;
    for (int k = 0; k < 4 && ok; ++k) {
      const auto c = try_count(f, kids[k]);
      if (!c || *c < 0) {
        ok = false;
        break;
      }
      counts[k] = *c;
      sum += *c;
    }
    if (!ok || sum != count) continue;
    for (int k = 0; k < 4; ++k) locate_in(f, kids[k], counts[k], depth + 1, tol, out);
    return;
  }
  out.unresolved.push_back({w, count, "subdivision failed"});
}

}  // namespace detail

/// All zeros of f in w, sorted lexicographically; unresolved leaves are reported, never dropped.
inline LocateResult locate_zeros(const Evaluator& f, const Window& w, double tol = 1e-12) {
  LocateResult out;
  const CountResult c = count_zeros(f, w);
  out.counted = c.count;
  out.window = c.window;
  detail::locate_in(f, c.window, c.count, 0, tol, out);
  std::sort(out.zeros.begin(), out.zeros.end(), lex_less);
  return out;
}

/// max |f| on a circle of radius `radius` around z (16 samples).
inline Scaled<double> local_scale(const Evaluator& f, cplx z, double radius = 0.25) {
  Scaled<double> best;
  double best_log = -1e300;
  for (int j = 0; j < 16; ++j) {
    const Scaled<double> v = f(z + std::polar(radius, 2 * std::numbers::pi * j / 16)).f;
    if (!v.is_zero() && v.log10_abs() > best_log) {
      best_log = v.log10_abs();
      best = v;
    }
  }
  return best;
}

/// (1 / 2 pi i) * closed integral of g over the circle |s - z| = r, trapezoid rule.
template <class G>
cplx circle_residue(G&& g, cplx z, double r, int samples = 256) {
  cplx acc = 0;
  for (int j = 0; j < samples; ++j) {
    const cplx e = std::polar(1.0, 2 * std::numbers::pi * j / samples);
    acc += g(z + r * e) * e;
  }
  return acc * r / static_cast<double>(samples);
}

// ---------------------------------------------------------------- tau evaluators

inline Evaluator tau_evaluator(std::size_t n, const SeedWeights<double>& weights) {
  auto cache = std::make_shared<SeedCache<double>>(weights);
  return [n, cache](cplx z) {
    const auto t = tau<double>(n, z, *cache, 1);
    return FValue{t.value, t.dvals[0]};
  };
}

/// tau_{n-1}' tau_n - tau_n' tau_{n-1}, whose zeros are the zeros of q_n.
inline Evaluator q_numerator_evaluator(std::size_t n, const SeedWeights<double>& weights) {
  auto cache = std::make_shared<SeedCache<double>>(weights);
  return [n, cache](cplx z) {
    const auto a = tau<double>(n - 1, z, *cache, 2);
    const auto b = tau<double>(n, z, *cache, 2);
    return FValue{a.dvals[0] * b.value - b.dvals[0] * a.value, a.dvals[1] * b.value - b.dvals[1] * a.value};
  };
}

struct PoleMap {
  std::size_t n = 0;
  ExtendedComplex<double> lambda;
  std::vector<cplx> poles_plus;   // zeros of tau_{n-1}: residue +1 of q_n
  std::vector<cplx> poles_minus;  // zeros of tau_n: residue -1 of q_n
  std::vector<cplx> zeros_q;
  std::vector<cplx> residues_plus, residues_minus;
  std::vector<UnresolvedLeaf> unresolved;
  Window window;
};

inline double nearest_distance(cplx z, const std::vector<const std::vector<cplx>*>& sets) {
  double d = 1e300;
  for (const auto* s : sets)
    for (const auto& p : *s)
      if (p != z) d = std::min(d, std::abs(p - z));
  return d;
}

/// Residue of q_n at a pole, by the trapezoid rule on a circle of half the distance to the nearest other point.
inline cplx q_residue(std::size_t n, SeedCache<double>& cache, cplx pole, double radius) {
  auto q = [&](cplx s) {
    const auto t = painleve_triple<double>(n, s, cache);
    return t.ok() ? t->q : cplx(0);
  };
  return circle_residue(q, pole, radius);
}

inline PoleMap pole_map(std::size_t n, const SeedWeights<double>& weights, const Window& w, double tol = 1e-12,
                        unsigned threads = 1) {
  if (n < 1) throw std::invalid_argument("pole_map: n must be >= 1");
  PoleMap pm;
  pm.n = n;
  pm.lambda = weights.lambda;
  pm.window = w;
  const Evaluator e_plus = tau_evaluator(n - 1, weights);
  const Evaluator e_minus = tau_evaluator(n, weights);
  const Evaluator e_zero = q_numerator_evaluator(n, weights);
  LocateResult plus, minus, zeros;
  if (threads > 1) {
    auto f1 = std::async(std::launch::async, [&] { return locate_zeros(e_plus, w, tol); });
    auto f2 = std::async(std::launch::async, [&] { return locate_zeros(e_minus, w, tol); });
    zeros = locate_zeros(e_zero, w, tol);
    plus = f1.get();
    minus = f2.get();
  } else {
    plus = locate_zeros(e_plus, w, tol);
    minus = locate_zeros(e_minus, w, tol);
    zeros = locate_zeros(e_zero, w, tol);
  }
  pm.poles_plus = plus.zeros;
  pm.poles_minus = minus.zeros;
  pm.zeros_q = zeros.zeros;
  for (auto* r : {&plus, &minus, &zeros}) pm.unresolved.insert(pm.unresolved.end(), r->unresolved.begin(), r->unresolved.end());
  const std::vector<const std::vector<cplx>*> all = {&pm.poles_plus, &pm.poles_minus, &pm.zeros_q};
  SeedCache<double> cache(weights);
  for (const auto& p : pm.poles_plus)
    pm.residues_plus.push_back(q_residue(n, cache, p, std::min(0.25, 0.5 * nearest_distance(p, all))));
  for (const auto& p : pm.poles_minus)
    pm.residues_minus.push_back(q_residue(n, cache, p, std::min(0.25, 0.5 * nearest_distance(p, all))));
  return pm;
}

}  // namespace painleve

#endif
