#ifndef PAINLEVE_TRACER_HPP
#define PAINLEVE_TRACER_HPP

// Trajectories of a quadratic differential -Q(z) dz^2: curves along which
// -Q(z) (dz)^2 > 0 (trajectories) or < 0 (orthogonal trajectories). Integration is
// adaptive RK4 on the unit direction field, followed after each step by a projection
// back onto the level set Re W = const (Im W for orthogonal trajectories), W = int sqrt(Q) dz.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace painleve {

using cplx = std::complex<double>;

enum class TraceKind { Trajectory, Orthogonal };

struct TraceOptions {
  double capture = 1e-4;      // distance at which a sink absorbs the curve
  double r_out = 20;          // |z| beyond which the curve is declared to run to infinity
  double max_length = 200;    // arclength limit
  double tol = 1e-11;         // local error per step
  double h_init = 1e-3;
  double h_max_rel = 0.05;    // max step relative to max(1, |z|)
  bool correct = true;        // project onto the level set after each step
};

enum class TraceEnd { Sink, Infinity, LengthLimit, Stalled };

struct TracedArc {
  std::vector<cplx> pts;
  TraceEnd end = TraceEnd::Stalled;
  int sink = -1;  // index into the sink list when end == Sink
  double length = 0;
};

/// Q together with the finite critical points that terminate trajectories.
struct QuadField {
  std::function<cplx(cplx)> q;
  std::vector<cplx> sinks;
};

namespace detail {

inline cplx field_direction(const QuadField& f, cplx z, TraceKind kind, cplx prev) {
  const cplx qv = f.q(z);
  const double phi = std::arg(qv);
  cplx v = kind == TraceKind::Trajectory ? std::polar(1.0, (std::numbers::pi - phi) / 2) : std::polar(1.0, -phi / 2);
  if ((v * std::conj(prev)).real() < 0) v = -v;
  return v;
}

inline cplx rk4(const QuadField& f, cplx z, double h, TraceKind kind, cplx prev) {
  const cplx k1 = field_direction(f, z, kind, prev);
  const cplx k2 = field_direction(f, z + 0.5 * h * k1, kind, k1);
  const cplx k3 = field_direction(f, z + 0.5 * h * k2, kind, k1);
  const cplx k4 = field_direction(f, z + h * k3, kind, k1);
  return z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// int_a^b sqrt(Q) dz along the chord, with the root continued from its value at a.
inline cplx chord_integral(const QuadField& f, cplx a, cplx b) {
  static constexpr double x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
  static constexpr double w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};
  const cplx m = 0.5 * (a + b), d = 0.5 * (b - a);
  cplx prev = std::sqrt(f.q(a));
  cplx acc = 0;
  for (int i = 0; i < 4; ++i) {
    cplx r = std::sqrt(f.q(m + d * x[i]));
    if (std::abs(r + prev) < std::abs(r - prev)) r = -r;
    prev = r;
    acc += w[i] * r;
  }
  return acc * d;
}

}  // namespace detail

/// Traces from `start` with initial direction `dir`. Sinks closer than `capture` to the start
/// are ignored until the curve has travelled 10 capture radii.
inline TracedArc trace_trajectory(const QuadField& f, cplx start, cplx dir, TraceKind kind,
                                  const TraceOptions& opt = {}) {
  TracedArc arc;
  arc.pts.push_back(start);
  cplx z = start;
  cplx prev = dir / std::abs(dir);
  double h = opt.h_init;
  const double h_min = 1e-14;
  while (true) {
    const double h_max = opt.h_max_rel * std::max(1.0, std::abs(z));
    h = std::min(h, h_max);
    // Do not step over a sink.
    double dsink = 1e300;
    for (const auto& s : f.sinks) dsink = std::min(dsink, std::abs(z - s));
    if (arc.length > 10 * opt.capture) h = std::min(h, std::max(0.5 * dsink, 0.5 * opt.capture));
    const cplx full = detail::rk4(f, z, h, kind, prev);
    const cplx half = detail::rk4(f, z, 0.5 * h, kind, prev);
    const cplx two = detail::rk4(f, half, 0.5 * h, kind, detail::field_direction(f, half, kind, prev));
    const double err = std::abs(full - two);
    if (err > opt.tol * std::max(1.0, h) && h > h_min) {
      h *= 0.5;
      continue;
    }
    if (h <= h_min) {
      arc.end = TraceEnd::Stalled;
      return arc;
    }
    cplx next = two;
    if (opt.correct) {
      // Newton projection onto the level set of Re W (Im W for orthogonal curves).
      for (int it = 0; it < 2; ++it) {
        const cplx dw = detail::chord_integral(f, z, next);
        const double delta = kind == TraceKind::Trajectory ? dw.real() : dw.imag();
        const cplx r = std::sqrt(f.q(next));
        const double n2 = std::norm(r);
        if (n2 == 0) break;
        const cplx corr = kind == TraceKind::Trajectory ? -delta * std::conj(r) / n2 : -delta * cplx(0, 1) * std::conj(r) / n2;
        if (std::abs(corr) > 0.1 * h) break;
        next += corr;
      }
    }
    const cplx step = next - z;
    if (std::abs(step) > 0) prev = step / std::abs(step);
    arc.length += std::abs(step);
    z = next;
    arc.pts.push_back(z);
    if (err < 0.05 * opt.tol * std::max(1.0, h)) h *= 1.6;

    if (arc.length > 10 * opt.capture) {
      for (std::size_t k = 0; k < f.sinks.size(); ++k) {
        if (std::abs(z - f.sinks[k]) < opt.capture) {
          arc.pts.push_back(f.sinks[k]);
          arc.end = TraceEnd::Sink;
          arc.sink = static_cast<int>(k);
          return arc;
        }
      }
    }
    if (std::abs(z) > opt.r_out) {
      arc.end = TraceEnd::Infinity;
      return arc;
    }
    if (arc.length > opt.max_length) {
      arc.end = TraceEnd::LengthLimit;
      return arc;
    }
  }
}

/// Traces the curve leaving the critical point z0 at angle theta; the polyline starts at z0.
inline TracedArc trace_from_critical(const QuadField& f, cplx z0, double theta, TraceKind kind,
                                     const TraceOptions& opt = {}, double eps = 1e-6) {
  const cplx dir = std::polar(1.0, theta);
  TracedArc arc = trace_trajectory(f, z0 + eps * dir, dir, kind, opt);
  arc.pts.insert(arc.pts.begin(), z0);
  arc.length += eps;
  return arc;
}

/// Launch angles of the trajectories leaving a zero of order m with leading Taylor coefficient lead
/// (Q(z) ~ lead (z - z0)^m).
inline std::vector<double> launch_angles(cplx lead, int order, TraceKind kind) {
  std::vector<double> out;
  const double base = kind == TraceKind::Trajectory ? std::numbers::pi : 0.0;
  for (int j = 0; j < order + 2; ++j)
    out.push_back((base - std::arg(lead)) / (order + 2) + 2 * std::numbers::pi * j / (order + 2));
  return out;
}

}  // namespace painleve

#endif
