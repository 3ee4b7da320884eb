#ifndef PAINLEVE_PHASE_HPP
#define PAINLEVE_PHASE_HPP

// Phase diagram of the cubic model in the t-plane.
//
// One-cut spectral curves are Q(z) = (1/4)(z - a)(z - b)(z - c)^2 with
//   a = x - i sqrt(2/x),  b = x + i sqrt(2/x),  c = -x,  x^3 - t x - 1 = 0,
// and the three roots x give three branches x_tau, tau in {0, i, -i}. Region boundaries
// come from the auxiliary quadratic differential -(1 + 1/s)^3 ds^2 via s = 2 x^3 and
// t = (x^3 - 1) / x. In the two-cut and trefoil regimes the constant K of
// Q(z) = (1/4)(z^2 - t)^2 + z + K is fixed by the Boutroux conditions.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "painleve/polyroots.hpp"
#include "painleve/quadrature.hpp"
#include "painleve/tracer.hpp"

namespace painleve {

inline const cplx kEta = std::polar(1.0, 2 * std::numbers::pi / 3);  // e^{2 pi i / 3}
inline const double kTcr = 3.0 * std::pow(2.0, -2.0 / 3.0);

/// Branch labels tau in {0, i, -i}.
enum class Branch { Zero, PlusI, MinusI };

inline const char* branch_name(Branch b) {
  switch (b) {
    case Branch::Zero: return "0";
    case Branch::PlusI: return "i";
    case Branch::MinusI: return "-i";
  }
  return "?";
}

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------- cubic branches

/// Roots of x^3 - t x - 1 = 0: Cardano's formula, then one Newton polish each.
inline std::array<cplx, 3> cubic_roots(cplx t) {
  // x = u + v with u^3 + v^3 = 1 and u v = t / 3.
  const cplx disc = std::sqrt(cplx(0.25) - t * t * t / 27.0);
  cplx u3 = 0.5 + disc;
  if (std::abs(0.5 - disc) > std::abs(u3)) u3 = 0.5 - disc;
  const cplx u = std::pow(u3, 1.0 / 3.0);
  std::array<cplx, 3> x;
  for (int k = 0; k < 3; ++k) {
    const cplx uk = u * std::pow(kEta, k);
    const cplx vk = uk == cplx(0) ? cplx(0) : t / (3.0 * uk);
    x[k] = uk + vk;
  }
  for (auto& r : x) {
    const cplx f = r * r * r - t * r - 1.0;
    const cplx df = 3.0 * r * r - t;
    if (std::abs(df) > 1e-8 * std::max(1.0, std::abs(r * r))) r -= f / df;
  }
  return x;
}

/// t(x) = (x^3 - 1) / x = x^2 - 1/x.
inline cplx t_of_x(cplx x) { return x * x - 1.0 / x; }

namespace detail {

/// Continues the root of x^3 - t x - 1 starting at (t0, x0) along the straight segment to t1.
inline cplx continue_root(cplx t0, cplx x0, cplx t1) {
  cplx x = x0;
  double s = 0;
  double h = 0.05;
  const double len = std::abs(t1 - t0);
  if (len == 0) return x;
  while (s < 1) {
    const double step = std::min(h, 1 - s);
    const cplx t = t0 + (t1 - t0) * (s + step);
    const auto r = cubic_roots(t);
    std::array<double, 3> d;
    for (int k = 0; k < 3; ++k) d[k] = std::abs(r[k] - x);
    const int best = static_cast<int>(std::min_element(d.begin(), d.end()) - d.begin());
    double sep = 1e300;
    for (int k = 0; k < 3; ++k)
      if (k != best) sep = std::min(sep, std::abs(r[k] - r[best]));
    // A double root is only resolved to ~sqrt(eps) by the closed form, so an exact collision is
    // recognised from the discriminant 4t^3 - 27 as well as from the separation.
    if (sep < 1e-10 || (sep < 1e-6 && std::abs(4.0 * t * t * t - 27.0) <= 1e-9))
      throw DomainError("branch_x: roots collide along the continuation path");
    // Unambiguous tracking: the move must be well below half the distance to the other roots.
    if (d[best] > 0.25 * sep && step * len > 1e-12) {
      h = 0.5 * step;
      continue;
    }
    x = r[best];
    s += step;
    if (d[best] < 0.05 * sep) h = std::min(2 * h, 0.1);
  }
  return x;
}

}  // namespace detail

/// The branch x_0 holomorphic in O_(0) (the plane minus the tongue around the negative axis),
/// x_0(0) = 1, continued from 0 along the positive axis to |t| and then along the circle |t| = const.
inline cplx branch_x0(cplx t) {
  const double r = std::abs(t);
  cplx x = detail::continue_root(0.0, 1.0, r);
  if (r == 0) return x;
  const double theta = std::arg(t);
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(theta) / 0.05)));
  cplx cur = r;
  for (int k = 1; k <= pieces; ++k) {
    const cplx nxt = std::polar(r, theta * k / pieces);
    x = detail::continue_root(cur, x, nxt);
    cur = nxt;
  }
  return x;
}

/// x_tau(t), using x_{-i}(t) = eta x_0(eta t) and x_i(t) = conj(eta) x_0(conj(eta) t).
inline cplx branch_x(Branch b, cplx t) {
  switch (b) {
    case Branch::Zero: return branch_x0(t);
    case Branch::MinusI: return kEta * branch_x0(kEta * t);
    case Branch::PlusI: return std::conj(kEta) * branch_x0(std::conj(kEta) * t);
  }
  return {};
}

/// Rotation taking the tau = -i picture to branch b: x_b(t) = rho x_{-i}(rho t).
inline cplx branch_rotation(Branch b) {
  switch (b) {
    case Branch::MinusI: return 1.0;
    case Branch::Zero: return std::conj(kEta);
    case Branch::PlusI: return kEta;
  }
  return 1.0;
}

// ---------------------------------------------------------------- quartic Q

/// Q(z; t) = (1/4)(z^2 - t)^2 + z + K, by coefficients and by zeros.
struct QuarticQ {
  cplx t{0}, bigK{0};
  std::array<cplx, 5> coeffs{};  // ascending
  std::array<cplx, 4> zeros{};

  static QuarticQ from_tk(cplx t, cplx k) {
    QuarticQ q;
    q.t = t;
    q.bigK = k;
    q.coeffs = {t * t / 4.0 + k, 1.0, -t / 2.0, 0.0, 0.25};
    const auto r = poly_roots({q.coeffs.begin(), q.coeffs.end()});
    for (int i = 0; i < 4; ++i) q.zeros[i] = r[i];
    return q;
  }

  cplx operator()(cplx z) const { return (((coeffs[4] * z + coeffs[3]) * z + coeffs[2]) * z + coeffs[1]) * z + coeffs[0]; }
  cplx derivative(cplx z) const { return ((4.0 * coeffs[4] * z + 3.0 * coeffs[3]) * z + 2.0 * coeffs[2]) * z + coeffs[1]; }

  /// Max coefficient mismatch between (1/4) prod (z - z_i) and the stored coefficients.
  double reconstruction_error() const {
    const auto c = poly_from_roots({zeros.begin(), zeros.end()}, 0.25);
    double e = 0;
    for (int i = 0; i < 5; ++i) e = std::max(e, std::abs(c[i] - coeffs[i]));
    return e;
  }
};

/// One-cut endpoints and double zero.
struct OneCutData {
  Branch branch = Branch::MinusI;
  cplx t, x, a, b, c;
  QuarticQ q;

  /// Residuals of a + b + 2c = 0, ab + c^2 + 2(a + b)c = -2t, 2abc + (a + b)c^2 = -4.
  std::array<double, 3> system_residuals() const {
    return {std::abs(a + b + 2.0 * c), std::abs(a * b + c * c + 2.0 * (a + b) * c + 2.0 * t),
            std::abs(2.0 * a * b * c + (a + b) * c * c + 4.0)};
  }
};

/// K for the one-cut curve built on the cubic root x (independent of the square-root sign).
inline cplx onecut_k(cplx x, cplx t) { return 0.25 * (x * x + 2.0 / x) * x * x - t * t / 4.0; }

/// a, b, c from a root x of the cubic, with sqrt(x) given explicitly.
inline OneCutData abc_from_root(cplx t, cplx x, cplx sqrt_x, Branch b = Branch::MinusI) {
  OneCutData d;
  d.branch = b;
  d.t = t;
  d.x = x;
  const cplx w = cplx(0, std::sqrt(2.0)) / sqrt_x;
  d.a = x - w;
  d.b = x + w;
  d.c = -x;
  d.q.t = t;
  d.q.bigK = onecut_k(x, t);
  d.q.coeffs = {t * t / 4.0 + d.q.bigK, 1.0, -t / 2.0, 0.0, 0.25};
  d.q.zeros = {d.a, d.b, d.c, d.c};
  return d;
}

namespace detail {

/// sqrt(x_{-i}(s)) continued along the same path as x, starting from e^{i pi/3}.
inline cplx sqrt_branch_minus_i(cplx s) {
  // x_{-i}(s) = eta x_0(eta s); follow x_0 along its path and continue the root of eta x.
  const double r = std::abs(kEta * s);
  const double theta = std::arg(kEta * s);
  cplx x0 = 1.0;
  cplx root = std::polar(1.0, std::numbers::pi / 3);  // sqrt(eta * 1)
  auto advance = [&](cplx ta, cplx tb) {
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(tb - ta) / 0.02)));
    for (int k = 1; k <= pieces; ++k) {
      const cplx tk = ta + (tb - ta) * (static_cast<double>(k) / pieces);
      x0 = continue_root(ta + (tb - ta) * (static_cast<double>(k - 1) / pieces), x0, tk);
      cplx cand = std::sqrt(kEta * x0);
      if (std::abs(cand - root) > std::abs(cand + root)) cand = -cand;
      root = cand;
    }
  };
  advance(0.0, r);
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(theta) / 0.05)));
  cplx cur = r;
  for (int k = 1; k <= pieces; ++k) {
    const cplx nxt = std::polar(r, theta * k / pieces);
    advance(cur, nxt);
    cur = nxt;
  }
  return root;
}

}  // namespace detail

/// a, b, c and Q for branch tau at t. For tau = -i the formulas above are used with
/// sqrt(x_{-i}) continued from e^{i pi/3}; the other branches follow by rotation:
/// a_tau(t) = rho a_{-i}(rho t) with rho = branch_rotation(tau).
inline OneCutData abc(Branch b, cplx t) {
  const cplx rho = branch_rotation(b);
  const cplx s = rho * t;  // the -i picture
  const cplx x = kEta * branch_x0(kEta * s);
  const OneCutData base = abc_from_root(s, x, detail::sqrt_branch_minus_i(s), Branch::MinusI);
  if (b == Branch::MinusI) return base;
  OneCutData d;
  d.branch = b;
  d.t = t;
  d.x = branch_x(b, t);
  d.a = rho * base.a;
  d.b = rho * base.b;
  d.c = rho * base.c;
  d.q.t = t;
  d.q.bigK = onecut_k(d.x, t);
  d.q.coeffs = {t * t / 4.0 + d.q.bigK, 1.0, -t / 2.0, 0.0, 0.25};
  d.q.zeros = {d.a, d.b, d.c, d.c};
  return d;
}


// ---------------------------------------------------------------- polylines

using Polyline = std::vector<cplx>;

inline double segment_distance(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

inline double polyline_distance(cplx p, const Polyline& line) {
  if (line.size() == 1) return std::abs(p - line[0]);
  double best = 1e300;
  for (std::size_t i = 1; i < line.size(); ++i) best = std::min(best, segment_distance(p, line[i - 1], line[i]));
  return best;
}

/// Winding number of the closed polygon (last point joined to the first) around p.
inline int winding_number(cplx p, const Polyline& poly) {
  int w = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = poly[i], b = poly[(i + 1) % n];
    const double cross = ((b - a) * std::conj(p - a)).imag() * -1.0;  // (b - a) x (p - a)
    if (a.imag() <= p.imag()) {
      if (b.imag() > p.imag() && cross > 0) ++w;
    } else if (b.imag() <= p.imag() && cross < 0) {
      --w;
    }
  }
  return w;
}

/// Upper bound on the Hausdorff distance between two curves traversed in the same direction.
/// Each point of one curve is matched against a window of segments of the other around the
/// previous match (a full search seeds the first point), so the value never underestimates.
inline double hausdorff(const Polyline& a, const Polyline& b, bool closed = false) {
  auto directed = [closed](const Polyline& p, const Polyline& q) {
    if (p.empty() || q.size() < 2) return 0.0;
    const std::size_t nseg = closed ? q.size() : q.size() - 1;  // segment k joins q[k] and q[k + 1]
    auto seg = [&](cplx z, std::size_t k) { return segment_distance(z, q[k], q[(k + 1) % q.size()]); };
    std::size_t j = 0;
    double best = 1e300;
    for (std::size_t k = 0; k < nseg; ++k) {
      const double d = seg(p[0], k);
      if (d < best) best = d, j = k;
    }
    double h = best;
    constexpr long kWindow = 64;
    for (std::size_t i = 1; i < p.size(); ++i) {
      double d = 1e300;
      std::size_t jn = j;
      for (long off = -kWindow; off <= kWindow; ++off) {
        long k = static_cast<long>(j) + off;
        if (closed) {
          k = ((k % static_cast<long>(nseg)) + static_cast<long>(nseg)) % static_cast<long>(nseg);
        } else if (k < 0 || k >= static_cast<long>(nseg)) {
          continue;
        }
        const double dk = seg(p[i], static_cast<std::size_t>(k));
        if (dk < d) d = dk, jn = static_cast<std::size_t>(k);
      }
      j = jn;
      h = std::max(h, d);
    }
    return h;
  };
  return std::max(directed(a, b), directed(b, a));
}

/// Polyline with bounding boxes of consecutive chunks, for fast proximity queries.
struct IndexedPolyline {
  static constexpr std::size_t kChunk = 64;
  Polyline pts;
  std::vector<std::array<double, 4>> boxes;  // xmin, xmax, ymin, ymax per chunk (chunks share end points)

  IndexedPolyline() = default;
  explicit IndexedPolyline(Polyline p) : pts(std::move(p)) {
    for (std::size_t s = 0; s + 1 < pts.size(); s += kChunk) {
      std::array<double, 4> b{1e300, -1e300, 1e300, -1e300};
      for (std::size_t i = s; i <= std::min(pts.size() - 1, s + kChunk); ++i) {
        b[0] = std::min(b[0], pts[i].real());
        b[1] = std::max(b[1], pts[i].real());
        b[2] = std::min(b[2], pts[i].imag());
        b[3] = std::max(b[3], pts[i].imag());
      }
      boxes.push_back(b);
    }
  }

  /// Distance from p, exact when below `cutoff` (larger values are reported as >= cutoff).
  double distance(cplx p, double cutoff = 1e300) const {
    double best = cutoff;
    for (std::size_t c = 0; c < boxes.size(); ++c) {
      const auto& b = boxes[c];
      const double dx = std::max({b[0] - p.real(), 0.0, p.real() - b[1]});
      const double dy = std::max({b[2] - p.imag(), 0.0, p.imag() - b[3]});
      if (std::hypot(dx, dy) >= best) continue;
      const std::size_t s = c * kChunk;
      for (std::size_t i = s + 1; i <= std::min(pts.size() - 1, s + kChunk); ++i)
        best = std::min(best, segment_distance(p, pts[i - 1], pts[i]));
    }
    return best;
  }

  /// Winding number of the closed polygon around p; chunks whose box misses the rightward
  /// horizontal ray from p contribute nothing.
  int winding(cplx p) const {
    int w = 0;
    auto edge = [&](cplx a, cplx b) {
      const double cross = ((b - a) * std::conj(p - a)).imag() * -1.0;
      if (a.imag() <= p.imag()) {
        if (b.imag() > p.imag() && cross > 0) ++w;
      } else if (b.imag() <= p.imag() && cross < 0) {
        --w;
      }
    };
    for (std::size_t c = 0; c < boxes.size(); ++c) {
      const auto& b = boxes[c];
      if (b[2] > p.imag() || b[3] < p.imag() || b[1] < p.real()) continue;
      const std::size_t s = c * kChunk;
      for (std::size_t i = s + 1; i <= std::min(pts.size() - 1, s + kChunk); ++i) edge(pts[i - 1], pts[i]);
    }
    if (pts.size() > 1) edge(pts.back(), pts.front());
    return w;
  }
};

inline Polyline rotated(const Polyline& line, cplx factor) {
  Polyline out(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) out[i] = factor * line[i];
  return out;
}

class AtlasError : public std::runtime_error {
 public:
  AtlasError(int arc, const std::string& what)
      : std::runtime_error("atlas arc " + std::to_string(arc) + ": " + what), arc_id(arc) {}
  int arc_id;
};

struct AtlasOptions {
  double s_out = 2000;      // the unbounded auxiliary arcs are traced to |s| = s_out
  double h_max_rel = 0.001;  // tracer step cap relative to |s|
};

/// Region boundaries of the t-plane phase diagram.
///
/// Indexing of the three rotated copies follows Branch: tongues[b] is O_{1,b}, boundary[b] is
/// the boundary of O_(b) (an open polyline from infinity through two corners back to infinity).
struct RegionAtlas {
  std::array<Polyline, 5> aux;                  // critical trajectories from s = -1, k = 0..4
  std::vector<Polyline> delta;                  // images in the x-plane (3 cube-root starts x 5 arcs)
  std::array<Polyline, 3> boundary;             // open boundary curves of O_(tau)
  std::array<Polyline, 3> tongues;              // closed polygons O_{1,tau}
  std::array<std::array<Polyline, 2>, 3> outer; // the two unbounded sides of each tongue (boundary of O_0)
  std::array<std::array<IndexedPolyline, 2>, 3> outer_index;
  std::array<IndexedPolyline, 3> boundary_index;
  Polyline trefoil;                             // closed polygon O_{1,-}
  IndexedPolyline trefoil_index;
  std::array<IndexedPolyline, 3> tongue_index;
  std::array<cplx, 3> corners{};                // recovered from the trefoil polygon
  std::array<double, 2> loop_crossing{};        // positive real crossing of the loop, from k = 1 and k = 4
  double radius = 0;                            // classification is trusted for |t| < radius

  /// Largest Hausdorff distance between an eta-rotated tongue/boundary and its counterpart.
  double eta_invariance_error() const;
};

inline int branch_index(Branch b) { return static_cast<int>(b); }

namespace detail {

inline cplx aux_q(cplx s) {
  const cplx u = 1.0 + 1.0 / s;
  return u * u * u;
}

/// Maps an s-polyline to x = (s/2)^{1/3}, continuing the cube root from x_start.
inline Polyline cube_root_image(const Polyline& s, cplx x_start) {
  Polyline out;
  out.reserve(s.size());
  cplx x = x_start;
  for (const auto& si : s) {
    const cplx base = std::pow(si / 2.0, 1.0 / 3.0);
    cplx best = base;
    for (int k = 1; k < 3; ++k) {
      const cplx cand = base * std::pow(kEta, k);
      if (std::abs(cand - x) < std::abs(best - x)) best = cand;
    }
    x = out.empty() ? x_start : best;
    out.push_back(x);
  }
  return out;
}

inline Polyline t_image(const Polyline& x) {
  Polyline out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = t_of_x(x[i]);
  return out;
}

inline double real_axis_crossing(const Polyline& arc) {
  for (std::size_t i = 1; i < arc.size(); ++i) {
    const cplx a = arc[i - 1], b = arc[i];
    if (a.imag() * b.imag() < 0 && a.real() > 0) {
      const double s = a.imag() / (a.imag() - b.imag());
      return a.real() + s * (b.real() - a.real());
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

inline double RegionAtlas::eta_invariance_error() const {
  double e = 0;
  // Rotation by eta sends O_{1,-i} -> O_{1,0} -> O_{1,i} -> O_{1,-i}.
  const std::array<std::pair<Branch, Branch>, 3> pairs{{{Branch::MinusI, Branch::Zero},
                                                        {Branch::Zero, Branch::PlusI},
                                                        {Branch::PlusI, Branch::MinusI}}};
  for (const auto& [from, to] : pairs) {
    e = std::max(e, hausdorff(rotated(tongues[branch_index(from)], kEta), tongues[branch_index(to)]));
    e = std::max(e, hausdorff(rotated(boundary[branch_index(from)], kEta), boundary[branch_index(to)]));
  }
  e = std::max(e, hausdorff(rotated(trefoil, kEta), trefoil, true));
  return e;
}

/// Traces the five critical trajectories of -(1 + 1/s)^3 ds^2 leaving s = -1 at angles 2 pi k / 5,
/// pushes them through x = (s/2)^{1/3} and t = x^2 - 1/x, and assembles the regions.
///
/// Arc roles (checked, an AtlasError names the offending arc otherwise): k = 0 ends at the pole
/// s = 0, k = 1 and k = 4 are the two orientations of the loop through the positive axis,
/// k = 2 and k = 3 escape to infinity in the upper and lower half planes.
inline RegionAtlas build_atlas(const AtlasOptions& opt = {}) {
  RegionAtlas atlas;
  QuadField field;
  field.q = detail::aux_q;
  field.sinks = {cplx(-1.0), cplx(0.0)};
  TraceOptions topt;
  topt.r_out = opt.s_out;
  topt.max_length = 4 * opt.s_out;
  topt.h_max_rel = opt.h_max_rel;
  topt.capture = 1e-4;
  for (int k = 0; k < 5; ++k) {
    const double theta = 2 * std::numbers::pi * k / 5;
    TracedArc arc = trace_from_critical(field, -1.0, theta, TraceKind::Trajectory, topt, 1e-5);
    const bool ok = (k == 0 && arc.end == TraceEnd::Sink && arc.sink == 1) ||
                    ((k == 1 || k == 4) && arc.end == TraceEnd::Sink && arc.sink == 0) ||
                    ((k == 2 || k == 3) && arc.end == TraceEnd::Infinity);
    if (!ok) throw AtlasError(k, "unexpected termination of the auxiliary trajectory");
    if ((k == 2 && arc.pts.back().imag() <= 0) || (k == 3 && arc.pts.back().imag() >= 0))
      throw AtlasError(k, "escaped into the wrong half plane");
    atlas.aux[k] = std::move(arc.pts);
  }
  atlas.loop_crossing = {detail::real_axis_crossing(atlas.aux[1]), detail::real_axis_crossing(atlas.aux[4])};

  // Preimages of s = -1: v1 = 2^{-1/3} e^{i pi/3}, v2 = -2^{-1/3}, v3 = 2^{-1/3} e^{-i pi/3}.
  const double r = std::pow(2.0, -1.0 / 3.0);
  const std::array<cplx, 3> v{std::polar(r, std::numbers::pi / 3), cplx(-r), std::polar(r, -std::numbers::pi / 3)};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 5; ++k) atlas.delta.push_back(detail::cube_root_image(atlas.aux[k], v[j]));
  auto delta = [&](int j, int k) -> const Polyline& { return atlas.delta[5 * j + k]; };

  // Boundary of Omega_(0) in the x-plane: lower arc k = 3 started at v1 (to +i infinity), the loop
  // started at v1 (through (0.635/2)^{1/3} to v3), upper arc k = 2 started at v3 (to -i infinity).
  // The tongue at angle pi lies between their t-images. Multiplying x by eta rotates t by conj(eta),
  // so the copies started at v2 = eta v1 and v3 = conj(eta) v1 give the other two tongues.
  const std::array<Branch, 3> tongue_of_start{Branch::Zero, Branch::MinusI, Branch::PlusI};
  for (int j = 0; j < 3; ++j) {
    const int jn = (j + 2) % 3;  // the loop started at v_j ends at v_{jn}
    const Polyline up = detail::t_image(delta(j, 3));
    const Polyline base = detail::t_image(delta(j, 1));
    const Polyline down = detail::t_image(delta(jn, 2));
    Polyline open(up.rbegin(), up.rend());
    open.insert(open.end(), base.begin() + 1, base.end());
    open.insert(open.end(), down.begin() + 1, down.end());
    const Branch b = tongue_of_start[j];
    atlas.boundary[branch_index(b)] = open;
    atlas.tongues[branch_index(b)] = open;
    atlas.outer[branch_index(b)] = {up, down};
    atlas.outer_index[branch_index(b)] = {IndexedPolyline(up), IndexedPolyline(down)};
    atlas.boundary_index[branch_index(b)] = IndexedPolyline(open);
    atlas.tongue_index[branch_index(b)] = IndexedPolyline(open);
  }
  atlas.radius = 1e300;
  for (const auto& bnd : atlas.boundary)
    atlas.radius = std::min({atlas.radius, std::abs(bnd.front()), std::abs(bnd.back())});

  // Trefoil: the three tongue bases, taken from the loop images of each start.
  for (int j : {0, 2, 1}) {
    const Polyline base = detail::t_image(delta(j, 1));
    atlas.trefoil.insert(atlas.trefoil.end(), base.begin() + (atlas.trefoil.empty() ? 0 : 1), base.end());
  }
  if (!atlas.trefoil.empty()) atlas.trefoil.pop_back();  // closing point duplicates the first
  atlas.trefoil_index = IndexedPolyline(atlas.trefoil);

  // Corners: local maxima of |t| along the closed trefoil polygon.
  std::vector<std::pair<double, cplx>> peaks;
  const std::size_t n = atlas.trefoil.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::abs(atlas.trefoil[i]);
    if (m >= std::abs(atlas.trefoil[(i + n - 1) % n]) && m > std::abs(atlas.trefoil[(i + 1) % n]))
      peaks.push_back({m, atlas.trefoil[i]});
  }
  std::sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (peaks.size() < 3) throw AtlasError(1, "trefoil polygon has fewer than three corners");
  // Order as t_cr, eta t_cr, conj(eta) t_cr by the nearest of the three reference directions.
  for (int i = 0; i < 3; ++i) {
    const cplx c = peaks[i].second;
    const double a = std::arg(c);
    const int slot = std::abs(a) < std::numbers::pi / 3 ? 0 : (a > 0 ? 1 : 2);
    atlas.corners[slot] = c;
  }
  return atlas;
}


// ---------------------------------------------------------------- classification

struct PhaseLabel {
  enum class Kind { OneCut, TwoCut, Trefoil, BoundaryOneCut, Corner };
  Kind kind = Kind::OneCut;
  Branch branch = Branch::Zero;  // meaningful for OneCut and TwoCut

  bool operator==(const PhaseLabel&) const = default;

  std::string str() const {
    switch (kind) {
      case Kind::OneCut: return std::string("OneCut(") + branch_name(branch) + ")";
      case Kind::TwoCut: return std::string("TwoCut(") + branch_name(branch) + ")";
      case Kind::Trefoil: return "Trefoil";
      case Kind::BoundaryOneCut: return "BoundaryOneCut";
      case Kind::Corner: return "Corner";
    }
    return "?";
  }
};

/// Rotation of labels under t -> eta t: O_{., -i} -> O_{., 0} -> O_{., i} -> O_{., -i}.
inline Branch rotate_branch(Branch b, int times) {
  times = ((times % 3) + 3) % 3;
  for (int k = 0; k < times; ++k) b = b == Branch::MinusI ? Branch::Zero : (b == Branch::Zero ? Branch::PlusI : Branch::MinusI);
  return b;
}

inline constexpr double kBoundaryTolerance = 1e-6;

/// Point classification. t is first rotated by a power of eta into the sector |arg t| <= pi/3,
/// where the candidates are the trefoil, the tongues O_{1,-i} (at pi/3) and O_{1,i} (at -pi/3)
/// and the one-cut sector O_{0,-i}. Points within kBoundaryTolerance of an unbounded tongue
/// side are BoundaryOneCut; the three corners are Corner. Beyond atlas.radius every point is
/// taken to be one-cut (the tongues there are thinner than 2/sqrt(|t|)).
inline PhaseLabel classify(cplx t, const RegionAtlas& atlas) {
  int j = 0;
  cplx tr = t;
  while (j < 3 && t != cplx(0)) {
    const double a = std::arg(tr);
    if (a > -std::numbers::pi / 3 - 1e-15 && a <= std::numbers::pi / 3 + 1e-15) break;
    tr *= std::conj(kEta);  // t = eta^j tr
    ++j;
  }
  PhaseLabel out;
  for (const auto& c : atlas.corners) {
    if (std::abs(t - c) <= kBoundaryTolerance) {
      out.kind = PhaseLabel::Kind::Corner;
      return out;
    }
  }
  if (std::abs(tr) >= atlas.radius) {
    out.kind = PhaseLabel::Kind::OneCut;
    out.branch = rotate_branch(Branch::MinusI, j);
    return out;
  }
  for (Branch b : {Branch::MinusI, Branch::PlusI}) {
    for (const auto& side : atlas.outer_index[branch_index(b)]) {
      if (side.distance(tr, 2 * kBoundaryTolerance) <= kBoundaryTolerance) {
        out.kind = PhaseLabel::Kind::BoundaryOneCut;
        return out;
      }
    }
  }
  if (atlas.trefoil_index.winding(tr) != 0) {
    out.kind = PhaseLabel::Kind::Trefoil;
    return out;
  }
  for (Branch b : {Branch::MinusI, Branch::PlusI}) {
    if (atlas.tongue_index[branch_index(b)].winding(tr) != 0) {
      out.kind = PhaseLabel::Kind::TwoCut;
      out.branch = rotate_branch(b, j);
      return out;
    }
  }
  out.kind = PhaseLabel::Kind::OneCut;
  out.branch = rotate_branch(Branch::MinusI, j);
  return out;
}


// ---------------------------------------------------------------- Boutroux conditions

/// int_{z_k}^{z_l} w dz and int_{z_k}^{z_l} dz / (2w) along the straight segment, w^2 = Q.
///
/// With z = m - d cos(theta), m = (z_k + z_l)/2, d = (z_l - z_k)/2, the square root of
/// (z - z_k)(z - z_l) is i d sin(theta), so both integrands are smooth on [0, pi]:
///   w dz = (i/2) d^2 sin^2(theta) g dtheta,   dz/(2w) = dtheta / (i g),
/// g = sqrt((z - z_m)(z - z_n)) continued in theta. `germ` is the constant C in
/// w = C sqrt(z - z_k) near z_k, with sqrt(z - z_k) taken on the ray of angle `phi` (arg d
/// up to a multiple of 2 pi supplied by the caller).
struct SegmentPeriods {
  cplx integral{0}, dperiod{0}, germ{0};
  std::size_t nodes = 0;
};

namespace detail {

inline SegmentPeriods segment_periods_n(const std::array<cplx, 4>& z, int k, int l, std::size_t n, double phi) {
  int others[2], o = 0;
  for (int i = 0; i < 4; ++i)
    if (i != k && i != l) others[o++] = i;
  const cplx m = 0.5 * (z[k] + z[l]), d = 0.5 * (z[l] - z[k]);
  const cplx zm = z[others[0]], zn = z[others[1]];
  const auto& gl = gauss_legendre(n);
  cplx g = std::sqrt((z[k] - zm) * (z[k] - zn));
  const cplx g0 = g;
  SegmentPeriods out;
  const double pi = std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = 0.5 * pi * (1 + gl.nodes[i]);
    const double wt = 0.5 * pi * gl.weights[i];
    const cplx zz = m - d * std::cos(theta);
    cplx gi = std::sqrt((zz - zm) * (zz - zn));
    if (std::abs(gi + g) < std::abs(gi - g)) gi = -gi;
    g = gi;
    const double s = std::sin(theta);
    out.integral += wt * cplx(0, 0.5) * d * d * s * s * gi;
    out.dperiod += wt / (cplx(0, 1) * gi);
  }
  out.germ = cplx(0, 0.5) * g0 * std::sqrt(2 * std::abs(d)) * std::polar(1.0, std::arg(d) - 0.5 * phi);
  out.nodes = n;
  return out;
}

}  // namespace detail

/// Segment periods with the node count doubled from 64 until two successive values agree to 1e-10.
inline SegmentPeriods segment_periods(const std::array<cplx, 4>& z, int k, int l, double phi) {
  SegmentPeriods prev = detail::segment_periods_n(z, k, l, 64, phi);
  for (std::size_t n = 128; n <= 8192; n *= 2) {
    SegmentPeriods cur = detail::segment_periods_n(z, k, l, n, phi);
    const double change = std::abs(cur.integral - prev.integral) + std::abs(cur.dperiod - prev.dperiod);
    if (change <= 1e-10 * std::max(1.0, std::abs(cur.integral) + std::abs(cur.dperiod))) return cur;
    prev = cur;
  }
  throw std::runtime_error("segment_periods: quadrature did not stabilise");
}

/// Labels: the common zero z0 and the two partners defining the cycles {z0, z1} and {z0, z2}.
struct CycleLabels {
  int z0 = 0, z1 = 1, z2 = 2;
};

/// Periods B_alpha = Re int_{z0}^{z1} w dz, B_beta = Re int_{z0}^{z2} w dz, on one sheet: the germ
/// of w at z0 along the second segment is the counterclockwise continuation of the germ along the
/// first. The overall sign of w is immaterial (it flips both rows of the Jacobian).
struct BoutrouxPeriods {
  SegmentPeriods alpha, beta;
  double b_alpha = 0, b_beta = 0;
  /// det d(B_alpha, B_beta)/d(Re K, Im K) = Im(P_alpha conj(P_beta)), P = int dz/(2w).
  double jacobian_det() const { return (alpha.dperiod * std::conj(beta.dperiod)).imag(); }
};

inline BoutrouxPeriods boutroux_periods(const QuarticQ& q, const CycleLabels& lab) {
  const auto& z = q.zeros;
  const double phi1 = std::arg(z[lab.z1] - z[lab.z0]);
  double delta = std::arg(z[lab.z2] - z[lab.z0]) - phi1;
  while (delta <= 0) delta += 2 * std::numbers::pi;
  while (delta > 2 * std::numbers::pi) delta -= 2 * std::numbers::pi;
  BoutrouxPeriods out;
  out.alpha = segment_periods(z, lab.z0, lab.z1, phi1);
  out.beta = segment_periods(z, lab.z0, lab.z2, phi1 + delta);
  if (std::abs(out.beta.germ + out.alpha.germ) < std::abs(out.beta.germ - out.alpha.germ)) {
    out.beta.integral = -out.beta.integral;
    out.beta.dperiod = -out.beta.dperiod;
    out.beta.germ = -out.beta.germ;
  }
  out.b_alpha = out.alpha.integral.real();
  out.b_beta = out.beta.integral.real();
  return out;
}

/// Chooses z0, z1, z2 to maximise the distance between each cycle segment and the two zeros not on it.
inline CycleLabels choose_labels(const std::array<cplx, 4>& z) {
  CycleLabels best;
  double best_clear = -1;
  auto clearance = [&](int k, int l) {
    double c = 1e300;
    for (int i = 0; i < 4; ++i)
      if (i != k && i != l) c = std::min(c, segment_distance(z[i], z[k], z[l]));
    return c;
  };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) {
        if (b == a || c == a) continue;
        const double cl = std::min(clearance(a, b), clearance(a, c));
        if (cl > best_clear + 1e-12) {
          best_clear = cl;
          best = {a, b, c};
        }
      }
  return best;
}

/// Reorders `next` so that next[i] is the zero nearest to prev[i] (greedy, deterministic).
inline std::array<cplx, 4> match_zeros(const std::array<cplx, 4>& prev, const std::array<cplx, 4>& next) {
  std::array<cplx, 4> out{};
  std::array<bool, 4> used{};
  for (int i = 0; i < 4; ++i) {
    int best = -1;
    for (int j = 0; j < 4; ++j)
      if (!used[j] && (best < 0 || std::abs(next[j] - prev[i]) < std::abs(next[best] - prev[i]))) best = j;
    used[best] = true;
    out[i] = next[best];
  }
  return out;
}

inline double min_zero_gap(const std::array<cplx, 4>& z) {
  double g = 1e300;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) g = std::min(g, std::abs(z[i] - z[j]));
  return g;
}

struct BoutrouxOptions {
  double tol = 1e-10;           // |B_alpha| + |B_beta|
  int max_iter = 60;
  double collision_gap = 1e-8;  // zero separation below which the solve reports a boundary
};

struct BoutrouxResult {
  enum class Status { Converged, BoundaryReached, Diverged };
  Status status = Status::Diverged;
  cplx bigK{0};
  QuarticQ q;
  CycleLabels labels;
  int iterations = 0;
  double residual = 0;
  std::vector<double> jacobian_dets;  // one per accepted iterate (including the start)
  std::string diagnostic;

  bool converged() const { return status == Status::Converged; }
};

inline QuarticQ quartic_tracked(cplx t, cplx k, const std::array<cplx, 4>* prev) {
  QuarticQ q = QuarticQ::from_tk(t, k);
  if (prev) q.zeros = match_zeros(*prev, q.zeros);
  return q;
}

/// Damped Newton on (B_alpha, B_beta) as functions of (Re K, Im K).
///
/// `prev_zeros` (optional) fixes the zero ordering by nearest match so that labels from a previous
/// waypoint stay attached to the same zeros; otherwise labels are chosen by segment clearance.
inline BoutrouxResult boutroux_solve(cplx t, cplx k_start, const BoutrouxOptions& opt = {},
                                     const std::array<cplx, 4>* prev_zeros = nullptr,
                                     const CycleLabels* labels = nullptr) {
  BoutrouxResult res;
  QuarticQ q = quartic_tracked(t, k_start, prev_zeros);
  res.labels = labels ? *labels : choose_labels(q.zeros);
  cplx k = k_start;
  BoutrouxPeriods per = boutroux_periods(q, res.labels);
  double norm = std::abs(per.b_alpha) + std::abs(per.b_beta);
  res.jacobian_dets.push_back(per.jacobian_det());
  for (int it = 0; it < opt.max_iter; ++it) {
    if (min_zero_gap(q.zeros) < opt.collision_gap) {
      res.status = BoutrouxResult::Status::BoundaryReached;
      res.diagnostic = "zero collision";
      break;
    }
    if (norm <= opt.tol) {
      res.status = BoutrouxResult::Status::Converged;
      break;
    }
    // J = [[Re Pa, -Im Pa], [Re Pb, -Im Pb]].
    const double j11 = per.alpha.dperiod.real(), j12 = -per.alpha.dperiod.imag();
    const double j21 = per.beta.dperiod.real(), j22 = -per.beta.dperiod.imag();
    const double det = j11 * j22 - j12 * j21;
    if (det == 0 || !std::isfinite(det)) {
      res.diagnostic = "singular Jacobian";
      break;
    }
    const double du = (j22 * per.b_alpha - j12 * per.b_beta) / det;
    const double dv = (-j21 * per.b_alpha + j11 * per.b_beta) / det;
    double lam = 1;
    bool accepted = false;
    for (int half = 0; half < 30; ++half, lam *= 0.5) {
      const cplx kn = k - lam * cplx(du, dv);
      const QuarticQ qn = quartic_tracked(t, kn, &q.zeros);
      BoutrouxPeriods pn;
      try {
        pn = boutroux_periods(qn, res.labels);
      } catch (const std::exception&) {
        continue;
      }
      const double nn = std::abs(pn.b_alpha) + std::abs(pn.b_beta);
      if (nn < norm || nn <= opt.tol) {
        k = kn;
        q = qn;
        per = pn;
        norm = nn;
        accepted = true;
        break;
      }
    }
    res.iterations = it + 1;
    if (!accepted) {
      res.diagnostic = "line search failed";
      break;
    }
    res.jacobian_dets.push_back(per.jacobian_det());
  }
  if (res.status != BoutrouxResult::Status::BoundaryReached && norm <= opt.tol)
    res.status = BoutrouxResult::Status::Converged;
  if (res.status == BoutrouxResult::Status::Diverged && res.diagnostic.empty()) res.diagnostic = "iteration limit";
  res.bigK = k;
  res.q = q;
  res.residual = norm;
  return res;
}


// ---------------------------------------------------------------- continuation

struct Waypoint {
  cplx t{0}, bigK{0};
  std::array<cplx, 4> zeros{};
  double min_gap = 0;
  int newton_iterations = 0;
};

struct ContinuationResult {
  std::vector<Waypoint> waypoints;
  CycleLabels labels;
  bool boundary_reached = false;
  std::string diagnostic;  // empty on success
  bool ok() const { return diagnostic.empty(); }
};

struct ContinuationOptions {
  double initial_step = 0.05;
  double min_step = 1e-9;
  int max_newton = 8;      // a waypoint needing more Newton steps is retried with a shorter step
  double max_dk = 0.1;     // largest accepted |K| jump between waypoints
  double entry_eps = 1e-3; // inward offset used when entering a two-cut region from its boundary
};

/// Continues a converged (t0, K0) along the straight segment to t1 with adaptive steps and a
/// linear predictor for K. Labels and zero ordering are carried along by nearest match.
inline void continue_segment(ContinuationResult& out, cplx t1, const ContinuationOptions& opt = {},
                             double stop_gap = 0) {
  Waypoint cur = out.waypoints.back();
  cplx dk_prev = 0;
  double dt_prev = 0;
  double h = opt.initial_step;
  const cplx t0 = cur.t;
  const double len = std::abs(t1 - t0);
  double s = 0;
  while (s < len) {
    const double step = std::min(h, len - s);
    const cplx tn = t0 + (t1 - t0) * ((s + step) / len);
    const cplx guess = cur.bigK + (dt_prev > 0 ? dk_prev * (step / dt_prev) : cplx(0));
    BoutrouxOptions bopt;
    bopt.max_iter = opt.max_newton;
    BoutrouxResult r = boutroux_solve(tn, guess, bopt, &cur.zeros, &out.labels);
    if (!r.converged() || std::abs(r.bigK - cur.bigK) > opt.max_dk) {
      h = 0.5 * step;
      if (h < opt.min_step) {
        out.diagnostic = "continuation stalled at t = (" + std::to_string(tn.real()) + ", " + std::to_string(tn.imag()) +
                         "): " + (r.diagnostic.empty() ? "K jump" : r.diagnostic);
        return;
      }
      continue;
    }
    Waypoint w{tn, r.bigK, r.q.zeros, min_zero_gap(r.q.zeros), r.iterations};
    dk_prev = w.bigK - cur.bigK;
    dt_prev = step;
    cur = w;
    out.waypoints.push_back(w);
    s += step;
    if (r.iterations <= 3) h = std::min(2 * h, opt.initial_step);
    if (stop_gap > 0 && w.min_gap < stop_gap) {
      out.boundary_reached = true;
      return;
    }
  }
}

/// Trefoil seed: K(0) = 0 solved from a perturbed start so the value is an output of the solve.
inline ContinuationResult start_at_origin() {
  ContinuationResult out;
  BoutrouxResult r = boutroux_solve(0.0, cplx(0.05, 0.03));
  out.labels = r.labels;
  if (!r.converged()) {
    out.diagnostic = "Boutroux solve at t = 0 failed: " + r.diagnostic;
    return out;
  }
  out.waypoints.push_back({0.0, r.bigK, r.q.zeros, min_zero_gap(r.q.zeros), r.iterations});
  return out;
}

/// Waypoints from a converged starting point to t_target.
///
/// Trefoil targets: straight path from t = 0. Two-cut targets in O_{1,tau}: the nearest point t*
/// of the unbounded tongue sides is a one-cut boundary point with K* = K_onecut(x_tau(t*)); the path
/// enters at t* + eps n (n pointing to the target), starting Newton from K*, then runs straight to
/// the target. One-cut and boundary targets need no Newton solve: the single waypoint comes from abc.
inline ContinuationResult continuation_path(cplx t_target, const RegionAtlas& atlas,
                                            const ContinuationOptions& opt = {}) {
  const PhaseLabel label = classify(t_target, atlas);
  ContinuationResult out;
  switch (label.kind) {
    case PhaseLabel::Kind::Trefoil: {
      out = start_at_origin();
      if (out.ok() && t_target != cplx(0)) continue_segment(out, t_target, opt);
      return out;
    }
    case PhaseLabel::Kind::TwoCut: {
      const int bi = branch_index(label.branch);
      cplx tstar{};
      double best = 1e300;
      for (const auto& side : atlas.outer[bi]) {
        for (std::size_t i = 1; i < side.size(); ++i) {
          const cplx a = side[i - 1], b = side[i];
          const cplx d = b - a;
          const double sp = std::clamp(((t_target - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
          const cplx p = a + sp * d;
          if (std::abs(p - t_target) < best) {
            best = std::abs(p - t_target);
            tstar = p;
          }
        }
      }
      const cplx kstar = onecut_k(branch_x(label.branch, tstar), tstar);
      const cplx dir = (t_target - tstar) / std::abs(t_target - tstar);
      const cplx tentry = tstar + std::min(opt.entry_eps, 0.5 * best) * dir;
      BoutrouxResult r = boutroux_solve(tentry, kstar);
      out.labels = r.labels;
      if (!r.converged()) {
        out.diagnostic = "two-cut entry failed: " + r.diagnostic;
        return out;
      }
      out.waypoints.push_back({tentry, r.bigK, r.q.zeros, min_zero_gap(r.q.zeros), r.iterations});
      continue_segment(out, t_target, opt);
      return out;
    }
    default: {
      const Branch b = label.kind == PhaseLabel::Kind::OneCut ? label.branch : Branch::MinusI;
      const OneCutData d = abc(b, t_target);
      out.waypoints.push_back({t_target, d.q.bigK, d.q.zeros, min_zero_gap(d.q.zeros), 0});
      return out;
    }
  }
}

/// x_tau(t) restricted to the closure of O_(tau): points strictly inside the tongue O_{1,tau}
/// (farther than the boundary tolerance from its sides) are rejected.
inline cplx branch_x(Branch b, cplx t, const RegionAtlas& atlas) {
  const int bi = branch_index(b);
  if (atlas.tongue_index[bi].winding(t) != 0 && atlas.boundary_index[bi].distance(t, 2 * kBoundaryTolerance) > kBoundaryTolerance)
    throw DomainError(std::string("branch_x: t outside the closure of O_(") + branch_name(b) + ")");
  return branch_x(b, t);
}

/// Max over all six zero pairs of |Re int_{z_i}^{z_j} w dz| (segment paths, common sheet irrelevant).
inline double max_pair_period(const QuarticQ& q) {
  double m = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      m = std::max(m, std::abs(segment_periods(q.zeros, i, j, std::arg(q.zeros[j] - q.zeros[i])).integral.real()));
  return m;
}


/// Signed distance from t to the boundary of O_1 (trefoil plus the three tongues): negative
/// inside, positive outside.
inline double signed_distance_to_o1(cplx t, const RegionAtlas& atlas) {
  Polyline loop = atlas.trefoil;
  loop.push_back(loop.front());
  double d = polyline_distance(t, loop);
  for (const auto& sides : atlas.outer)
    for (const auto& side : sides) d = std::min(d, polyline_distance(t, side));
  return classify(t, atlas).kind == PhaseLabel::Kind::OneCut ? d : -d;
}

inline double distance_to_o1(cplx t, const RegionAtlas& atlas) { return std::max(0.0, signed_distance_to_o1(t, atlas)); }

/// int_e^c w dz for a one-cut curve, e = a (from_a) or b, with w = (1/2)(z - c) sqrt((z - a)(z - b))
/// on the straight segment. z = e + (c - e) u^2 removes the square-root endpoint behaviour. The
/// overall sign depends on the square-root branch; callers compare values by continuity.
inline cplx onecut_period(const OneCutData& d, bool from_a, std::size_t nodes = 128) {
  const cplx e = from_a ? d.a : d.b;
  const cplx other = from_a ? d.b : d.a;
  const auto& gl = gauss_legendre(nodes);
  const cplx scale = std::pow(d.c - e, 1.5);
  cplx prev = std::sqrt(e - other);
  cplx acc = 0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double u = 0.5 * (1 + gl.nodes[i]);
    const cplx z = e + (d.c - e) * (u * u);
    cplx r = std::sqrt(z - other);
    if (std::abs(r + prev) < std::abs(r - prev)) r = -r;
    prev = r;
    acc += 0.5 * gl.weights[i] * (z - d.c) * r * scale * (u * u);
  }
  return acc;
}

}  // namespace painleve

#endif
