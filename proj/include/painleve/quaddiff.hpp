#ifndef PAINLEVE_QUADDIFF_HPP
#define PAINLEVE_QUADDIFF_HPP

// Critical graphs of -Q(z) dz^2 for the quartic Q(z; t) = (1/4)(z^2 - t)^2 + z + K, the
// function U(z) = Re 2 int_e^z Q^{1/2}, S-curve chains and equilibrium-measure checks.
//
// Directions at infinity. Trajectories escape along theta_d = -5 pi/6 + d pi/3, d = 0..5; the end
// domain containing the ray at angle k pi/3 lies between theta_{k+2} and theta_{k+3} (indices mod 6).
// Orthogonal trajectories escape along k pi/3 and are binned by k.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "painleve/phase.hpp"
#include "painleve/quadrature.hpp"
#include "painleve/tracer.hpp"

namespace painleve {

inline double trajectory_direction_angle(int d) { return -5 * std::numbers::pi / 6 + d * std::numbers::pi / 3; }

/// Nearest direction index for an angle, trajectories (theta_d) or orthogonal ones (k pi/3).
inline int direction_bin(double angle, TraceKind kind) {
  const double base = kind == TraceKind::Trajectory ? -5 * std::numbers::pi / 6 : 0.0;
  const double x = (angle - base) / (std::numbers::pi / 3);
  return ((static_cast<int>(std::lround(x)) % 6) + 6) % 6;
}

inline double wrap_angle(double a) {
  const double two_pi = 2 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

class NearDoubleZero : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite critical point: zero of Q of the given order with Q(z) ~ lead (z - z0)^order.
struct CriticalPoint {
  cplx z{0};
  int order = 1;
  cplx lead{0};
};

/// Launch directions of the three trajectories (or orthogonal trajectories) at a simple zero:
/// theta_j = (pi - arg Q'(z0))/3 + 2 pi j/3 for trajectories.
inline std::vector<double> launch_from_zero(cplx dq, TraceKind kind = TraceKind::Trajectory) {
  if (std::abs(dq) < 1e-10) throw NearDoubleZero("launch_from_zero: |Q'| below 1e-10 at the zero");
  return launch_angles(dq, 1, kind);
}

/// Critical points of the quartic: zeros closer than merge_tol are merged into a double zero.
inline std::vector<CriticalPoint> critical_points(const QuarticQ& q, double merge_tol = 1e-6) {
  std::vector<cplx> z(q.zeros.begin(), q.zeros.end());
  std::vector<CriticalPoint> out;
  std::vector<bool> used(z.size(), false);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    CriticalPoint c;
    c.z = z[i];
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      if (!used[j] && std::abs(z[j] - z[i]) < merge_tol) {
        used[j] = true;
        c.z = 0.5 * (z[i] + z[j]);
        c.order = 2;
      }
    }
    used[i] = true;
    // lead = Q^{(m)}(z0) / m!  with Q = (1/4) prod (z - z_k).
    cplx lead = 0.25;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (std::abs(z[j] - c.z) < merge_tol) continue;
      lead *= (c.z - z[j]);
    }
    c.lead = lead;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.z.real() < b.z.real() || (a.z.real() == b.z.real() && a.z.imag() < b.z.imag());
  });
  return out;
}

enum class ArcEnd { Zero, Infinity, Truncated };

struct TrajectoryArc {
  TraceKind kind = TraceKind::Trajectory;
  Polyline points;
  int start_zero = -1;
  int start_slot = -1;
  double launch_angle = 0;
  ArcEnd end = ArcEnd::Truncated;
  int end_zero = -1;
  int end_slot = -1;   // slot at end_zero that carries the same trajectory
  int direction = -1;  // direction bin when end == Infinity
  double far_angle = 0;  // polar angle where the arc crosses |z| = r_out
  double length = 0;
};

/// Polar angle of the first crossing of |z| = r, interpolated on the crossing chord.
inline double crossing_angle(const Polyline& pts, double r) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double r0 = std::abs(pts[i - 1]), r1 = std::abs(pts[i]);
    if (r1 >= r && r0 < r) {
      // Solve |p0 + s (p1 - p0)| = r for s in [0, 1].
      const cplx p0 = pts[i - 1], dp = pts[i] - pts[i - 1];
      const double a = std::norm(dp), b = 2 * std::real(p0 * std::conj(dp)), c = std::norm(p0) - r * r;
      const double s = (-b + std::sqrt(std::max(0.0, b * b - 4 * a * c))) / (2 * a);
      return std::arg(p0 + s * dp);
    }
  }
  return std::arg(pts.back());
}

struct GraphOptions {
  double capture = 1e-4;
  double launch_offset = 1e-5;
  double r_out = 20;
  double max_length = 200;
  double tol = 1e-11;
};

inline QuadField quartic_field(const QuarticQ& q, const std::vector<CriticalPoint>& cps) {
  QuadField f;
  f.q = [q](cplx z) { return q(z); };
  for (const auto& c : cps) f.sinks.push_back(c.z);
  return f;
}

/// Traces one arc from critical point `from` at angle theta and classifies its end.
inline TrajectoryArc trace_arc(const QuadField& f, const std::vector<CriticalPoint>& cps, int from, double theta,
                               TraceKind kind, const GraphOptions& opt = {}) {
  TraceOptions topt;
  topt.capture = opt.capture;
  topt.r_out = opt.r_out;
  topt.max_length = opt.max_length;
  topt.tol = opt.tol;
  TracedArc t = trace_from_critical(f, cps[from].z, theta, kind, topt, opt.launch_offset);
  TrajectoryArc a;
  a.kind = kind;
  a.start_zero = from;
  a.launch_angle = theta;
  a.length = t.length;
  a.points = std::move(t.pts);
  switch (t.end) {
    case TraceEnd::Sink: a.end = ArcEnd::Zero; a.end_zero = t.sink; break;
    case TraceEnd::Infinity:
      a.end = ArcEnd::Infinity;
      a.far_angle = crossing_angle(a.points, opt.r_out);
      a.direction = direction_bin(a.far_angle, kind);
      break;
    default: a.end = ArcEnd::Truncated; break;
  }
  return a;
}

/// Max deviation of arg(Q dz^2) from pi (trajectories) or 0 (orthogonal) over the arc's chords,
/// skipping chords within `skip` of a critical point.
inline double arc_phase_error(const TrajectoryArc& a, const QuadField& f, double skip = 1e-3) {
  double e = 0;
  for (std::size_t i = 1; i < a.points.size(); ++i) {
    const cplx m = 0.5 * (a.points[i] + a.points[i - 1]);
    bool near = false;
    for (const auto& s : f.sinks) near = near || std::abs(m - s) < skip;
    if (near) continue;
    const cplx dz = a.points[i] - a.points[i - 1];
    if (std::abs(dz) == 0) continue;
    const cplx v = f.q(m) * dz * dz;
    const double target = a.kind == TraceKind::Trajectory ? std::numbers::pi : 0.0;
    e = std::max(e, std::abs(wrap_angle(std::arg(v) - target)));
  }
  return e;
}

/// A face of the critical graph: an end domain (index k of the ray at angle k pi/3 it contains),
/// a strip domain (reaching infinity in two directions) or a bounded ring domain.
struct GraphFace {
  enum class Kind { End, Strip, Ring };
  Kind kind = Kind::End;
  int end_domain = -1;
  bool closed = false;
  std::vector<int> zeros;        // boundary zeros, sorted, unique
  std::vector<int> directions;   // directions at infinity touched without a hexagon edge
  int sign = 0;                  // sign of U inside (+1 unshaded, -1 shaded)
  double width = 0;              // strips only: |Re 2 int Q^{1/2}| between the two sides
};

/// The critical graph: all trajectories launched from the finite critical points, short
/// trajectories identified from both ends, adjacency data from a walk around each face.
struct CriticalGraph {
  QuarticQ q;
  std::vector<CriticalPoint> zeros;
  std::vector<std::vector<double>> slot_angles;       // launch angles per zero
  std::vector<TrajectoryArc> arcs;                    // one per (zero, slot)
  std::vector<std::vector<int>> slot_arc;             // arc index per (zero, slot)
  std::vector<std::pair<int, int>> short_list;        // zero pairs joined by a short trajectory
  std::vector<int> short_arcs;                        // representative arc per short trajectory
  std::vector<std::set<int>> adjacency;               // A_i: end domains whose boundary contains zero i
  std::vector<std::set<int>> directions_reached;      // directions d of trajectories from zero i to infinity
  std::array<std::vector<int>, 6> end_domain_zeros;   // zeros on the boundary of end domain k
  std::array<int, 6> shading{};                       // sign of U in end domain k (+1 / -1)
  std::vector<GraphFace> faces;                       // faces[k] is end domain k; strips and rings follow
  std::map<int, std::array<int, 2>> arc_faces;        // faces on the two sides of each arc (canonical id)
  std::vector<int> support;                           // short arcs bordered by unshaded faces on both sides
  bool admissible = false;
  std::vector<std::string> diagnostics;
  std::array<int, 6> arcs_per_direction{};

  /// Canonical arc id: a short trajectory is traced from both ends; the smaller index represents it.
  int canonical(int arc) const {
    const auto& a = arcs[arc];
    if (a.end != ArcEnd::Zero || a.end_slot < 0) return arc;
    return std::min(arc, slot_arc[a.end_zero][a.end_slot]);
  }
  int strip_count() const {
    return static_cast<int>(std::count_if(faces.begin(), faces.end(), [](const GraphFace& f) { return f.kind == GraphFace::Kind::Strip; }));
  }
};

namespace detail {

inline int nearest_slot(const std::vector<double>& angles, double a) {
  int best = 0;
  for (int s = 1; s < static_cast<int>(angles.size()); ++s)
    if (std::abs(wrap_angle(angles[s] - a)) < std::abs(wrap_angle(angles[best] - a))) best = s;
  return best;
}

/// Directed edge of the critical graph: leaving zero `zero` along `slot` (outward) or arriving at it
/// from infinity along that slot (inward; only for arcs that end at infinity).
struct DirEdge {
  int zero = -1, slot = -1;
  bool outward = true;
  bool operator<(const DirEdge& o) const {
    return std::tie(zero, slot, outward) < std::tie(o.zero, o.slot, o.outward);
  }
  bool operator==(const DirEdge& o) const { return zero == o.zero && slot == o.slot && outward == o.outward; }
};

struct FaceWalk {
  bool closed = false;
  std::vector<DirEdge> edges;     // in walk order
  std::vector<int> zeros;         // in walk order, with repeats
  std::vector<int> hexagon;       // hexagon edges D_j -> D_{j+1} used
  std::vector<int> infinity_hits; // direction vertices passed without a hexagon edge
  std::vector<int> sequence;      // zeros (>= 0) and infinity hits (-1 - d) in walk order
};

/// Walks the face on the left of a starting hexagon edge (hex >= 0) or directed edge.
/// At a zero the next edge is the first one clockwise from the arrival edge; at infinity in
/// direction d the next edge is the arc with the next larger far-angle offset, else the hexagon edge.
inline FaceWalk walk_face(const CriticalGraph& g, int hex, DirEdge start) {
  std::array<std::vector<std::pair<double, int>>, 6> incoming;
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    const auto& arc = g.arcs[a];
    if (arc.end != ArcEnd::Infinity || arc.kind != TraceKind::Trajectory) continue;
    incoming[arc.direction].push_back(
        {wrap_angle(arc.far_angle - trajectory_direction_angle(arc.direction)), static_cast<int>(a)});
  }
  for (auto& v : incoming) std::sort(v.begin(), v.end());

  FaceWalk fw;
  bool at_inf = false;
  int d = 0, z = -1, s = -1;
  double offset = -1e300;
  auto take = [&](const DirEdge& e) -> bool {
    fw.edges.push_back(e);
    if (!e.outward) {
      at_inf = false, z = e.zero, s = e.slot;
      return true;
    }
    const auto& arc = g.arcs[g.slot_arc[e.zero][e.slot]];
    if (arc.end == ArcEnd::Truncated) return false;
    if (arc.end == ArcEnd::Infinity) {
      at_inf = true, d = arc.direction, offset = wrap_angle(arc.far_angle - trajectory_direction_angle(d));
    } else {
      if (arc.end_slot < 0) return false;
      at_inf = false, z = arc.end_zero, s = arc.end_slot;
    }
    return true;
  };
  if (hex >= 0) {
    fw.hexagon.push_back(hex);
    at_inf = true, d = (hex + 1) % 6, offset = -1e300;
  } else if (!take(start)) {
    return fw;
  }
  for (int step = 0; step < 500; ++step) {
    if (at_inf) {
      int next_arc = -1;
      for (const auto& [o, a] : incoming[d])
        if (o > offset) { next_arc = a; break; }
      if (next_arc < 0) {
        if (hex == d) return fw.closed = true, fw;
        fw.hexagon.push_back(d);
        d = (d + 1) % 6, offset = -1e300;
        continue;
      }
      if (offset > -1e299) fw.infinity_hits.push_back(d), fw.sequence.push_back(-1 - d);
      const DirEdge e{g.arcs[next_arc].start_zero, g.arcs[next_arc].start_slot, false};
      if (hex < 0 && e == start) return fw.closed = true, fw;
      take(e);
      continue;
    }
    fw.zeros.push_back(z);
    fw.sequence.push_back(z);
    const auto& ang = g.slot_angles[z];
    int sn = -1;
    double best = 1e300;
    for (int c = 0; c < static_cast<int>(ang.size()); ++c) {
      if (c == s) continue;
      double diff = std::fmod(ang[s] - ang[c], 2 * std::numbers::pi);
      if (diff <= 0) diff += 2 * std::numbers::pi;
      if (diff < best) best = diff, sn = c;
    }
    const DirEdge e{z, sn, true};
    if (hex < 0 && e == start) return fw.closed = true, fw;
    if (!take(e)) return fw;
  }
  return fw;
}

}  // namespace detail

/// Critical points of a one-cut quartic: simple zeros a, b and the double zero c.
inline std::vector<CriticalPoint> critical_points(const OneCutData& d) {
  std::vector<CriticalPoint> out = {{d.a, 1, 0.25 * (d.a - d.b) * (d.a - d.c) * (d.a - d.c)},
                                    {d.b, 1, 0.25 * (d.b - d.a) * (d.b - d.c) * (d.b - d.c)},
                                    {d.c, 2, 0.25 * (d.c - d.a) * (d.c - d.b)}};
  return out;
}

// ------------------------------------------------------------------ the branch of Q^{1/2} and U

/// Q^{1/2} on the plane cut along `cuts`, normalised as (z^2 - t)/2 + 1/z + O(z^-2) at infinity.
/// Values are obtained by continuation along a ray from infinity that avoids every cut.
class SqrtQ {
 public:
  SqrtQ(QuarticQ q, std::vector<Polyline> cuts) : q_(std::move(q)), cuts_(std::move(cuts)) {
    double r = 0;
    for (const auto& z : q_.zeros) r = std::max(r, std::abs(z));
    for (const auto& c : cuts_)
      for (const auto& p : c) r = std::max(r, std::abs(p));
    scale_ = std::max(1.0, r);
    r_far_ = 3 * scale_ + 2;
  }

  const QuarticQ& quartic() const { return q_; }
  const std::vector<Polyline>& cuts() const { return cuts_; }

  /// Leading part (z^2 - t)/2 + 1/(z - c); the pole c is placed off the integration ray.
  cplx leading(cplx s, cplx c) const { return 0.5 * (s * s - q_.t) + 1.0 / (s - c); }

  /// Q^{1/2} - leading part, evaluated without cancellation in the far region.
  cplx far_remainder(cplx s, cplx c) const {
    const cplx u = s * s - q_.t;
    const cplx x = 4.0 * (s + q_.bigK) / (u * u);
    const cplx r = std::sqrt(1.0 + x) + 1.0;
    return -u * x * x / (4.0 * r * r) + (q_.bigK * s + q_.t) / (s * u) - c / (s * (s - c));
  }

  /// Direction of a ray from z that crosses no cut; the largest clearance from the zeros wins.
  cplx ray_direction(cplx z) const {
    const double base = std::arg(z == cplx(0) ? cplx(1) : z);
    cplx best = std::polar(1.0, base);
    double best_clear = -1;
    for (int m = 0; m < 96; ++m) {
      const int k = (m + 1) / 2 * (m % 2 ? 1 : -1);
      const cplx d = std::polar(1.0, base + k * std::numbers::pi / 48);
      const cplx far = z + (2 * r_far_ + std::abs(z)) * d;
      if (crosses(z, far)) continue;
      double clear = 1e300;
      for (const auto& e : q_.zeros) {
        if (std::abs(e - z) < 1e-9 * scale_) continue;
        clear = std::min(clear, segment_distance(e, z, far));
      }
      if (clear > 0.2 * scale_) return d;
      if (clear > best_clear) best_clear = clear, best = d;
    }
    if (best_clear < 0) throw std::runtime_error("SqrtQ: no cut-free ray from the point");
    return best;
  }

  /// Value of the branch at z together with 2 int_inf^z (Q^{1/2} - leading) along the ray.
  struct RayResult {
    cplx w;
    cplx remainder_integral;
    cplx pole;
  };

  RayResult along_ray(cplx z) const { return along_ray(z, ray_direction(z)); }

  /// Same, along a caller-chosen direction (which must not cross a cut).
  RayResult along_ray(cplx z, cplx d) const {
    const cplx c = z - (scale_ + 1) * d;
    // Breakpoints in the ray parameter r: graded at the start and around every zero ahead.
    std::vector<double> br = {0};
    const double r_end = 2 * r_far_ + std::abs(z);
    for (double h = 1e-6 * scale_; h < r_end; h *= 2) br.push_back(h);
    for (const auto& e : q_.zeros) {
      const double rr = std::real((e - z) * std::conj(d));
      if (rr <= 0 || std::abs(e - z) < 1e-9 * scale_) continue;
      const double rho = std::max(std::abs(z + rr * d - e), 1e-8);
      for (double h = rho / 4; h < r_end; h *= 2) {
        if (rr - h > 0) br.push_back(rr - h);
        br.push_back(rr + h);
      }
      br.push_back(rr);
    }
    br.push_back(r_end);
    std::sort(br.begin(), br.end());
    br.erase(std::remove_if(br.begin(), br.end(), [&](double v) { return v > r_end; }), br.end());
    br.erase(std::unique(br.begin(), br.end(), [](double a, double b) { return std::abs(a - b) < 1e-14; }), br.end());

    const GaussLegendre& g = gauss_legendre(20);
    struct Node {
      double r;
      double weight;   // dr weight
      bool tail;       // node of the [r_end, inf) panel, parametrised by v = r_end / r
    };
    std::vector<Node> nodes;
    for (std::size_t p = 0; p + 1 < br.size(); ++p) {
      const double lo = br[p], hi = br[p + 1];
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (p == 0) {
          // r = hi * v^2 removes a square-root endpoint when z is a zero.
          const double v = 0.5 * (g.nodes[i] + 1);
          nodes.push_back({hi * v * v, 0.5 * g.weights[i] * 2 * hi * v, false});
        } else {
          nodes.push_back({0.5 * (lo + hi) + 0.5 * (hi - lo) * g.nodes[i], 0.5 * (hi - lo) * g.weights[i], false});
        }
      }
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double v = 0.5 * (g.nodes[i] + 1);
      nodes.push_back({r_end / v, 0.5 * g.weights[i] * r_end / (v * v), true});
    }
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.r > b.r; });

    cplx acc = 0;
    cplx prev_w = 0;
    bool have_prev = false;
    cplx w_at_z = 0;
    for (const auto& n : nodes) {
      const cplx s = z + n.r * d;
      cplx rem;
      if (std::abs(s) >= r_far_) {
        rem = far_remainder(s, c);
        prev_w = leading(s, c) + rem;
        have_prev = true;
      } else {
        cplx w = std::sqrt(q_(s));
        if (!have_prev) {
          if (std::abs(w - leading(s, c)) > std::abs(w + leading(s, c))) w = -w;
        } else if (std::abs(w - prev_w) > std::abs(w + prev_w)) {
          w = -w;
        }
        prev_w = w;
        have_prev = true;
        rem = w - leading(s, c);
      }
      acc += rem * d * n.weight;
    }
    // Continue from the last node to z itself.
    w_at_z = std::sqrt(q_(z));
    if (std::abs(w_at_z - prev_w) > std::abs(w_at_z + prev_w)) w_at_z = -w_at_z;
    return {w_at_z, -2.0 * acc, c};
  }

  cplx operator()(cplx z) const { return along_ray(z).w; }

  /// F(z) = Re[2 int^z Q^{1/2}] with the normalisation Re[z^3/3 - t z + 2 log z] + o(1) at infinity.
  double potential(cplx z) const { return potential(z, ray_direction(z)); }

  double potential(cplx z, cplx dir) const {
    const RayResult r = along_ray(z, dir);
    return std::real(r.remainder_integral + z * z * z / 3.0 - q_.t * z) + 2 * std::log(std::abs(z - r.pole));
  }

  double scale() const { return scale_; }

  bool crosses(cplx a, cplx b) const {
    for (const auto& c : cuts_)
      for (std::size_t i = 1; i < c.size(); ++i)
        if (segments_intersect(a, b, c[i - 1], c[i])) return true;
    return false;
  }

 private:

  static bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
    auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
    const double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
    const double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
  }

  QuarticQ q_;
  std::vector<Polyline> cuts_;
  double scale_ = 1;
  double r_far_ = 5;
};

/// U(z) = F(z) - F(e) for a reference zero e, with F the normalised potential of SqrtQ.
class UFunction {
 public:
  UFunction(const QuarticQ& q, std::vector<Polyline> cuts, cplx reference_zero)
      : root_(q, std::move(cuts)), ref_(reference_zero) {
    base_ = root_.potential(ref_);
  }
  double operator()(cplx z) const { return root_.potential(z) - base_; }
  double along(cplx z, cplx dir) const { return root_.potential(z, dir) - base_; }
  const SqrtQ& root() const { return root_; }
  cplx reference() const { return ref_; }

 private:
  SqrtQ root_;
  cplx ref_;
  double base_ = 0;
};

// ------------------------------------------------------------------ the critical graph

/// Traces all critical trajectories, identifies short ones, walks the end domains and shades them.
/// The outer circle must enclose the zeros with room to spare; it grows with them for large |t|.
inline GraphOptions scaled_options(GraphOptions opt, const std::vector<CriticalPoint>& cps) {
  double r = 0;
  for (const auto& c : cps) r = std::max(r, std::abs(c.z));
  opt.r_out = std::max(opt.r_out, 4 * r);
  opt.max_length = std::max(opt.max_length, 10 * opt.r_out);
  return opt;
}

inline CriticalGraph critical_graph(const QuarticQ& q, std::vector<CriticalPoint> cps, const GraphOptions& opt_in = {}) {
  const GraphOptions opt = scaled_options(opt_in, cps);
  CriticalGraph g;
  g.q = q;
  g.zeros = std::move(cps);
  const QuadField f = quartic_field(q, g.zeros);
  const int nz = static_cast<int>(g.zeros.size());
  g.slot_angles.resize(nz);
  g.slot_arc.resize(nz);
  for (int i = 0; i < nz; ++i) {
    const auto& c = g.zeros[i];
    g.slot_angles[i] = c.order == 1 ? launch_from_zero(c.lead) : launch_angles(c.lead, c.order, TraceKind::Trajectory);
    for (std::size_t s = 0; s < g.slot_angles[i].size(); ++s) {
      TrajectoryArc a = trace_arc(f, g.zeros, i, g.slot_angles[i][s], TraceKind::Trajectory, opt);
      a.start_slot = static_cast<int>(s);
      g.slot_arc[i].push_back(static_cast<int>(g.arcs.size()));
      g.arcs.push_back(std::move(a));
    }
  }
  // Match short trajectories to the arrival slot at the far zero.
  for (auto& a : g.arcs) {
    if (a.end == ArcEnd::Truncated) g.diagnostics.push_back("truncated trajectory from zero " + std::to_string(a.start_zero));
    if (a.end == ArcEnd::Infinity) ++g.arcs_per_direction[a.direction];
    if (a.end != ArcEnd::Zero) continue;
    const cplx ze = g.zeros[a.end_zero].z;
    cplx p = a.points.front();
    for (auto it = a.points.rbegin(); it != a.points.rend(); ++it) {
      if (std::abs(*it - ze) > 5 * opt.capture) {
        p = *it;
        break;
      }
    }
    a.end_slot = detail::nearest_slot(g.slot_angles[a.end_zero], std::arg(p - ze));
  }
  for (std::size_t ai = 0; ai < g.arcs.size(); ++ai) {
    const auto& a = g.arcs[ai];
    if (a.end != ArcEnd::Zero) continue;
    const auto& back = g.arcs[g.slot_arc[a.end_zero][a.end_slot]];
    if (back.end != ArcEnd::Zero || back.end_zero != a.start_zero || back.end_slot != a.start_slot) {
      g.diagnostics.push_back("short trajectory from zero " + std::to_string(a.start_zero) +
                              " is not confirmed from its far end");
      continue;
    }
    if (std::make_pair(a.start_zero, a.start_slot) < std::make_pair(a.end_zero, a.end_slot)) {
      g.short_list.push_back({a.start_zero, a.end_zero});
      g.short_arcs.push_back(static_cast<int>(ai));
    }
  }

  g.adjacency.assign(nz, {});
  g.directions_reached.assign(nz, {});
  for (const auto& a : g.arcs)
    if (a.end == ArcEnd::Infinity) g.directions_reached[a.start_zero].insert(a.direction);

  // U with cuts along short trajectories between simple zeros.
  std::vector<Polyline> cuts;
  for (int a : g.short_arcs)
    if (g.zeros[g.arcs[a].start_zero].order == 1 && g.zeros[g.arcs[a].end_zero].order == 1)
      cuts.push_back(g.arcs[a].points);
  int ref = 0;
  for (int i = 0; i < nz; ++i)
    if (g.zeros[i].order == 1) { ref = i; break; }
  const UFunction u(q, cuts, g.zeros[ref].z);

  // Faces: the six end domains first, then whatever directed edges remain.
  std::map<detail::DirEdge, int> edge_face;
  std::vector<detail::FaceWalk> walks;
  auto absorb = [&](const detail::FaceWalk& fw, GraphFace face) {
    const int id = static_cast<int>(g.faces.size());
    face.closed = fw.closed;
    std::set<int> zs(fw.zeros.begin(), fw.zeros.end());
    face.zeros.assign(zs.begin(), zs.end());
    std::set<int> ds(fw.infinity_hits.begin(), fw.infinity_hits.end());
    face.directions.assign(ds.begin(), ds.end());
    for (const auto& e : fw.edges) edge_face.emplace(e, id);
    g.faces.push_back(face);
    walks.push_back(fw);
  };
  bool walks_ok = true;
  for (int k = 0; k < 6; ++k) {
    const detail::FaceWalk fw = detail::walk_face(g, (k + 2) % 6, {});
    GraphFace face;
    face.kind = GraphFace::Kind::End;
    face.end_domain = k;
    if (!fw.closed) {
      walks_ok = false;
      g.diagnostics.push_back("walk around end domain " + std::to_string(k) + " did not close");
    }
    if (fw.hexagon.size() != 1) g.diagnostics.push_back("end domain " + std::to_string(k) + " spans several directions");
    absorb(fw, face);
  }
  std::vector<detail::DirEdge> all_edges;
  for (int z = 0; z < nz; ++z)
    for (int sl = 0; sl < static_cast<int>(g.slot_arc[z].size()); ++sl) {
      const auto& arc = g.arcs[g.slot_arc[z][sl]];
      if (arc.end == ArcEnd::Truncated) continue;
      all_edges.push_back({z, sl, true});
      if (arc.end == ArcEnd::Infinity) all_edges.push_back({z, sl, false});
    }
  for (const auto& e : all_edges) {
    if (edge_face.count(e)) continue;
    const detail::FaceWalk fw = detail::walk_face(g, -1, e);
    GraphFace face;
    face.kind = fw.infinity_hits.empty() ? GraphFace::Kind::Ring : GraphFace::Kind::Strip;
    if (!fw.closed) {
      walks_ok = false;
      g.diagnostics.push_back("walk around an interior face did not close");
    }
    absorb(fw, face);
  }

  for (int k = 0; k < 6; ++k) {
    g.end_domain_zeros[k] = g.faces[k].zeros;
    for (int z : g.faces[k].zeros) g.adjacency[z].insert(k);
  }
  std::map<int, std::vector<int>> sides;
  for (const auto& [e, f] : edge_face) sides[g.canonical(g.slot_arc[e.zero][e.slot])].push_back(f);
  for (const auto& [a, fs] : sides)
    if (fs.size() == 2) g.arc_faces[a] = {fs[0], fs[1]};

  // Face signs: a far point for end domains, a point just left of a boundary chord otherwise.
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    auto& face = g.faces[f];
    if (face.kind == GraphFace::Kind::End) {
      face.sign = u(std::polar(3 * u.root().scale() + 3, face.end_domain * std::numbers::pi / 3)) > 0 ? 1 : -1;
      g.shading[face.end_domain] = face.sign;
      continue;
    }
    for (const auto& e : walks[f].edges) {
      const auto& arc = g.arcs[g.slot_arc[e.zero][e.slot]];
      const std::size_t m = arc.points.size() / 2;
      if (m < 1) continue;
      // Direction of travel along the arc for this directed edge.
      cplx dz = arc.points[m + 1 < arc.points.size() ? m + 1 : m] - arc.points[m - 1];
      if (!e.outward) dz = -dz;
      const cplx pt = arc.points[m] + 1e-3 * cplx(0, 1) * dz / std::abs(dz);
      face.sign = u(pt) > 0 ? 1 : -1;
      break;
    }
  }

  // Strip widths: |Re 2 int Q^{1/2}| across the strip between a zero on each side.
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    auto& face = g.faces[f];
    if (face.kind != GraphFace::Kind::Strip) continue;
    const auto& seq = walks[f].sequence;
    std::vector<int> side1, side2;
    int hits = 0;
    for (int v : seq) {
      if (v < 0) { ++hits; continue; }
      (hits == 1 ? side2 : side1).push_back(v);
    }
    if (side1.empty() || side2.empty()) continue;
    face.width = std::abs(u(g.zeros[side1.front()].z) - u(g.zeros[side2.front()].z));
  }

  // Support: short arcs with unshaded faces on both sides.
  bool coloring_ok = true;
  for (int sa : g.short_arcs) {
    const auto it = g.arc_faces.find(g.canonical(sa));
    if (it == g.arc_faces.end()) continue;
    const int s0 = g.faces[it->second[0]].sign, s1 = g.faces[it->second[1]].sign;
    if (s0 > 0 && s1 > 0) g.support.push_back(sa);
    if (s0 < 0 && s1 < 0) {
      coloring_ok = false;
      g.diagnostics.push_back("short trajectory with shaded faces on both sides");
    }
  }
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    if (g.arcs[a].end != ArcEnd::Infinity) continue;
    const auto it = g.arc_faces.find(static_cast<int>(a));
    if (it == g.arc_faces.end()) continue;
    const auto& f0 = g.faces[it->second[0]];
    const auto& f1 = g.faces[it->second[1]];
    if (f0.kind == GraphFace::Kind::End && f1.kind == GraphFace::Kind::End && f0.sign == f1.sign) {
      coloring_ok = false;
      g.diagnostics.push_back("infinite trajectory with equally shaded end domains on both sides");
    }
  }

  // Admissibility for four simple zeros.
  bool adm = walks_ok && coloring_ok;
  bool all_simple = nz == 4;
  for (const auto& c : g.zeros) all_simple = all_simple && c.order == 1;
  if (!all_simple) {
    adm = false;
    g.diagnostics.push_back("critical points are not four simple zeros");
  } else {
    if (g.short_list.size() != 3) {
      adm = false;
      g.diagnostics.push_back("expected 3 short trajectories, found " + std::to_string(g.short_list.size()));
    }
    std::vector<int> parent(nz);
    for (int i = 0; i < nz; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& [i, j] : g.short_list) {
      if (find(i) == find(j)) {
        adm = false;
        g.diagnostics.push_back("short trajectories contain a cycle");
      }
      parent[find(i)] = find(j);
    }
    for (int d = 0; d < 6; ++d)
      if (g.arcs_per_direction[d] != 1) {
        adm = false;
        g.diagnostics.push_back("direction " + std::to_string(d) + " carries " +
                                std::to_string(g.arcs_per_direction[d]) + " trajectories");
      }
  }
  // Every face is an end domain: strips and ring domains rule out the admissible diagrams.
  for (const auto& a : g.arcs)
    if (a.end == ArcEnd::Truncated) adm = false;
  for (const auto& face : g.faces) {
    if (face.kind == GraphFace::Kind::End) continue;
    adm = false;
    g.diagnostics.push_back(std::string(face.kind == GraphFace::Kind::Strip ? "strip" : "ring") +
                            " domain present (width " + std::to_string(face.width) + ")");
  }
  g.admissible = adm;
  return g;
}

inline CriticalGraph critical_graph(const QuarticQ& q, const GraphOptions& opt = {}) {
  return critical_graph(q, critical_points(q), opt);
}

/// Cut set used for U: short trajectories between simple zeros.
inline std::vector<Polyline> branch_cuts(const CriticalGraph& g) {
  std::vector<Polyline> cuts;
  for (int a : g.short_arcs) {
    const auto& arc = g.arcs[a];
    if (g.zeros[arc.start_zero].order == 1 && g.zeros[arc.end_zero].order == 1) cuts.push_back(arc.points);
  }
  return cuts;
}

inline UFunction u_function(const CriticalGraph& g) {
  int ref = 0;
  for (int i = 0; i < static_cast<int>(g.zeros.size()); ++i)
    if (g.zeros[i].order == 1) { ref = i; break; }
  return UFunction(g.q, branch_cuts(g), g.zeros[ref].z);
}

// ------------------------------------------------------------------ equilibrium measure

struct EquilibriumReport {
  cplx mass{0};                  // sum over support arcs of -(1/(pi i)) int Q_+^{1/2} dz
  double min_density = 0;        // smallest real part of the density over arc vertices
  double max_density_imag = 0;   // largest |Im| of the density relative to its max modulus (polyline tangents)
  double max_u_on_support = 0;   // max |U| at sampled support points
  double s_property = 0;         // max difference of the two normal derivatives of U
  double min_side_derivative = 0;
  int samples = 0;
  std::size_t arcs = 0;
  bool ok(double mass_tol = 1e-6, double s_tol = 1e-5) const {
    return arcs > 0 && std::abs(mass - 1.0) <= mass_tol && min_density >= -1e-10 && max_density_imag <= 1e-4 &&
           s_property <= s_tol;
  }
};

namespace detail {

/// Support polyline with exact zero endpoints.
inline Polyline closed_arc(const CriticalGraph& g, int arc) {
  Polyline p = g.arcs[arc].points;
  const cplx ze = g.zeros[g.arcs[arc].end_zero].z;
  if (std::abs(p.back() - ze) > 0) p.push_back(ze);
  p.front() = g.zeros[g.arcs[arc].start_zero].z;
  return p;
}

/// Unit tangent at vertex i from the three-point formula on a nonuniform chord-length grid.
inline cplx unit_tangent(const Polyline& p, std::size_t i) {
  const double h1 = std::abs(p[i] - p[i - 1]), h2 = std::abs(p[i + 1] - p[i]);
  const cplx d = (h1 * h1 * (p[i + 1] - p[i]) + h2 * h2 * (p[i] - p[i - 1])) / (h1 * h2 * (h1 + h2));
  return d / std::abs(d);
}

inline cplx nearest_sign(cplx w, cplx ref) { return std::abs(w - ref) <= std::abs(w + ref) ? w : -w; }

/// Integral of the branch w along chord [a, b], given w(b_ref) at the endpoint `b_end` side.
/// When `a_is_zero`, z = a + (b - a) u^2 removes the square-root endpoint.
inline cplx chord_w_integral(const QuarticQ& q, cplx a, cplx b, cplx w_b, bool a_is_zero, bool b_is_zero) {
  const GaussLegendre& g = gauss_legendre(16);
  cplx acc = 0;
  if (a_is_zero || b_is_zero) {
    // Anchor at the zero end; process from the far end inward to continue the sign.
    const cplx z0 = a_is_zero ? a : b;
    const cplx z1 = a_is_zero ? b : a;
    cplx prev = w_b;
    if (!a_is_zero) prev = w_b;  // w_b is then the value at a
    for (int i = static_cast<int>(g.nodes.size()) - 1; i >= 0; --i) {
      const double u = 0.5 * (g.nodes[i] + 1);
      const cplx z = z0 + (z1 - z0) * u * u;
      const cplx w = nearest_sign(std::sqrt(q(z)), prev);
      prev = w;
      acc += w * (z1 - z0) * (2 * u) * (0.5 * g.weights[i]);
    }
    return a_is_zero ? acc : -acc;
  }
  cplx prev = w_b;
  for (int i = static_cast<int>(g.nodes.size()) - 1; i >= 0; --i) {
    const double u = 0.5 * (g.nodes[i] + 1);
    const cplx z = a + (b - a) * u;
    const cplx w = nearest_sign(std::sqrt(q(z)), prev);
    prev = w;
    acc += w * (b - a) * (0.5 * g.weights[i]);
  }
  return acc;
}

/// Branch values along a support arc, taken from its left side.
inline std::vector<cplx> left_values(const QuarticQ& q, const SqrtQ& root, const Polyline& p) {
  const std::size_t n = p.size();
  std::vector<cplx> w(n, 0);
  const std::size_t m = n / 2;
  const cplx tau = (p[m + 1] - p[m - 1]) / std::abs(p[m + 1] - p[m - 1]);
  const cplx side = p[m] + 1e-7 * cplx(0, 1) * tau;
  w[m] = nearest_sign(std::sqrt(q(p[m])), root(side));
  for (std::size_t i = m + 1; i + 1 < n; ++i) w[i] = nearest_sign(std::sqrt(q(p[i])), w[i - 1]);
  for (std::size_t i = m; i-- > 1;) w[i] = nearest_sign(std::sqrt(q(p[i])), w[i + 1]);
  return w;
}

}  // namespace detail

/// Mass, density sign, flatness of U and the S-property on the support arcs of g.
inline EquilibriumReport equilibrium_check(const CriticalGraph& g, double h = 1e-5, int samples_per_arc = 5) {
  EquilibriumReport r;
  const UFunction u = u_function(g);
  const cplx i_pi = cplx(0, std::numbers::pi);
  double max_rho = 0;
  r.min_density = 1e300;
  r.min_side_derivative = 1e300;
  for (int arc : g.support) {
    const Polyline p = detail::closed_arc(g, arc);
    if (p.size() < 4) continue;
    ++r.arcs;
    const std::vector<cplx> w = detail::left_values(g.q, u.root(), p);
    const std::size_t n = p.size();
    cplx integral = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const bool a_zero = i == 0, b_zero = i + 2 == n;
      // Reference value at the end of the chord that is not a zero.
      const cplx ref = b_zero ? w[i] : w[i + 1];
      integral += detail::chord_w_integral(g.q, p[i], p[i + 1], ref, a_zero, b_zero);
    }
    r.mass += -integral / i_pi;
    std::vector<cplx> rho(n, 0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const cplx tau = detail::unit_tangent(p, i);
      rho[i] = -w[i] * tau / i_pi;
      max_rho = std::max(max_rho, std::abs(rho[i]));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      r.min_density = std::min(r.min_density, rho[i].real());
      r.max_density_imag = std::max(r.max_density_imag, std::abs(rho[i].imag()));
    }
    for (int s = 1; s <= samples_per_arc; ++s) {
      const std::size_t i = std::clamp<std::size_t>(n * s / (samples_per_arc + 1), 1, n - 2);
      const cplx nrm = cplx(0, 1) * detail::unit_tangent(p, i);
      r.max_u_on_support = std::max(r.max_u_on_support, std::abs(u(p[i])));
      const double up1 = u(p[i] + h * nrm), up2 = u(p[i] + 2 * h * nrm);
      const double um1 = u(p[i] - h * nrm), um2 = u(p[i] - 2 * h * nrm);
      const double dp = (4 * up1 - up2) / (2 * h), dm = (4 * um1 - um2) / (2 * h);
      r.s_property = std::max(r.s_property, std::abs(dp - dm));
      r.min_side_derivative = std::min({r.min_side_derivative, dp, dm});
      ++r.samples;
    }
  }
  if (max_rho > 0) r.max_density_imag /= max_rho;
  if (r.arcs == 0) r.min_density = 0, r.min_side_derivative = 0;
  return r;
}

// ------------------------------------------------------------------ S-curve chains

/// Weights of the three contours L_k, oriented from infinity at angle (-1 + 2k/3) pi toward the origin.
struct ChainWeights {
  std::array<cplx, 3> alpha{};
  double homology_defect() const { return std::abs(alpha[0] + alpha[1] + alpha[2]); }
};

inline double contour_angle(int k) { return (-1.0 + 2.0 * k / 3.0) * std::numbers::pi; }

/// End domain containing the direction of L_k.
inline int contour_domain(int k) { return direction_bin(contour_angle(k), TraceKind::Orthogonal); }

struct ChainPiece {
  Polyline points;   // oriented; unbounded pieces continue to infinity past the last point
  cplx weight{0};
  bool on_support = false;
  bool unbounded = false;
  int from = -1, to = -1;  // node ids: zeros, then nz + k for infinity along L_k
};

struct SCurveChain {
  std::vector<ChainPiece> pieces;
  ChainWeights weights;
  double max_u_off_support = 0;
  double boundary_error = 0;
  bool valid = false;
  std::vector<std::string> diagnostics;
};

/// Chain homologous to sum alpha_k L_k, supported on the critical graph plus orthogonal
/// trajectories escaping into the shaded end domains. Weights come from flow conservation on a
/// spanning tree that prefers support arcs, then other short arcs, then rays.
inline SCurveChain s_curve(const CriticalGraph& g, const ChainWeights& cw, const GraphOptions& opt_in = {}) {
  const GraphOptions opt = scaled_options(opt_in, g.zeros);
  SCurveChain out;
  out.weights = cw;
  const int nz = static_cast<int>(g.zeros.size());
  if (cw.homology_defect() > 1e-12) out.diagnostics.push_back("weights do not sum to zero");
  struct Edge {
    int u, v;
    Polyline pts;
    bool support, unbounded;
  };
  std::vector<Edge> edges;
  const std::set<int> support(g.support.begin(), g.support.end());
  for (int pass = 0; pass < 2; ++pass)
    for (int a : g.short_arcs) {
      const bool sup = support.count(a) > 0;
      if ((pass == 0) != sup) continue;
      edges.push_back({g.arcs[a].start_zero, g.arcs[a].end_zero, detail::closed_arc(g, a), sup, false});
    }
  const QuadField f = quartic_field(g.q, g.zeros);
  const UFunction u = u_function(g);
  // Orthogonal trajectories along which U decreases: rays into the contour domains, and arcs
  // between zeros (needed when a zero reaches infinity only through another zero, e.g. real t).
  std::array<std::vector<Edge>, 3> rays;
  std::vector<Edge> links;
  std::set<std::pair<int, int>> linked;
  for (int z = 0; z < nz; ++z) {
    const auto& c = g.zeros[z];
    for (double th : launch_angles(c.lead, c.order, TraceKind::Orthogonal)) {
      TrajectoryArc a = trace_arc(f, g.zeros, z, th, TraceKind::Orthogonal, opt);
      cplx probe = a.points.back();
      for (const auto& pt : a.points)
        if (std::abs(pt - c.z) > 0.05) { probe = pt; break; }
      if (a.end == ArcEnd::Zero) probe = a.points[a.points.size() / 2];
      if (u(probe) >= 0) continue;
      if (a.end == ArcEnd::Infinity) {
        for (int k = 0; k < 3; ++k)
          if (a.direction == contour_domain(k)) rays[k].push_back({nz + k, z, Polyline(a.points.rbegin(), a.points.rend()), false, true});
      } else if (a.end == ArcEnd::Zero && linked.insert({std::min(z, a.end_zero), std::max(z, a.end_zero)}).second) {
        Polyline pts = a.points;
        pts.push_back(g.zeros[a.end_zero].z);
        links.push_back({z, a.end_zero, std::move(pts), false, false});
      }
    }
  }
  for (int k = 0; k < 3; ++k) {
    const int dom = contour_domain(k);
    if (g.shading[dom] >= 0) out.diagnostics.push_back("contour end domain " + std::to_string(dom) + " is not shaded");
    if (rays[k].empty()) out.diagnostics.push_back("no orthogonal trajectory into end domain " + std::to_string(dom));
    // Rays from zeros on the domain boundary first.
    std::stable_sort(rays[k].begin(), rays[k].end(), [&](const Edge& a, const Edge& b) {
      auto on = [&](int z) { const auto& v = g.end_domain_zeros[dom]; return std::find(v.begin(), v.end(), z) != v.end(); };
      return on(a.v) && !on(b.v);
    });
    for (auto& e : rays[k]) edges.push_back(std::move(e));
  }
  for (auto& e : links) edges.push_back(std::move(e));

  // Spanning forest in priority order.
  const int nn = nz + 3;
  std::vector<int> parent(nn);
  for (int i = 0; i < nn; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<std::vector<std::pair<int, int>>> adj(nn);  // (neighbour, edge)
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const int a = find(edges[e].u), b = find(edges[e].v);
    if (a == b) continue;
    parent[a] = b;
    adj[edges[e].u].push_back({edges[e].v, e});
    adj[edges[e].v].push_back({edges[e].u, e});
  }
  for (int k = 1; k < 3; ++k)
    if (find(nz + k) != find(nz)) out.diagnostics.push_back("contour endpoints are not connected by the graph");

  // Root at infinity along L_0; flow parent -> child equals minus the subtree supply.
  std::vector<cplx> supply(nn, 0);
  for (int k = 0; k < 3; ++k) supply[nz + k] = cw.alpha[k];
  std::vector<int> order, par(nn, -1), par_edge(nn, -1);
  std::vector<bool> seen(nn, false);
  order.push_back(nz);
  seen[nz] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto [v, e] : adj[order[i]])
      if (!seen[v]) seen[v] = true, par[v] = order[i], par_edge[v] = e, order.push_back(v);
  std::vector<cplx> sub = supply;
  for (std::size_t i = order.size(); i-- > 1;) sub[par[order[i]]] += sub[order[i]];
  for (std::size_t i = 1; i < order.size(); ++i) {
    const int v = order[i];
    const cplx wgt = -sub[v];
    if (std::abs(wgt) < 1e-14) continue;
    const Edge& e = edges[par_edge[v]];
    ChainPiece piece;
    piece.points = e.pts;
    piece.from = e.u;
    piece.to = e.v;
    if (e.u != par[v]) {
      std::reverse(piece.points.begin(), piece.points.end());
      std::swap(piece.from, piece.to);
    }
    piece.weight = wgt;
    piece.on_support = e.support;
    piece.unbounded = e.unbounded;
    out.pieces.push_back(std::move(piece));
  }

  // Boundary: net outflow at each node must equal the supplies.
  std::vector<cplx> net(nn, 0);
  for (const auto& p : out.pieces) net[p.from] += p.weight, net[p.to] -= p.weight;
  for (int i = 0; i < nn; ++i) out.boundary_error = std::max(out.boundary_error, std::abs(net[i] - supply[i]));

  // U <= 0 off the support.
  for (const auto& p : out.pieces) {
    if (p.on_support) continue;
    const std::size_t stride = std::max<std::size_t>(1, p.points.size() / 200);
    for (std::size_t i = 0; i < p.points.size(); i += stride) {
      bool near = false;
      for (const auto& c : g.zeros) near = near || std::abs(p.points[i] - c.z) < 1e-3;
      if (!near) out.max_u_off_support = std::max(out.max_u_off_support, u(p.points[i]));
    }
  }
  out.valid = out.diagnostics.empty() && out.boundary_error < 1e-12 && out.max_u_off_support <= 1e-6;
  return out;
}

/// Critical graph of the equilibrium quadratic differential at t: one-cut data where t lies in
/// the closure of O_0, otherwise the Boutroux curve reached by continuation from the atlas.
inline CriticalGraph critical_graph_at(cplx t, const RegionAtlas& atlas, const GraphOptions& opt = {}) {
  const PhaseLabel label = classify(t, atlas);
  if (label.kind == PhaseLabel::Kind::OneCut) {
    const OneCutData d = abc(label.branch, t);
    return critical_graph(d.q, critical_points(d), opt);
  }
  const ContinuationResult c = continuation_path(t, atlas);
  if (!c.ok()) throw std::runtime_error("critical_graph_at: " + c.diagnostic);
  return critical_graph(QuarticQ::from_tk(t, c.waypoints.back().bigK), opt);
}

}  // namespace painleve

#endif
