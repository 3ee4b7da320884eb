// The invariant suite: one check per acceptance criterion, each with a pinned tolerance and a
// time budget. Shared by the acceptance binary and the `verify` subcommand.
#ifndef PAINLEVE_SUITE_HPP
#define PAINLEVE_SUITE_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "painleve/airy.hpp"
#include "painleve/cubicmodel.hpp"
#include "painleve/phase.hpp"
#include "painleve/quaddiff.hpp"
#include "painleve/taufun.hpp"
#include "painleve/zerofind.hpp"

namespace painleve::suite {

struct CheckResult {
  int id = 0;
  std::string name;
  bool value_ok = false;
  double seconds = 0;
  double budget = 0;
  std::string detail;  // measured values against tolerances
  bool passed() const { return value_ok && seconds < budget; }
};

struct Options {
  std::uint64_t seed = 20240611;
  // Receives the n = 3, lambda = inf pole map for the qualitative figure of criterion 14.
  std::function<void(const std::vector<cplx>&, const std::vector<cplx>&, const std::vector<cplx>&, std::size_t,
                     const RegionAtlas&)>
      figure_writer;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline std::vector<cplx> disc_points(int count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<cplx> pts;
  while (static_cast<int>(pts.size()) < count) {
    const cplx z(u(rng), u(rng));
    if (std::abs(z) <= radius) pts.push_back(z);
  }
  return pts;
}

inline std::vector<cplx> box_points(int count, double half, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-half, half);
  std::vector<cplx> pts(count);
  for (auto& p : pts) p = cplx(u(rng), u(rng));
  return pts;
}

inline std::array<SeedWeights<double>, 3> seeds() {
  return {SeedWeights<double>::from_lambda(cplx(1)), SeedWeights<double>::from_lambda(cplx(1, 1)),
          SeedWeights<double>::at_infinity()};
}

inline std::array<ContourWeights<double>, 3> contours() {
  return {ContourWeights<double>::from_lambda(cplx(1)), ContourWeights<double>::from_lambda(cplx(1, 1)),
          ContourWeights<double>::from_lambda(ExtendedComplex<double>::infinity())};
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline std::string sci(double x) {
  std::ostringstream o;
  o.precision(3);
  o << std::scientific << x;
  return o.str();
}

template <class F>
CheckResult timed(int id, std::string name, double budget, F&& body) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  r.budget = budget;
  const auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.value_ok = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

inline double min_pairwise(const std::vector<cplx>& a) {
  double m = 1e300;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) m = std::min(m, std::abs(a[i] - a[j]));
  return m;
}

inline double min_cross(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 1e300;
  for (const auto& x : a)
    for (const auto& y : b) m = std::min(m, std::abs(x - y));
  return m;
}

}  // namespace detail

// ------------------------------------------------------------------ criteria 1-7: identities

/// Ai(z) +- i Bi(z) = 2 e^{+-i pi/3} Ai(z e^{-+2 pi i/3}); `printed_note` receives the error of the
/// variant with e^{+-2 pi i/3} in front, for information.
namespace detail {
#ifdef PAINLEVE_HAVE_FLOAT128
inline constexpr const char* kExtendedName = "float128";
#else
inline constexpr const char* kExtendedName = "double (built without float128)";
#endif
}  // namespace detail

inline CheckResult airy_identities(const Options& o, std::string* printed_note = nullptr) {
  return detail::timed(1, "airy rotation identity and Wronskian", 1.0, [&](CheckResult& r) {
    const double pi = std::numbers::pi;
    const cplx e3 = std::polar(1.0, pi / 3), e23 = std::polar(1.0, 2 * pi / 3);
    double rot = 0, printed = 0, wr_terms = 0, wr_ext = 0;
    for (const cplx z : detail::disc_points(100, 8.0, o.seed)) {
      const auto p = airy_pair<double>(z);
      for (int s : {1, -1}) {
        const cplx lhs = p.ai + double(s) * cplx(0, 1) * p.bi;
        const auto q = airy_pair<double>(cplx(z * (s > 0 ? std::conj(e23) : e23)));
        const cplx ai_rot = q.ai * std::exp(q.log_scale - p.log_scale);
        const cplx rhs = 2.0 * (s > 0 ? e3 : std::conj(e3)) * ai_rot;
        const cplx alt = 2.0 * (s > 0 ? e23 : std::conj(e23)) * ai_rot;
        // Relative to the larger of the two terms combined on the left.
        const double size = std::max(std::abs(p.ai), std::abs(p.bi));
        rot = std::max(rot, std::abs(lhs - rhs) / size);
        printed = std::max(printed, std::abs(lhs - alt) / size);
      }
      const double sc = std::exp(2 * p.log_scale);
      const cplx w = (p.ai * p.bip - p.aip * p.bi) * sc;
      const double terms = std::max({1.0, pi * std::abs(p.ai * p.bip) * sc, pi * std::abs(p.aip * p.bi) * sc});
      wr_terms = std::max(wr_terms, std::abs(w * pi - 1.0) / terms);
#ifdef PAINLEVE_HAVE_FLOAT128
      const auto x = airy_pair<quad>(Complex<quad>(quad(z.real()), quad(z.imag())));
      const Complex<quad> wx = (x.ai * x.bip - x.aip * x.bi) * quad(boost::multiprecision::exp(2 * x.log_scale));
      const Complex<quad> dev = wx * boost::math::constants::pi<quad>() - Complex<quad>(1);
      wr_ext = std::max(wr_ext, static_cast<double>(boost::multiprecision::hypot(dev.real(), dev.imag())));
#else
      wr_ext = std::max(wr_ext, std::abs(w * pi - 1.0));
#endif
    }
    r.value_ok = rot <= 1e-10 && wr_terms <= 1e-10 && wr_ext <= 1e-10;
    r.detail = "rotation " + detail::sci(rot) + ", Wronskian " + detail::sci(wr_terms) +
               " relative to its terms in double and " + detail::sci(wr_ext) + " relative to 1/pi in " +
               detail::kExtendedName + " (tol 1e-10, 100 points, |z| <= 8)";
    if (printed_note)
      *printed_note = "with 2 e^{+-2 pi i/3} in front the rotation identity is off by " + detail::sci(printed);
  });
}

inline CheckResult riccati(const Options& o) {
  return detail::timed(2, "riccati seed residual", 1.0, [&](CheckResult& r) {
    double worst = 0;
    const auto pts = detail::disc_points(100, 5.0, o.seed + 1);
    const auto ws = detail::seeds();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto res = riccati_residual<double>(pts[i], ws[i % 3]);
      if (!res) throw std::runtime_error("riccati sample hit a pole");
      worst = std::max(worst, std::abs(*res));
    }
    r.value_ok = worst <= 1e-11;
    r.detail = "max |q1' - q1^2 - z/2| " + detail::sci(worst) + " (tol 1e-11, 100 points)";
  });
}

inline CheckResult toda(const Options& o) {
  return detail::timed(3, "toda equation for tau", 10.0, [&](CheckResult& r) {
    double worst = 0;
    const auto pts = detail::disc_points(200, 4.0, o.seed + 2);
    for (const auto& w : detail::seeds())
      for (const auto& z : pts)
        for (std::size_t n = 1; n <= 8; ++n) worst = std::max(worst, toda_residual<double>(n, z, w));
    r.value_ok = worst <= 1e-8;
    r.detail = "max relative residual " + detail::sci(worst) + " (tol 1e-8, n<=8, 200 points x 3 lambda)";
  });
}

inline CheckResult backlund(const Options& o) {
  return detail::timed(4, "backlund map against tau", 5.0, [&](CheckResult& r) {
    double worst = 0;
    for (const auto& w : detail::seeds()) {
      SeedCache<double> cache(w);
      for (std::size_t n = 1; n <= 6; ++n) {
        for (const auto& z : detail::disc_points(15, 3.0, o.seed + 10 + n)) {
          const auto a = painleve_triple<double>(n, z, cache);
          const auto b = painleve_triple<double>(n + 1, z, cache);
          if (!a || !b) throw std::runtime_error("backlund sample hit a pole");
          const auto f = backlund_forward(a->q, a->dq, z, n);
          if (!f) throw std::runtime_error("backlund map hit a pole");
          worst = std::max(worst, detail::rel(*f, b->q));
        }
      }
    }
    r.value_ok = worst <= 1e-8;
    r.detail = "max relative error " + detail::sci(worst) + " (tol 1e-8, n<=6)";
  });
}

/// Also reports, without affecting the verdict, how the alternative exponent (n+1)(n+2)/3 fares.
inline CheckResult d_tau_scaling(const Options& o, std::string* note = nullptr) {
  return detail::timed(5, "hankel determinant to tau scaling", 10.0, [&](CheckResult& r) {
    double worst = 0, alt = 0;
    const auto ts = detail::box_points(20, 1.0, o.seed + 3);
    for (const auto& w : detail::contours())
      for (double bigN : {1.0, 2.0, 5.0})
        for (std::size_t n = 0; n <= 6; ++n)
          for (const auto& t : ts) {
            const auto [lhs, rhs] = d_tau_pair<double>(n, t, bigN, w, d_tau_exponent<double>(n));
            worst = std::max(worst, relative_difference(lhs, rhs));
            if (note && bigN != 1.0) {
              const double e = double((n + 1) * (n + 2)) / 3.0;
              const auto [l2, r2] = d_tau_pair<double>(n, t, bigN, w, e);
              alt = std::max(alt, relative_difference(l2, r2));
            }
          }
    r.value_ok = worst <= 1e-8;
    r.detail = "max relative error " + detail::sci(worst) + " with N^((n+1)^2/3) (tol 1e-8, 20 t)";
    if (note) *note = "exponent (n+1)(n+2)/3 gives max relative error " + detail::sci(alt) + " for N in {2,5}";
  });
}

inline CheckResult bridge_identities(const Options& o) {
  return detail::timed(6, "cubic model to painleve bridge", 10.0, [&](CheckResult& r) {
    double worst = 0;
    const auto ts = detail::box_points(20, 1.0, o.seed + 3);
    for (const auto& w : detail::contours())
      for (double bigN : {1.0, 2.0, 5.0})
        for (std::size_t n = 1; n <= 6; ++n)
          for (const auto& t : ts) {
            const cplx z = -t_to_z_scale<double>(bigN) * t;
            const auto b = bridge<double>(n, z, bigN, w);
            if (!b) throw std::runtime_error("bridge sample hit a pole");
            worst = std::max(worst, b->max_relative_error());
          }
    r.value_ok = worst <= 1e-7;
    r.detail = "max relative error " + detail::sci(worst) + " over beta, gamma^2, p (tol 1e-7)";
  });
}

inline CheckResult painleve_residuals(const Options& o) {
  return detail::timed(7, "P2, P34, S2 and Hamiltonian residuals", 10.0, [&](CheckResult& r) {
    std::array<double, 5> worst{};
    for (const auto& w : detail::seeds()) {
      SeedCache<double> cache(w);
      for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& z : detail::disc_points(20, 3.0, o.seed + 100 + n)) {
          const auto t = painleve_triple<double>(n, z, cache);
          if (!t) throw std::runtime_error("residual sample hit a pole");
          const auto res = residuals_from_triple(*t);
          const auto s = residual_scales(*t);
          const std::array<double, 5> v{std::abs(res.p2) / s[0], std::abs(res.p34) / s[1], std::abs(res.s2) / s[2],
                                        std::abs(res.ham1) / s[3], std::abs(res.ham2) / s[4]};
          for (int k = 0; k < 5; ++k) worst[k] = std::max(worst[k], v[k]);
        }
    }
    r.value_ok = *std::max_element(worst.begin(), worst.end()) <= 1e-7;
    r.detail = "P2 " + detail::sci(worst[0]) + " P34 " + detail::sci(worst[1]) + " S2 " + detail::sci(worst[2]) +
               " H " + detail::sci(std::max(worst[3], worst[4])) + " (tol 1e-7)";
  });
}

// ------------------------------------------------------------------ criterion 8: pole structure

inline CheckResult pole_structure(const Options&) {
  return detail::timed(8, "pole simplicity, disjointness and sigma residues", 60.0, [&](CheckResult& r) {
    const Window win({-8, -8}, {8, 8});
    double min_self = 1e300, min_cross = 1e300, res_err = 0;
    std::size_t total = 0, residues = 0;
    bool consistent = true;
    for (const auto& w : detail::seeds()) {
      std::vector<std::vector<cplx>> zs;
      for (std::size_t n = 1; n <= 6; ++n) {
        const LocateResult lr = locate_zeros(tau_evaluator(n, w), win);
        consistent = consistent && lr.consistent();
        zs.push_back(lr.zeros);
        total += lr.zeros.size();
        min_self = std::min(min_self, detail::min_pairwise(lr.zeros));
      }
      for (std::size_t n = 0; n + 1 < zs.size(); ++n) min_cross = std::min(min_cross, detail::min_cross(zs[n], zs[n + 1]));
      // sigma_n has residue 1 at each zero of tau_n; take the zeros of tau_3 nearest the origin.
      std::vector<cplx> poles = zs[2];
      std::sort(poles.begin(), poles.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
      const std::size_t take = w.lambda.infinite ? 4 : 3;
      for (std::size_t i = 0; i < std::min(take, poles.size()); ++i) {
        double rad = 0.25;
        for (const auto& list : zs)
          for (const auto& p : list)
            if (p != poles[i]) rad = std::min(rad, 0.5 * std::abs(p - poles[i]));
        auto s = [&](cplx z) {
          const auto v = sigma<double>(3, z, w);
          return v ? (*v)[0] : cplx(0);
        };
        res_err = std::max(res_err, std::abs(circle_residue(s, poles[i], rad) - 1.0));
        ++residues;
      }
    }
    r.value_ok = consistent && min_self > 1e-6 && min_cross > 1e-6 && res_err <= 1e-6 && residues == 10;
    r.detail = std::to_string(total) + " zeros of tau_1..tau_6, counts " + (consistent ? "consistent" : "INCONSISTENT") +
               ", min separation " + detail::sci(min_self) + ", min tau_n/tau_n+1 distance " + detail::sci(min_cross) +
               ", sigma residue error " + detail::sci(res_err) + " at " + std::to_string(residues) + " poles";
  });
}

// ------------------------------------------------------------------ criteria 9-13: geometry

inline const RegionAtlas& shared_atlas() {
  static const RegionAtlas a = build_atlas();
  return a;
}

inline CheckResult phase_geometry(const Options&) {
  return detail::timed(9, "phase diagram corners, loop crossing, eta invariance", 60.0, [&](CheckResult& r) {
    const RegionAtlas& a = shared_atlas();
    double corner = 0;
    const std::array<cplx, 3> expect{kTcr, kEta * kTcr, std::conj(kEta) * kTcr};
    for (int i = 0; i < 3; ++i) corner = std::max(corner, std::abs(a.corners[i] - expect[i]));
    const double loop = a.loop_crossing[0];
    const double eta = a.eta_invariance_error();
    r.value_ok = corner <= 1e-6 && std::abs(loop - 0.635) <= 5e-3 && eta <= 1e-4;
    r.detail = "corner error " + detail::sci(corner) + " (tol 1e-6), loop crossing " + std::to_string(loop) +
               " (0.635 +- 5e-3), eta invariance " + detail::sci(eta) + " (tol 1e-4)";
  });
}

inline CheckResult boutroux_origin(const Options&) {
  return detail::timed(10, "Boutroux solve at t = 0", 5.0, [&](CheckResult& r) {
    const BoutrouxResult b = boutroux_solve(0.0, cplx(0.05, 0.03));
    if (!b.converged()) throw std::runtime_error(b.diagnostic);
    const double c = std::cbrt(4.0);
    double zero_err = 0;
    for (cplx e : {cplx(0), cplx(-c), -c * kEta, -c * std::conj(kEta)}) {
      double best = 1e300;
      for (const auto& z : b.q.zeros) best = std::min(best, std::abs(z - e));
      zero_err = std::max(zero_err, best);
    }
    double max_det = -1e300;
    for (double d : b.jacobian_dets) max_det = std::max(max_det, d);
    r.value_ok = std::abs(b.bigK) <= 1e-8 && zero_err <= 1e-8 && max_det < 0 && !b.jacobian_dets.empty();
    r.detail = "|K(0)| " + detail::sci(std::abs(b.bigK)) + ", zero error " + detail::sci(zero_err) +
               ", largest Jacobian det " + detail::sci(max_det) + " over " + std::to_string(b.jacobian_dets.size()) +
               " iterates";
  });
}

inline CheckResult trefoil_graph(const Options&) {
  return detail::timed(11, "trefoil critical graph at t = 0", 30.0, [&](CheckResult& r) {
    const double pi = std::numbers::pi;
    const CriticalGraph g = critical_graph(QuarticQ::from_tk(0.0, 0.0));
    auto nearest = [](const CriticalGraph& gr, cplx z) {
      int best = 0;
      for (int i = 1; i < static_cast<int>(gr.zeros.size()); ++i)
        if (std::abs(gr.zeros[i].z - z) < std::abs(gr.zeros[best].z - z)) best = i;
      return best;
    };
    bool ok = g.zeros.size() == 4 && g.short_list.size() == 3 && g.admissible;
    const int centre = nearest(g, 0.0);
    std::set<int> outer;
    for (const auto& [i, j] : g.short_list) {
      ok = ok && (i == centre || j == centre);
      outer.insert(i == centre ? j : i);
    }
    for (int k : {-1, 0, 1}) outer.erase(nearest(g, std::polar(std::cbrt(4.0), pi + 2 * pi * k / 3)));
    ok = ok && outer.empty();
    // Adjacency: the centre touches the end domains 0, 2, 4; each outer zero three consecutive ones.
    bool adj = g.adjacency[centre] == std::set<int>{0, 2, 4};
    for (int i = 0; i < 4; ++i) {
      if (i == centre) continue;
      const int k = static_cast<int>(std::lround(std::arg(g.zeros[i].z) / (pi / 3)) + 6) % 6;
      adj = adj && g.adjacency[i] == std::set<int>{(k + 5) % 6, k, (k + 1) % 6};
    }
    bool stable = true;
    for (double ang : {0.0, 1.1, 2.5, -2.0}) {
      const CriticalGraph h = critical_graph_at(std::polar(1e-3, ang), shared_atlas());
      stable = stable && h.admissible;
      for (int i = 0; i < 4 && stable; ++i) stable = h.adjacency[i] == g.adjacency[nearest(g, h.zeros[i].z)];
    }
    r.value_ok = ok && adj && stable;
    r.detail = std::string("three shorts from 0 to cube roots of -4: ") + (ok ? "yes" : "NO") +
               ", adjacency {0,2,4} and consecutive triples: " + (adj ? "yes" : "NO") +
               ", constant under |dt| = 1e-3: " + (stable ? "yes" : "NO");
  });
}

inline CheckResult boundary_collision(const Options&) {
  return detail::timed(12, "zero pair collision at the trefoil boundary", 60.0, [&](CheckResult& r) {
    const RegionAtlas& a = shared_atlas();
    double worst = 0;
    std::string per;
    for (double ang : {std::numbers::pi, 1.0, -0.4}) {
      // Radius of the trefoil boundary along this ray.
      const cplx dir = std::polar(1.0, ang);
      double rad = -1;
      Polyline loop = a.trefoil;
      loop.push_back(loop.front());
      for (std::size_t i = 1; i < loop.size(); ++i) {
        const cplx p = loop[i - 1], q = loop[i];
        const double den = ((q - p) * std::conj(dir)).imag();
        if (den == 0) continue;
        const double s = -(p * std::conj(dir)).imag() / den;
        if (s < 0 || s > 1) continue;
        const cplx x = p + s * (q - p);
        if ((x * std::conj(dir)).real() > 0) rad = std::abs(x);
      }
      if (rad < 0) throw std::runtime_error("ray misses the trefoil boundary");
      ContinuationResult c = start_at_origin();
      continue_segment(c, rad * dir, {}, 1e-2);
      bool monotone = true;
      for (std::size_t i = 1; i < c.waypoints.size(); ++i)
        monotone = monotone && c.waypoints[i].min_gap <= c.waypoints[i - 1].min_gap + 1e-12;
      const double gap = c.waypoints.back().min_gap;
      worst = std::max(worst, monotone ? gap : 1.0);
      per += " " + detail::sci(gap) + (monotone ? "" : "(non-monotone)");
    }
    r.value_ok = worst < 1e-2;
    r.detail = "final pair distance along three rays:" + per + " (tol < 1e-2)";
  });
}

inline CheckResult equilibrium(const Options&) {
  return detail::timed(13, "equilibrium measure mass, density and S-property", 60.0, [&](CheckResult& r) {
    bool ok = true;
    std::string per;
    for (cplx t : {cplx(0), cplx(5), cplx(-3)}) {
      const CriticalGraph g = critical_graph_at(t, shared_atlas());
      const EquilibriumReport e = equilibrium_check(g);
      const bool good = e.arcs > 0 && std::abs(e.mass - 1.0) <= 1e-6 && e.min_density >= -1e-10 && e.s_property <= 1e-5;
      ok = ok && good;
      std::ostringstream o;
      o << " t=" << t.real() << ": mass-1 " << detail::sci(std::abs(e.mass - 1.0)) << " min density "
        << detail::sci(e.min_density) << " S " << detail::sci(e.s_property) << ";";
      per += o.str();
    }
    r.value_ok = ok;
    r.detail = per.substr(1) + " (tol 1e-6, >= 0, 1e-5)";
  });
}

// ------------------------------------------------------------------ criterion 14: containment

/// Dilation margins delta_n for n = 3..6, calibrated once on the [-8, 8]^2 pole window over
/// lambda in {1, 1+i}: every pole was inside O_1 (largest signed distances -0.024, -0.023, -0.022, -0.020), so the margin
/// is the measured 0 rounded up to 0.01 for atlas resolution, and frozen.
inline constexpr std::array<double, 4> kContainmentMargin{0.01, 0.01, 0.01, 0.01};

struct ContainmentSample {
  std::size_t n = 0;
  double worst = -1e300;  // largest signed distance of a rescaled pole to the boundary of O_1
  std::size_t poles = 0;
};

inline std::vector<ContainmentSample> containment_distances(const std::vector<SeedWeights<double>>& seeds,
                                                            const Window& win = Window({-8, -8}, {8, 8})) {
  const RegionAtlas& a = shared_atlas();
  std::vector<ContainmentSample> out;
  for (std::size_t n = 3; n <= 6; ++n) {
    ContainmentSample s;
    s.n = n;
    const double kappa = t_to_z_scale<double>(double(n));
    for (const auto& w : seeds) {
      for (std::size_t m : {n - 1, n}) {
        const LocateResult lr = locate_zeros(tau_evaluator(m, w), win);
        if (!lr.consistent()) throw std::runtime_error("unresolved poles at n = " + std::to_string(n));
        for (const auto& z : lr.zeros) {
          s.worst = std::max(s.worst, signed_distance_to_o1(-z / kappa, a));
          ++s.poles;
        }
      }
    }
    out.push_back(s);
  }
  return out;
}

inline CheckResult pole_containment(const Options& o) {
  return detail::timed(14, "rescaled poles inside dilated O_1", 120.0, [&](CheckResult& r) {
    const auto samples = containment_distances(
        {SeedWeights<double>::from_lambda(cplx(1)), SeedWeights<double>::from_lambda(cplx(1, 1))});
    bool ok = true;
    for (const auto& s : samples) {
      const double margin = kContainmentMargin[s.n - 3];
      ok = ok && s.worst <= margin;
      r.detail += "n=" + std::to_string(s.n) + ": " + detail::sci(s.worst) + " <= " + detail::sci(margin) + "; ";
    }
    if (o.figure_writer) {
      const auto w = SeedWeights<double>::at_infinity();
      const PoleMap pm = pole_map(3, w, Window({-8, -8}, {8, 8}));
      o.figure_writer(pm.poles_plus, pm.poles_minus, pm.zeros_q, 3, shared_atlas());
      r.detail += "figure n=3 lambda=inf written";
    }
    r.value_ok = ok;
  });
}

struct Notes {
  std::string rotation;  // criterion 1, informational
  std::string exponent;  // criterion 5, informational
};

inline std::vector<CheckResult> run_all(const Options& o, Notes* notes = nullptr) {
  std::vector<CheckResult> out;
  out.push_back(airy_identities(o, notes ? &notes->rotation : nullptr));
  out.push_back(riccati(o));
  out.push_back(toda(o));
  out.push_back(backlund(o));
  out.push_back(d_tau_scaling(o, notes ? &notes->exponent : nullptr));
  out.push_back(bridge_identities(o));
  out.push_back(painleve_residuals(o));
  out.push_back(pole_structure(o));
  out.push_back(phase_geometry(o));
  out.push_back(boutroux_origin(o));
  out.push_back(trefoil_graph(o));
  out.push_back(boundary_collision(o));
  out.push_back(equilibrium(o));
  out.push_back(pole_containment(o));
  return out;
}

}  // namespace painleve::suite

#endif
