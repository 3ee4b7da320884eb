#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "painleve/quaddiff.hpp"

using namespace painleve;

namespace {

const double kPi = std::numbers::pi;

const RegionAtlas& atlas() {
  static const RegionAtlas a = build_atlas();
  return a;
}

const CriticalGraph& trefoil() {
  static const CriticalGraph g = critical_graph(QuarticQ::from_tk(0.0, 0.0));
  return g;
}

CriticalGraph boutroux_graph(cplx t) {
  const ContinuationResult c = continuation_path(t, atlas());
  EXPECT_TRUE(c.ok()) << c.diagnostic;
  return critical_graph(QuarticQ::from_tk(t, c.waypoints.back().bigK));
}

int nearest_index(const std::vector<CriticalPoint>& zs, cplx z) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(zs.size()); ++i)
    if (std::abs(zs[i].z - z) < std::abs(zs[best].z - z)) best = i;
  return best;
}

int zero_near(const CriticalGraph& g, cplx z) {
  const int i = nearest_index(g.zeros, z);
  EXPECT_LT(std::abs(g.zeros[i].z - z), 1e-8);
  return i;
}

}  // namespace

TEST(Launch, AiryModelAngles) {
  const auto th = launch_from_zero(1.0);
  ASSERT_EQ(th.size(), 3u);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(th[j], kPi / 3 + 2 * kPi * j / 3, 1e-15);
}

TEST(Launch, RotationCovariance) {
  // Pulling back Q dz^2 by z -> w z rotates the launch directions by -arg w.
  const cplx dq(0.7, -1.3);
  const cplx w = std::polar(1.0, 0.4);
  const auto a = launch_from_zero(dq);
  const auto b = launch_from_zero(dq * w * w * w);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(wrap_angle(b[j] - (a[j] - 0.4))), 0.0, 1e-14);
}

TEST(Launch, NearDoubleZeroSignal) {
  // (z - c)^2 (z - a)(z - b) with c split by 1e-12.
  const cplx a(-1.0, 0.5), b(2.0, -0.3), c(0.4, 0.2), c1 = c + 0.5e-12, c2 = c - 0.5e-12;
  const cplx dq = (c1 - c2) * (c1 - a) * (c1 - b);
  EXPECT_THROW(launch_from_zero(dq), NearDoubleZero);
}

TEST(Trace, AiryModelRays) {
  QuadField f;
  f.q = [](cplx z) { return z; };
  f.sinks = {0.0};
  TraceOptions opt;
  for (double th : launch_from_zero(1.0)) {
    const TracedArc arc = trace_from_critical(f, 0.0, th, TraceKind::Trajectory, opt, 1e-5);
    EXPECT_EQ(arc.end, TraceEnd::Infinity);
    double dev = 0;
    for (std::size_t i = 1; i < arc.pts.size(); ++i) dev = std::max(dev, std::abs(wrap_angle(std::arg(arc.pts[i]) - th)));
    EXPECT_LT(dev, 1e-8);
  }
}

TEST(Trace, PhaseInvariantAlongArcs) {
  const auto& g = trefoil();
  const QuadField f = quartic_field(g.q, g.zeros);
  for (const auto& a : g.arcs) EXPECT_LE(arc_phase_error(a, f), 1e-3);
}

TEST(Trace, OrthogonalIsTrajectoryOfNegatedQ) {
  const QuarticQ q = QuarticQ::from_tk(cplx(0.4, 0.9), cplx(0.2, -0.1));
  QuadField f, g;
  f.q = [q](cplx z) { return q(z); };
  g.q = [q](cplx z) { return -q(z); };
  const cplx start(1.3, 0.7), dir = std::polar(1.0, 0.3);
  TraceOptions opt;
  opt.max_length = 5;
  const TracedArc a = trace_trajectory(f, start, dir, TraceKind::Orthogonal, opt);
  const TracedArc b = trace_trajectory(g, start, dir, TraceKind::Trajectory, opt);
  EXPECT_LT(hausdorff(a.pts, b.pts), 1e-8);
}

TEST(Graph, TrefoilShortTrajectories) {
  const auto& g = trefoil();
  ASSERT_EQ(g.zeros.size(), 4u);
  const int centre = zero_near(g, 0.0);
  EXPECT_EQ(g.short_list.size(), 3u);
  std::set<int> outer;
  for (const auto& [i, j] : g.short_list) {
    EXPECT_TRUE(i == centre || j == centre);
    outer.insert(i == centre ? j : i);
  }
  const double r = std::cbrt(4.0);
  for (int k : {-1, 0, 1}) outer.erase(zero_near(g, std::polar(r, kPi + 2 * kPi * k / 3)));
  EXPECT_TRUE(outer.empty());
  EXPECT_TRUE(g.admissible);
  for (const auto& d : g.diagnostics) ADD_FAILURE() << d;
}

TEST(Graph, TrefoilAdjacency) {
  const auto& g = trefoil();
  const int centre = zero_near(g, 0.0);
  EXPECT_EQ(g.adjacency[centre], (std::set<int>{0, 2, 4}));
  EXPECT_TRUE(g.directions_reached[centre].empty());
  for (int i = 0; i < 4; ++i) {
    if (i == centre) continue;
    EXPECT_EQ(g.directions_reached[i].size(), 2u);
    ASSERT_EQ(g.adjacency[i].size(), 3u);
    // Three consecutive end domains around the outer zero's own direction.
    const int k = static_cast<int>(std::lround(std::arg(g.zeros[i].z) / (kPi / 3)) + 6) % 6;
    EXPECT_EQ(g.adjacency[i], (std::set<int>{(k + 5) % 6, k, (k + 1) % 6}));
  }
  for (int k = 0; k < 6; ++k) EXPECT_EQ(g.shading[k], k % 2 ? -1 : 1);
  for (int d = 0; d < 6; ++d) EXPECT_EQ(g.arcs_per_direction[d], 1);
  EXPECT_EQ(g.support.size(), 3u);
}

TEST(Graph, AdjacencyLocallyConstantNearOrigin) {
  const auto& g0 = trefoil();
  for (double ang : {0.0, 1.1, 2.5, -2.0}) {
    const CriticalGraph g = boutroux_graph(std::polar(1e-3, ang));
    ASSERT_TRUE(g.admissible);
    for (int i = 0; i < 4; ++i) {
      const int j = nearest_index(g0.zeros, g.zeros[i].z);
      EXPECT_EQ(g.adjacency[i], g0.adjacency[j]) << "angle " << ang;
    }
  }
}

TEST(Graph, TwoCutSample) {
  const CriticalGraph g = boutroux_graph(-3.0);
  EXPECT_TRUE(g.admissible);
  EXPECT_EQ(g.short_list.size(), 3u);
  EXPECT_EQ(g.support.size(), 2u);
}

TEST(Graph, OneCutUpperHalfPlane) {
  const cplx t(4.0, 1.0);
  ASSERT_EQ(classify(t, atlas()), (PhaseLabel{PhaseLabel::Kind::OneCut, Branch::MinusI}));
  const OneCutData d = abc(Branch::MinusI, t);
  const CriticalGraph g = critical_graph(d.q, critical_points(d));
  ASSERT_EQ(g.support.size(), 1u);
  const auto& arc = g.arcs[g.support[0]];
  const std::set<int> ends{arc.start_zero, arc.end_zero};
  EXPECT_EQ(ends, (std::set<int>{zero_near(g, d.a), zero_near(g, d.b)}));
  EXPECT_EQ(g.zeros[zero_near(g, d.c)].order, 2);
}

TEST(Graph, NonBoutrouxHasStrip) {
  const QuarticQ q = QuarticQ::from_tk(0.0, 0.3);
  EXPECT_GT(max_pair_period(q), 1e-3);
  const CriticalGraph g = critical_graph(q);
  EXPECT_FALSE(g.admissible);
  ASSERT_GE(g.strip_count(), 1);
  double w = 0;
  for (const auto& f : g.faces)
    if (f.kind == GraphFace::Kind::Strip) w = std::max(w, f.width);
  EXPECT_GT(w, 1e-3);
}

TEST(UFunction, OracleOnImaginaryAxis) {
  const UFunction u = u_function(trefoil());
  EXPECT_NEAR(u(cplx(0, 2)), 2.062857778215575106955, 1e-11);
  EXPECT_NEAR(u(cplx(0, 0.5)), 0.3316054496652495312557, 1e-11);
}

TEST(UFunction, VanishesAtZerosAndPathIndependent) {
  const auto& g = trefoil();
  const UFunction u = u_function(g);
  for (const auto& c : g.zeros) EXPECT_NEAR(u(c.z), 0.0, 1e-12);
  for (cplx z : {cplx(0.3, 2.0), cplx(-2.5, -0.4), cplx(1.5, 0.1)}) {
    const double a = u.along(z, std::polar(1.0, std::arg(z)));
    const double b = u.along(z, std::polar(1.0, std::arg(z) + 0.35));
    EXPECT_NEAR(a, b, 1e-8);
  }
}

TEST(UFunction, OneCutSupportBehaviour) {
  const OneCutData d = abc(Branch::MinusI, cplx(4.0, 1.0));
  const CriticalGraph g = critical_graph(d.q, critical_points(d));
  const UFunction u = u_function(g);
  ASSERT_EQ(g.support.size(), 1u);
  const Polyline& p = g.arcs[g.support[0]].points;
  for (int s = 1; s <= 20; ++s) {
    const std::size_t i = p.size() * s / 21;
    EXPECT_LE(std::abs(u(p[i])), 1e-7);
    const cplx tau = (p[i + 1] - p[i - 1]) / std::abs(p[i + 1] - p[i - 1]);
    EXPECT_GT(u(p[i] + 1e-3 * cplx(0, 1) * tau), 0);
    EXPECT_GT(u(p[i] - 1e-3 * cplx(0, 1) * tau), 0);
  }
}

TEST(Equilibrium, MassDensityAndSProperty) {
  const OneCutData d5 = abc(Branch::MinusI, 5.0);
  const std::vector<std::pair<const char*, CriticalGraph>> cases = {
      {"t=0", trefoil()}, {"t=5", critical_graph(d5.q, critical_points(d5))}, {"t=-3", boutroux_graph(-3.0)}};
  for (const auto& [name, g] : cases) {
    const EquilibriumReport r = equilibrium_check(g);
    EXPECT_NEAR(r.mass.real(), 1.0, 1e-6) << name;
    EXPECT_NEAR(r.mass.imag(), 0.0, 1e-6) << name;
    EXPECT_GE(r.min_density, 0.0) << name;
    EXPECT_LE(r.s_property, 1e-5) << name;
    EXPECT_LE(r.max_u_on_support, 1e-7) << name;
    EXPECT_GT(r.min_side_derivative, 0) << name;
    EXPECT_TRUE(r.ok()) << name;
  }
}

TEST(SCurve, ChainsSatisfyInvariant) {
  const ChainWeights w{{cplx(1, 0.5), cplx(-0.3, 1), cplx(-0.7, -1.5)}};
  const OneCutData d5 = abc(Branch::MinusI, 5.0);
  const OneCutData du = abc(Branch::MinusI, cplx(4.0, 1.0));
  for (const CriticalGraph& g : {trefoil(), critical_graph(d5.q, critical_points(d5)),
                                 critical_graph(du.q, critical_points(du)), boutroux_graph(-3.0)}) {
    const SCurveChain c = s_curve(g, w);
    EXPECT_TRUE(c.valid);
    EXPECT_LE(c.max_u_off_support, 1e-6);
    EXPECT_LT(c.boundary_error, 1e-12);
    for (const auto& msg : c.diagnostics) ADD_FAILURE() << msg;
  }
}

TEST(SCurve, RealOneCutChainPassesThroughDoubleZero) {
  const ChainWeights w{{1.0, cplx(-0.5, 0.8), cplx(-0.5, -0.8)}};
  const OneCutData d = abc(Branch::MinusI, 5.0);
  const CriticalGraph g = critical_graph(d.q, critical_points(d));
  const SCurveChain c = s_curve(g, w);
  ASSERT_TRUE(c.valid);
  int rays = 0;
  bool through_c = false;
  const int ic = zero_near(g, d.c);
  for (const auto& p : c.pieces) {
    rays += p.unbounded;
    through_c = through_c || p.from == ic || p.to == ic;
  }
  EXPECT_EQ(rays, 3);
  EXPECT_TRUE(through_c);
}

TEST(SCurve, WeightsMustCancel) {
  const ChainWeights w{{1.0, 1.0, 1.0}};
  const SCurveChain c = s_curve(trefoil(), w);
  EXPECT_FALSE(c.valid);
}
