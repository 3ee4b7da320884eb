#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "painleve/phase.hpp"

using namespace painleve;

namespace {

const double kPi = std::numbers::pi;

const RegionAtlas& atlas() {
  static const RegionAtlas a = build_atlas();
  return a;
}

double cubic_residual(cplx x, cplx t) { return std::abs(x * x * x - t * x - 1.0) / std::max(1.0, std::pow(std::abs(x), 3)); }

// First crossing of the ray {r e^{i ang}: r > 0} with a polyline, as a radius.
std::vector<double> ray_crossings(double ang, const Polyline& line) {
  const cplx dir = std::polar(1.0, ang);
  std::vector<double> out;
  for (std::size_t i = 1; i < line.size(); ++i) {
    const cplx a = line[i - 1], b = line[i];
    const double den = ((b - a) * std::conj(dir)).imag();
    if (den == 0) continue;
    const double s = -(a * std::conj(dir)).imag() / den;
    if (s < 0 || s > 1) continue;
    const cplx p = a + s * (b - a);
    if ((p * std::conj(dir)).real() > 0) out.push_back(std::abs(p));
  }
  return out;
}

}  // namespace

TEST(Cubic, RootsAtZeroAreCubeRootsOfUnity) {
  auto r = cubic_roots(0.0);
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
  EXPECT_NEAR(std::abs(r[0] - std::conj(kEta)), 0, 1e-14);
  EXPECT_NEAR(std::abs(r[1] - 1.0), 0, 1e-14);
  EXPECT_NEAR(std::abs(r[2] - kEta), 0, 1e-14);
}

TEST(Cubic, DoubleRootAtCriticalT) {
  const auto r = cubic_roots(kTcr);
  int near = 0;
  for (const auto& x : r)
    if (std::abs(x + std::pow(2.0, -1.0 / 3.0)) < 1e-7) ++near;
  EXPECT_EQ(near, 2);
  EXPECT_NEAR(std::abs(t_of_x(-std::pow(2.0, -1.0 / 3.0)) - kTcr), 0, 1e-14);
}

TEST(Cubic, ResidualAndInverseMap) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int i = 0; i < 200; ++i) {
    const cplx t(u(rng), u(rng));
    for (const auto& x : cubic_roots(t)) {
      EXPECT_LE(cubic_residual(x, t), 1e-12);
      EXPECT_LE(std::abs(t_of_x(x) - t), 1e-12 * std::max(1.0, std::abs(t)));
    }
  }
}

TEST(Branch, Anchors) {
  EXPECT_NEAR(std::abs(branch_x(Branch::Zero, 0.0) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(branch_x(Branch::MinusI, 0.0) - kEta), 0, 1e-15);
  EXPECT_NEAR(std::abs(branch_x(Branch::PlusI, 0.0) - std::conj(kEta)), 0, 1e-15);
}

TEST(Branch, AgreesWithDirectContinuationAlongRays) {
  // Continue x_i from its anchor along rays that stay inside O_(i) and compare with the
  // rotated construction.
  for (double ang : {-2.5, -1.6, -0.5, 0.2, 1.0, 2.0}) {
    cplx x = std::conj(kEta);
    cplx prev = 0;
    for (double r = 0.25; r <= 4.0; r += 0.25) {
      const cplx t = std::polar(r, ang);
      if (winding_number(t, atlas().tongues[branch_index(Branch::PlusI)]) != 0) break;
      x = detail::continue_root(prev, x, t);
      prev = t;
      EXPECT_NEAR(std::abs(x - branch_x(Branch::PlusI, t)), 0, 1e-12) << "ang " << ang << " r " << r;
      EXPECT_LE(cubic_residual(x, t), 1e-12);
    }
  }
}

TEST(Branch, DomainErrors) {
  EXPECT_THROW(branch_x(Branch::Zero, cplx(-3, 0), atlas()), DomainError);
  EXPECT_NO_THROW(branch_x(Branch::MinusI, cplx(-3, 0), atlas()));
  // x_0 meets the double root at the corner eta t_cr.
  EXPECT_THROW(branch_x(Branch::Zero, kEta * kTcr), DomainError);
}

TEST(Abc, SystemResiduals) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 60; ++i) {
    const cplx t(u(rng), u(rng));
    for (Branch b : {Branch::Zero, Branch::PlusI, Branch::MinusI}) {
      OneCutData d;
      try {
        d = abc(b, t);
      } catch (const DomainError&) {
        continue;
      }
      for (double r : d.system_residuals()) EXPECT_LE(r, 1e-10);
      EXPECT_LE(d.q.reconstruction_error(), 1e-10);
      EXPECT_EQ(d.q.coeffs[3], cplx(0));
      EXPECT_EQ(d.q.coeffs[1], cplx(1));
    }
  }
}

TEST(Abc, MinusIAtOrigin) {
  const OneCutData d = abc(Branch::MinusI, 0.0);
  const cplx s = std::sqrt(2.0) * std::polar(1.0, kPi / 6);
  EXPECT_NEAR(std::abs(d.a - (kEta - s)), 0, 1e-14);
  EXPECT_NEAR(std::abs(d.b - (kEta + s)), 0, 1e-14);
  EXPECT_NEAR(std::abs(d.c + kEta), 0, 1e-14);
}

TEST(Abc, RotationCovariance) {
  const cplx t(0.7, -2.1);
  const OneCutData m = abc(Branch::MinusI, t);
  const OneCutData z = abc(Branch::Zero, std::conj(kEta) * t * kEta * kEta);  // t_0 with eta-bar t_0 = t
  EXPECT_NEAR(std::abs(z.a - std::conj(kEta) * m.a), 0, 1e-12);
  EXPECT_NEAR(std::abs(z.c - std::conj(kEta) * m.c), 0, 1e-12);
}

TEST(Quartic, FromTkReconstructs) {
  for (cplx t : {cplx(0), cplx(1, 2), cplx(-3, 0.5)})
    for (cplx k : {cplx(0), cplx(0.3, -0.1)}) EXPECT_LE(QuarticQ::from_tk(t, k).reconstruction_error(), 1e-10);
}

TEST(Atlas, AuxiliaryLoopCrossing) {
  EXPECT_NEAR(atlas().loop_crossing[0], 0.635, 5e-3);
  EXPECT_NEAR(atlas().loop_crossing[1], atlas().loop_crossing[0], 1e-6);
}

TEST(Atlas, Corners) {
  const std::array<cplx, 3> expect{kTcr, kEta * kTcr, std::conj(kEta) * kTcr};
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(atlas().corners[i] - expect[i]), 0, 1e-6);
}

TEST(Atlas, EtaInvariance) { EXPECT_LE(atlas().eta_invariance_error(), 1e-4); }

TEST(Atlas, TongueBaseThroughMinusOne) {
  // The base of O_{1,0} is the image of the loop point (0.635/2)^{1/3} under t = x^2 - 1/x.
  const auto r = ray_crossings(kPi, atlas().trefoil);
  ASSERT_EQ(r.size(), 1u);
  const double x = std::cbrt(atlas().loop_crossing[0] / 2);
  EXPECT_NEAR(r[0], std::abs(t_of_x(x)), 1e-6);
}

TEST(Classify, KnownPoints) {
  EXPECT_EQ(classify(0.0, atlas()).kind, PhaseLabel::Kind::Trefoil);
  EXPECT_EQ(classify(kTcr, atlas()).kind, PhaseLabel::Kind::Corner);
  const PhaseLabel five = classify(5.0, atlas());
  EXPECT_EQ(five.kind, PhaseLabel::Kind::OneCut);
  EXPECT_EQ(five.branch, Branch::MinusI);
  const PhaseLabel neg = classify(-3.0, atlas());
  EXPECT_EQ(neg.kind, PhaseLabel::Kind::TwoCut);
  EXPECT_EQ(neg.branch, Branch::Zero);
}

TEST(Classify, BoundaryPoints) {
  const auto& side = atlas().outer[branch_index(Branch::MinusI)][0];
  const cplx p = side[side.size() / 3];
  EXPECT_EQ(classify(p, atlas()).kind, PhaseLabel::Kind::BoundaryOneCut);
  EXPECT_EQ(classify(kEta * p, atlas()).kind, PhaseLabel::Kind::BoundaryOneCut);
}

TEST(Classify, EtaEquivariant) {
  for (double x = -6; x <= 6; x += 0.29)
    for (double y = -6; y <= 6; y += 0.31) {
      const cplx t(x, y);
      const PhaseLabel l = classify(t, atlas());
      PhaseLabel expect = l;
      if (l.kind == PhaseLabel::Kind::OneCut || l.kind == PhaseLabel::Kind::TwoCut) expect.branch = rotate_branch(l.branch, 1);
      EXPECT_EQ(classify(kEta * t, atlas()), expect) << t;
    }
}

TEST(Admissibility, OneCutPeriodVanishesOnAtlasBoundary) {
  // Along rays leaving the one-cut sector O_{0,-i}, Re int_b^c w dz changes sign where the ray
  // meets the unbounded side of a neighbouring tongue.
  for (double ang : {0.6, -0.6, 0.3, -0.3}) {
    std::vector<double> cr;
    for (Branch b : {Branch::MinusI, Branch::PlusI})
      for (const auto& side : atlas().outer[branch_index(b)])
        for (double r : ray_crossings(ang, side)) cr.push_back(r);
    ASSERT_EQ(cr.size(), 1u) << ang;
    const double rc = cr[0];
    const cplx dir = std::polar(1.0, ang);
    const cplx ref = onecut_period(abc(Branch::MinusI, (rc - 0.05) * dir), false);
    auto g = [&](double r) {
      cplx v = onecut_period(abc(Branch::MinusI, r * dir), false);
      if (std::abs(v + ref) < std::abs(v - ref)) v = -v;
      return v.real();
    };
    double lo = rc - 0.05, hi = rc + 0.05;
    const double glo = g(lo);
    ASSERT_LT(glo * g(hi), 0) << ang;
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) * glo > 0 ? lo : hi) = mid;
    }
    EXPECT_NEAR(0.5 * (lo + hi), rc, 1e-4) << ang;
  }
}

TEST(Boutroux, SegmentPeriodOracleAtOrigin) {
  const QuarticQ q = QuarticQ::from_tk(0.0, 0.0);
  int z0 = 0, z1 = 0;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(q.zeros[i]) < 1e-12) z0 = i;
    if (std::abs(q.zeros[i] + std::cbrt(4.0)) < 1e-12) z1 = i;
  }
  const SegmentPeriods p = segment_periods(q.zeros, z0, z1, kPi);
  EXPECT_NEAR(std::abs(p.integral), kPi / 3, 1e-12);
  EXPECT_NEAR(p.integral.real(), 0, 1e-12);
  EXPECT_NEAR(std::abs(p.dperiod), 1.529954037057192695436, 1e-11);
}

TEST(Boutroux, OriginFromPerturbedStart) {
  for (cplx k0 : {cplx(0.05, 0.03), cplx(-0.2, 0.1), cplx(0.3, -0.2)}) {
    const BoutrouxResult r = boutroux_solve(0.0, k0);
    ASSERT_TRUE(r.converged()) << r.diagnostic;
    EXPECT_LE(std::abs(r.bigK), 1e-8);
    EXPECT_LE(r.residual, 1e-10);
    const double c = std::cbrt(4.0);
    for (cplx e : {cplx(0), cplx(-c), -c * kEta, -c * std::conj(kEta)}) {
      double best = 1e300;
      for (const auto& z : r.q.zeros) best = std::min(best, std::abs(z - e));
      EXPECT_LE(best, 1e-8);
    }
    for (double d : r.jacobian_dets) EXPECT_LT(d, 0);
  }
}

TEST(Boutroux, JacobianSignIndependentOfLabels) {
  const QuarticQ q = QuarticQ::from_tk(cplx(-0.5, 0.2), cplx(0.1, 0.05));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        if (a == b || a == c || b == c) continue;
        EXPECT_LT(boutroux_periods(q, {a, b, c}).jacobian_det(), 0);
      }
}

TEST(Boutroux, AllPairPeriodsVanish) {
  EXPECT_GT(max_pair_period(QuarticQ::from_tk(0.0, 0.1)), 1e-3);  // planted non-Boutroux curve
  for (cplx t : {cplx(-0.5, 0.3), cplx(0.8, 0.6), cplx(-3, 0), cplx(2, 3.4)}) {
    const ContinuationResult c = continuation_path(t, atlas());
    ASSERT_TRUE(c.ok()) << c.diagnostic;
    const Waypoint& w = c.waypoints.back();
    EXPECT_EQ(w.t, t);
    EXPECT_LE(max_pair_period(QuarticQ::from_tk(w.t, w.bigK)), 1e-8) << t;
    for (std::size_t i = 1; i < c.waypoints.size(); ++i)
      EXPECT_LT(std::abs(c.waypoints[i].bigK - c.waypoints[i - 1].bigK), 0.1);
  }
}

TEST(Boutroux, OriginTargetIsSingleWaypoint) {
  const ContinuationResult c = continuation_path(0.0, atlas());
  ASSERT_EQ(c.waypoints.size(), 1u);
  EXPECT_LE(std::abs(c.waypoints[0].bigK), 1e-8);
}

TEST(Boutroux, ZeroPairCollidesOnTrefoilBoundary) {
  for (double ang : {kPi, 1.0, -0.4}) {
    const auto r = ray_crossings(ang, atlas().trefoil);
    ASSERT_EQ(r.size(), 1u);
    ContinuationResult c = start_at_origin();
    continue_segment(c, std::polar(r[0], ang), {}, 1e-2);
    EXPECT_TRUE(c.boundary_reached) << ang;
    EXPECT_LT(c.waypoints.back().min_gap, 1e-2);
    for (std::size_t i = 1; i < c.waypoints.size(); ++i) EXPECT_LE(c.waypoints[i].min_gap, c.waypoints[i - 1].min_gap + 1e-12);
  }
}
