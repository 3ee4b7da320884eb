#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "painleve/taufun.hpp"

using namespace painleve;
using cd = std::complex<double>;

namespace {

SeedWeights<double> lam(cd l) { return SeedWeights<double>::from_lambda(l); }
SeedWeights<double> lam_inf() { return SeedWeights<double>::at_infinity(); }

double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<cd> random_points(int count, double radius, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<cd> pts;
  while (static_cast<int>(pts.size()) < count) {
    cd z(u(rng), u(rng));
    if (std::abs(z) <= radius) pts.push_back(z);
  }
  return pts;
}

}  // namespace

TEST(Tau, ZeroIsIdenticallyOne) {
  const auto t = tau<double>(0, cd(3, -2), lam(cd(1, 1)));
  EXPECT_EQ(t.value.value(), cd(1));
  for (const auto& d : t.dvals) EXPECT_TRUE(d.is_zero());
}

TEST(Tau, OneIsTheSeed) {
  const cd z(0.4, -1.1);
  const auto t = tau<double>(1, z, lam(cd(2, 1)));
  const auto jet = seed_jet<double>(z, lam(cd(2, 1)), 4);
  EXPECT_LT(rel(t.value.value(), jet[0]), 1e-15);
  for (int k = 1; k <= 4; ++k) EXPECT_LT(rel(t.dvals[k - 1].value(), jet[k]), 1e-14);
}

TEST(Tau, MatchesHighPrecisionDeterminants) {
  // Determinants of the derivative matrix evaluated with 40-digit arithmetic.
  EXPECT_LT(rel(tau<double>(2, cd(0), lam(cd(0))).value.value(), cd(-0.04219947044674501039016)), 1e-13);
  EXPECT_LT(rel(tau<double>(3, cd(0.7, -1.2), lam(cd(1, 1))).value.value(),
                cd(0.003846570952934229779928, -0.1427783482176246875203)),
            1e-12);
  EXPECT_LT(rel(tau<double>(5, cd(-2, 1.5), lam(cd(1))).value.value(),
                cd(-0.6218669608223784288126, -0.3724655060085979665711)),
            1e-11);
  EXPECT_LT(rel(tau<double>(4, cd(1.1, 0.3), lam_inf()).value.value(),
                cd(0.008501381762088637028874, 0.02221787359797230120487)),
            1e-11);
}

TEST(Tau, CapacityError) { EXPECT_THROW(tau<double>(21, cd(0), lam(cd(1))), CapacityError); }

TEST(Tau, ShiftRuleMatchesFiniteDifferences) {
  const double h = 1e-3;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const cd z : {cd(0.3, 0.2), cd(-1.5, 1.0), cd(2.0, -0.7)}) {
      const auto w = lam(cd(1, 1));
      const auto t = tau<double>(n, z, w);
      for (const cd dir : {cd(1, 0), cd(0, 1)}) {
        auto f = [&](double s) { return tau<double>(n, z + s * h * dir, w).value.value(); };
        const cd fd = (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * h * dir);
        EXPECT_LT(rel(fd, t.dvals[0].value()), 1e-6) << n << " " << z;
        auto g = [&](double s) { return tau<double>(n, z + s * h * dir, w).dvals[2].value(); };
        const cd fd4 = (-g(2) + 8.0 * g(1) - 8.0 * g(-1) + g(-2)) / (12.0 * h * dir);
        EXPECT_LT(rel(fd4, t.dvals[3].value()), 1e-6) << n << " " << z;
      }
    }
  }
}

TEST(Tau, TodaHoldsForSmallN) {
  const auto pts = random_points(60, 4.0, 7);
  for (const auto& w : {lam(cd(1)), lam(cd(1, 1)), lam_inf()}) {
    for (std::size_t n = 1; n <= 8; ++n) {
      for (std::size_t i = n; i < pts.size(); i += 8) EXPECT_LT(toda_residual<double>(n, pts[i], w), 1e-8);
    }
  }
}

TEST(Sigma, ValuesAndPoles) {
  const auto s0 = sigma<double>(0, cd(1, 2), lam(cd(3)));
  ASSERT_TRUE(s0.ok());
  EXPECT_EQ((*s0)[0], cd(0));
  const auto s1 = sigma<double>(1, cd(0), lam(cd(0)));
  ASSERT_TRUE(s1.ok());
  const double ai0 = 0.355028053887817239260063186004183176398;
  const double aip0 = -0.2588194037928067984051835601892039634791;
  EXPECT_LT(rel((*s1)[0], cd(-std::pow(2.0, -1.0 / 3.0) * aip0 / ai0)), 1e-14);
}

TEST(Sigma, ResidueAtZeroOfTauIsOne) {
  // tau_1 = Ai(-2^{-1/3} z) vanishes at z = 2^{1/3} |a_1|.
  const cd z0(std::cbrt(2.0) * 2.338107410459767038489197, 0);
  const int m = 256;
  cd acc = 0;
  const double r = 0.4;
  for (int j = 0; j < m; ++j) {
    const cd e = std::polar(1.0, 2 * M_PI * j / m);
    const auto s = sigma<double>(1, z0 + r * e, lam(cd(0)));
    acc += (*s)[0] * r * e * cd(0, 2 * M_PI / m);
  }
  EXPECT_LT(std::abs(acc / cd(0, 2 * M_PI) - 1.0), 1e-6);
}

TEST(Painleve, RiccatiAtLevelOne) {
  for (const auto& z : random_points(50, 5.0, 11)) {
    const auto r = riccati_residual<double>(z, lam(cd(2, 1)));
    ASSERT_TRUE(r.ok());
    EXPECT_LT(std::abs(*r), 1e-11) << z;
  }
}

TEST(Painleve, QOneAtOrigin) {
  const auto t = painleve_triple<double>(1, cd(0), lam(cd(0)));
  ASSERT_TRUE(t.ok());
  EXPECT_LT(rel(t->q, cd(-0.578616519668479)), 1e-13);
}

TEST(Painleve, ResidualsVanish) {
  for (const auto& w : {lam(cd(1)), lam(cd(2, 1)), lam_inf()}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      for (const auto& z : random_points(20, 3.0, 100 + n)) {
        const auto t = painleve_triple<double>(n, z, w);
        ASSERT_TRUE(t.ok());
        const auto r = residuals_from_triple(*t);
        const auto s = residual_scales(*t);
        EXPECT_LT(std::abs(r.p2) / s[0], 1e-7) << n << z;
        EXPECT_LT(std::abs(r.p34) / s[1], 1e-7) << n << z;
        EXPECT_LT(std::abs(r.s2) / s[2], 1e-7) << n << z;
        EXPECT_LT(std::abs(r.ham1) / s[3], 1e-7) << n << z;
        EXPECT_LT(std::abs(r.ham2) / s[4], 1e-7) << n << z;
      }
    }
  }
}

TEST(Painleve, SigmaFormConstantAtLevelOne) {
  const auto t = painleve_triple<double>(1, cd(0.5, 0.5), lam(cd(1)));
  const auto r = residuals_from_triple(*t);
  // (sigma'')^2 + 4 sigma'^3 + 2 sigma'(z sigma' - sigma) equals 1/4 at n = 1.
  EXPECT_LT(std::abs(r.s2 + 0.25 - 0.25), 1e-10);
}

TEST(Backlund, ForwardMatchesTau) {
  const auto w = lam(cd(1, 1));
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& z : random_points(15, 3.0, 200 + n)) {
      const auto a = painleve_triple<double>(n, z, w);
      const auto b = painleve_triple<double>(n + 1, z, w);
      const auto f = backlund_forward(a->q, a->dq, z, n);
      ASSERT_TRUE(f.ok());
      EXPECT_LT(rel(*f, b->q), 1e-8) << n << z;
      const auto back = backlund_inverse(b->q, b->dq, z, n + 1);
      EXPECT_LT(rel(*back, a->q), 1e-9) << n << z;
    }
  }
}

TEST(Backlund, LevelZeroSymmetry) {
  const cd z(0.3, 0.9);
  const auto w = lam(cd(1));
  const auto q0 = q_value<double>(0, z, w);
  const auto q1 = q_value<double>(1, z, w);
  EXPECT_LT(rel(*q0, -*q1), 1e-15);
  const auto t1 = painleve_triple<double>(1, z, w);
  // q_0 = -q_1 must map to q_1 under the forward map at n = 0.
  const auto f = backlund_forward(Complex<double>(-t1->q), Complex<double>(-t1->dq), z, 0);
  EXPECT_LT(rel(*f, t1->q), 1e-15);
}

TEST(Backlund, PoleSignal) {
  const auto f = backlund_forward(cd(0), cd(0), cd(0), 2);
  EXPECT_TRUE(f.is_pole());
  EXPECT_EQ(f.pole().tau_index, 3u);
}
