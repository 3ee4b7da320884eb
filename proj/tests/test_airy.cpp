#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "painleve/airy.hpp"

using painleve::airy_pair;
using cd = std::complex<double>;

namespace {

struct Reference {
  cd w, ai, aip, bi, bip;
};

// Reference values computed with 40-digit arithmetic.
const Reference kTable[] = {
    {{1, 0}, {0.13529241631288141552, 0}, {-0.15914744129679321279, 0}, {1.2074235949528712594, 0},
     {0.93243593339277563296, 0}},
    {{5, 0}, {1.0834442813607441735e-4, 0}, {-2.47413890868462476e-4, 0}, {657.79204417117118244, 0},
     {1435.8190802179825187, 0}},
    {{-5, 0}, {0.35076100902411431979, 0}, {0.32719281855444313679, 0}, {-0.13836913490160057685, 0},
     {0.77841177300189924609, 0}},
    {{3, 4},
     {0.014554546690944634862, -0.047435251515492836146},
     {-0.075209961195903029036, 0.08236407715553779509},
     {1.0363977946545908751, 1.0513762825317121197},
     {0.78788923789635748276, 2.9998668872583759608}},
    {{-7, 2},
     {8.7554400054851872472, -33.673185917617132643},
     {-92.67698337538682414, -11.851566940307156188},
     {33.674869479957548228, 8.7552446549994322304},
     {11.852775344723514198, -92.672546994291592552}},
    {{8, -9},
     {-2.852285723814572497e-6, 3.5523200805693059478e-5},
     {-4.088737006034534896e-5, -1.1695740227241572408e-4},
     {431.5917912088486694, -1212.3505348478411802},
     {-382.19340958175033045, -4441.596909000315519}},
    {{11, 1},
     {-4.4631160656126032944e-12, 8.9759944327174228099e-13},
     {1.5050135760542974257e-11, -2.336611057305804261e-12},
     {-10397293775.526358862, -1604446252.567517692},
     {-34035955276.56095389, -6878143372.5868381624}},
    {{2, -0.5},
     {0.026285105310896857316, 0.025043695308746211239},
     {-0.044015378262056917937, -0.034169181103080453945},
     {2.5273987946989431686, -1.8216184196428052214},
     {2.7705928921631882475, -2.8748527604587155255}},
};

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Airy, MatchesReferenceTable) {
  for (const auto& r : kTable) {
    const auto p = airy_pair<double>(r.w);
    ASSERT_EQ(p.log_scale, 0.0);
    EXPECT_LT(rel(p.ai, r.ai), 1e-12) << "Ai at " << r.w;
    EXPECT_LT(rel(p.aip, r.aip), 1e-12) << "Ai' at " << r.w;
    EXPECT_LT(rel(p.bi, r.bi), 1e-12) << "Bi at " << r.w;
    EXPECT_LT(rel(p.bip, r.bip), 1e-12) << "Bi' at " << r.w;
  }
}

TEST(Airy, WronskianIsOneOverPi) {
  for (double x = -12; x <= 12; x += 1.7) {
    for (double y = -12; y <= 12; y += 2.3) {
      const auto p = airy_pair<double>(cd(x, y));
      const cd wr = p.ai * p.bip - p.aip * p.bi;
      EXPECT_NEAR(std::abs(wr * M_PI - 1.0), 0.0, 1e-11 * std::max(1.0, std::abs(p.ai * p.bip) * M_PI))
          << x << "," << y;
    }
  }
}

TEST(Airy, FirstZerosAreZeros) {
  EXPECT_LT(std::abs(airy_pair<double>(cd(-2.338107410459767038489197, 0)).ai), 1e-15);
  EXPECT_LT(std::abs(airy_pair<double>(cd(-1.018792971647471089017, 0)).aip), 1e-15);
}

TEST(Airy, RegimesAgreeOnOverlapAnnulus) {
  using namespace painleve::detail;
  const double R = painleve::AiryTraits<double>::asymptotic_radius;
  for (double r = R; r <= R + 2; r += 0.5) {
    for (int j = -11; j <= 11; ++j) {
      const double th = j * (2 * M_PI / 3) / 11.5;
      const cd w = std::polar(r, th);
      const auto a = ai_asymptotic<double>(w);
      const double f = std::exp(a.logscale);
      cd y, yp;
      if (std::abs(th) <= M_PI / 3) {
        const auto far = ai_asymptotic<double>(std::polar(R + 4, th));
        const double g = std::exp(far.logscale);
        y = far.ai * g;
        yp = far.aip * g;
        walk<double>(std::polar(R + 4, th), w, y, yp);
      } else {
        y = painleve::AiryTraits<double>::ai0();
        yp = painleve::AiryTraits<double>::aip0();
        walk<double>(cd(0), w, y, yp);
      }
      EXPECT_LT(rel(y, a.ai * f), 1e-9) << w;
      EXPECT_LT(rel(yp, a.aip * f), 1e-9) << w;
    }
  }
}

TEST(Airy, ScalesInsteadOfOverflowing) {
  const auto p = airy_pair<double>(cd(200, 3));
  EXPECT_GT(p.log_scale, 600.0);
  EXPECT_TRUE(std::isfinite(std::abs(p.bi)));
  const auto q = airy_pair<double>(cd(200, 3));
  EXPECT_EQ(p.bi, q.bi);
}

TEST(Airy, SeedJetSatisfiesOde) {
  const auto weights = painleve::SeedWeights<double>::from_lambda(cd(0.3, -0.7));
  const cd z(1.3, 2.1);
  const auto jet = painleve::seed_jet<double>(z, weights, 6);
  EXPECT_LT(std::abs(jet[2] + 0.5 * z * jet[0]), 1e-14);
  const double h = 1e-4;
  const auto jp = painleve::seed_jet<double>(z + h, weights, 6);
  const auto jm = painleve::seed_jet<double>(z - h, weights, 6);
  for (int k = 0; k < 5; ++k) {
    const cd fd = (jp[k] - jm[k]) / (2 * h);
    EXPECT_LT(rel(fd, jet[k + 1]), 1e-7) << k;
  }
}

TEST(Airy, SeedAtInfinityIsPureBi) {
  const auto jet = painleve::seed_jet<double>(cd(0), painleve::SeedWeights<double>::at_infinity(), 2);
  EXPECT_NEAR(jet[0].real(), 0.6149266274460007351509223690936135535947, 1e-15);
}

#ifdef PAINLEVE_HAVE_FLOAT128
TEST(Airy, QuadPrecisionMatchesReference) {
  using q = painleve::quad;
  using cq = std::complex<q>;
  const auto p = airy_pair<q>(cq(q(3), q(4)));
  const cq ai(q("0.014554546690944634862"), q("-0.047435251515492836146"));
  EXPECT_LT(static_cast<double>(abs(p.ai - ai) / abs(ai)), 1e-19);
  const auto z = airy_pair<q>(cq(q("-2.338107410459767038489197"), q(0)));
  EXPECT_LT(static_cast<double>(abs(z.ai)), 1e-24);
}
#endif
