#ifndef PAINLEVE_POLYROOTS_HPP
#define PAINLEVE_POLYROOTS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace painleve {

/// p(z) and p'(z) for ascending coefficients.
inline std::pair<std::complex<double>, std::complex<double>> poly_eval(const std::vector<std::complex<double>>& c,
                                                                       std::complex<double> z) {
  std::complex<double> p = 0, dp = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

/// All roots of the polynomial with ascending coefficients c (leading coefficient nonzero),
/// by Aberth-Ehrlich simultaneous iteration followed by a Newton polish.
inline std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& c) {
  using cd = std::complex<double>;
  if (c.size() < 2 || c.back() == cd(0)) throw std::invalid_argument("poly_roots: need degree >= 1");
  const std::size_t n = c.size() - 1;
  // Cauchy bound for the initial circle.
  double bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i] / c[n]));
  const double r = 0.5 * (1 + bound);
  std::vector<cd> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(r, 2 * M_PI * (k + 0.25) / static_cast<double>(n) + 0.4);
  for (int it = 0; it < 500; ++it) {
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto [p, dp] = poly_eval(c, z[k]);
      if (p == cd(0)) continue;
      const cd ratio = p / dp;
      cd s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (z[k] - z[j]);
      const cd w = ratio / (1.0 - ratio * s);
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[k])));
    }
    if (worst < 1e-15) break;
  }
  for (auto& zk : z) {
    for (int it = 0; it < 3; ++it) {
      const auto [p, dp] = poly_eval(c, zk);
      if (dp == cd(0)) break;
      const cd step = p / dp;
      if (!std::isfinite(step.real()) || std::abs(step) > 1e-6 * std::max(1.0, std::abs(zk))) break;
      zk -= step;
    }
  }
  return z;
}

/// Ascending coefficients of prod (z - r_k) times `lead`.
inline std::vector<std::complex<double>> poly_from_roots(const std::vector<std::complex<double>>& roots,
                                                         std::complex<double> lead = 1.0) {
  std::vector<std::complex<double>> c{lead};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace painleve

#endif
