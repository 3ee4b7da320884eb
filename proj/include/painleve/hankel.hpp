#ifndef PAINLEVE_HANKEL_HPP
#define PAINLEVE_HANKEL_HPP

// Hankel determinants det[f_{j+k}] of a derivative sequence f_k = f^{(k)} and
// their exact derivatives.
//
// Write a determinant with rows (f_{r_j}, f_{r_j+1}, ...) as the offset vector r.
// Differentiating row j raises r_j by one, so d/dx det(r) = sum_j det(r + e_j); a term
// whose raised row duplicates another row vanishes. Iterating gives every derivative
// as a short linear combination of determinants with shifted rows.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "painleve/scaled.hpp"

namespace painleve {

inline constexpr std::size_t kMaxHankelDerivative = 4;

template <class Real = double>
struct HankelJet {
  std::size_t n = 0;
  // d[k] = k-th derivative of the determinant, k = 0..max_derivative.
  std::array<Scaled<Real>, kMaxHankelDerivative + 1> d{};
  std::size_t max_derivative = 0;
  bool precision_warning = false;
};

namespace detail {

using Offsets = std::vector<std::size_t>;

/// Linear combination of shifted-row determinants for the k-th derivative.
inline std::map<Offsets, long long> build_shift_rule_terms(std::size_t n, std::size_t k) {
  std::map<Offsets, long long> terms;
  Offsets base(n);
  for (std::size_t j = 0; j < n; ++j) base[j] = j;
  terms[base] = 1;
  for (std::size_t step = 0; step < k; ++step) {
    std::map<Offsets, long long> next;
    for (const auto& [r, c] : terms) {
      for (std::size_t j = 0; j < n; ++j) {
        Offsets s = r;
        ++s[j];
        // Rows are kept strictly increasing; a raise onto the next row is a repeated row.
        if (j + 1 < n && s[j] == s[j + 1]) continue;
        next[s] += c;
      }
    }
    terms.clear();
    for (auto& [r, c] : next)
      if (c != 0) terms[r] = c;
  }
  return terms;
}

inline const std::map<Offsets, long long>& shift_rule_terms(std::size_t n, std::size_t k) {
  thread_local std::map<std::pair<std::size_t, std::size_t>, std::map<Offsets, long long>> cache;
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_shift_rule_terms(n, k)).first;
  return it->second;
}

struct DetFlags {
  bool precision_warning = false;
};

/// det of the n x n matrix with rows f[r_j + 0 .. r_j + n - 1], LU with partial pivoting.
template <class Real>
Scaled<Real> shifted_det(const std::vector<Complex<Real>>& f, const Offsets& r, DetFlags& flags) {
  using std::abs;
  const std::size_t n = r.size();
  if (n == 0) return Scaled<Real>(Complex<Real>(1));
  std::vector<Complex<Real>> a(n * n);
  std::vector<Real> row_scale(n, Real(0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = r[j] + k;
      if (idx >= f.size()) throw std::out_of_range("hankel: derivative sequence too short");
      a[j * n + k] = f[idx];
      row_scale[j] = std::max(row_scale[j], abs(f[idx]));
    }
  }
  Scaled<Real> det(Complex<Real>(1));
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = j;
  const Real threshold = Real(1e-13);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    Real best = abs(a[col * n + col]);
    for (std::size_t j = col + 1; j < n; ++j) {
      const Real v = abs(a[j * n + col]);
      if (v > best) {
        best = v;
        piv = j;
      }
    }
    if (best == Real(0)) return Scaled<Real>();
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[col * n + k]);
      std::swap(perm[piv], perm[col]);
      det = -det;
    }
    const Real rs = row_scale[perm[col]];
    if (rs > Real(0) && best < threshold * rs) flags.precision_warning = true;
    const Complex<Real> p = a[col * n + col];
    det = det * Scaled<Real>(p);
    for (std::size_t j = col + 1; j < n; ++j) {
      const Complex<Real> m = a[j * n + col] / p;
      if (m == Complex<Real>(0)) continue;
      for (std::size_t k = col + 1; k < n; ++k) a[j * n + k] -= m * a[col * n + k];
    }
  }
  return det;
}

}  // namespace detail

/// det[f_{j+k}]_{j,k<n} and its derivatives up to `max_derivative`, where the true
/// sequence is f_k * exp(log_scale) and d/dx f_k = factor * f_{k+1}.
template <class Real = double>
HankelJet<Real> hankel_jet(std::size_t n, const std::vector<Complex<Real>>& f, Real log_scale,
                           std::size_t max_derivative, Complex<Real> factor = Complex<Real>(1)) {
  using std::floor;
  using std::log;
  using std::pow;
  if (max_derivative > kMaxHankelDerivative) throw std::invalid_argument("hankel_jet: derivative order > 4");
  HankelJet<Real> out;
  out.n = n;
  out.max_derivative = max_derivative;
  if (n == 0) {
    out.d[0] = Scaled<Real>(Complex<Real>(1));
    return out;
  }
  // Common factor exp(n * log_scale) expressed as a power of ten.
  const Real e10 = Real(n) * log_scale / log(Real(10));
  const Real whole = floor(e10);
  const Scaled<Real> common(Complex<Real>(pow(Real(10), e10 - whole)), static_cast<std::int64_t>(whole));

  // Only the undifferentiated determinant decides the precision flag.
  detail::DetFlags flags, ignored;
  Complex<Real> fk(1);
  for (std::size_t k = 0; k <= max_derivative; ++k) {
    Scaled<Real> acc;
    for (const auto& [r, c] : detail::shift_rule_terms(n, k)) {
      acc += detail::shifted_det(f, r, k == 0 ? flags : ignored) * Complex<Real>(Real(c));
    }
    out.d[k] = acc * common * fk;
    fk *= factor;
  }
  out.precision_warning = flags.precision_warning;
  return out;
}

}  // namespace painleve

#endif
