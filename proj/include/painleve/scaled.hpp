#ifndef PAINLEVE_SCALED_HPP
#define PAINLEVE_SCALED_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>

namespace painleve {

template <class Real>
using Complex = std::complex<Real>;

/// A complex number stored as mantissa * 10^exp10 with 1 <= |mantissa| < 10
/// (or mantissa == 0, exp10 == 0). Used for Hankel determinants whose
/// magnitude easily leaves the binary64 range.
template <class Real = double>
class Scaled {
 public:
  Scaled() = default;
  Scaled(Complex<Real> mantissa, std::int64_t exp10) : mant_(mantissa), exp10_(exp10) { normalize(); }
  explicit Scaled(Complex<Real> value) : mant_(value) { normalize(); }

  const Complex<Real>& mantissa() const { return mant_; }
  std::int64_t exp10() const { return exp10_; }
  bool is_zero() const { return mant_ == Complex<Real>(0); }

  /// log10 |value|, -inf for zero.
  Real log10_abs() const {
    using std::abs;
    using std::log10;
    if (is_zero()) return -std::numeric_limits<Real>::infinity();
    return log10(abs(mant_)) + Real(exp10_);
  }

  /// Converts to a plain complex; overflows to inf / underflows to 0 outside the range.
  Complex<Real> value() const {
    using std::pow;
    if (is_zero()) return Complex<Real>(0);
    return mant_ * pow(Real(10), Real(exp10_));
  }

  Scaled operator-() const { return Scaled(-mant_, exp10_); }

  friend Scaled operator*(const Scaled& a, const Scaled& b) {
    return Scaled(a.mant_ * b.mant_, a.exp10_ + b.exp10_);
  }
  friend Scaled operator/(const Scaled& a, const Scaled& b) {
    return Scaled(a.mant_ / b.mant_, a.exp10_ - b.exp10_);
  }
  friend Scaled operator*(const Scaled& a, const Complex<Real>& b) { return a * Scaled(b); }
  friend Scaled operator+(const Scaled& a, const Scaled& b) {
    using std::pow;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Scaled& hi = a.exp10_ >= b.exp10_ ? a : b;
    const Scaled& lo = a.exp10_ >= b.exp10_ ? b : a;
    const std::int64_t gap = hi.exp10_ - lo.exp10_;
    if (gap > 60) return hi;
    return Scaled(hi.mant_ + lo.mant_ * pow(Real(10), -Real(gap)), hi.exp10_);
  }
  friend Scaled operator-(const Scaled& a, const Scaled& b) { return a + (-b); }

  Scaled& operator*=(const Scaled& o) { return *this = *this * o; }
  Scaled& operator+=(const Scaled& o) { return *this = *this + o; }

  /// Plain complex ratio a / b, finite whenever the ratio itself is representable.
  friend Complex<Real> ratio(const Scaled& a, const Scaled& b) { return (a / b).value(); }

  friend std::ostream& operator<<(std::ostream& os, const Scaled& s) {
    return os << s.mant_ << "e" << s.exp10_;
  }

 private:
  void normalize() {
    using std::abs;
    using std::floor;
    using std::isfinite;
    using std::log10;
    using std::pow;
    const Real m = abs(mant_);
    if (m == Real(0) || !isfinite(m)) {
      if (m == Real(0)) exp10_ = 0;
      return;
    }
    const auto shift = static_cast<std::int64_t>(floor(log10(m)));
    if (shift != 0) {
      mant_ *= pow(Real(10), -Real(shift));
      exp10_ += shift;
    }
    // Rounding in log10 can leave |mant| at 10 or just below 1.
    const Real r = abs(mant_);
    if (r >= Real(10)) {
      mant_ /= Real(10);
      ++exp10_;
    } else if (r < Real(1)) {
      mant_ *= Real(10);
      --exp10_;
    }
  }

  Complex<Real> mant_{0};
  std::int64_t exp10_ = 0;
};

/// |a - b| / max(|a|, |b|), computed in scaled arithmetic.
template <class Real>
Real relative_difference(const Scaled<Real>& a, const Scaled<Real>& b) {
  using std::abs;
  using std::max;
  if (a.is_zero() && b.is_zero()) return Real(0);
  const Scaled<Real> big = a.log10_abs() >= b.log10_abs() ? a : b;
  return abs(ratio(a - b, big));
}

}  // namespace painleve

#endif
