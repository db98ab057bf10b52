#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace ulab {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

/// Reduce x into [0, 1).  mod1(-0.25) == 0.75.
inline double mod1(double x) {
  double r = x - std::floor(x);
  return r < 1.0 ? r : 0.0;  // r can hit 1.0 when x is a tiny negative number
}

/// e(x) = exp(2*pi*i*x).  The argument is reduced mod 1 before evaluation so
/// that large phases do not lose the full precision of cos/sin.
inline cplx e_of(double phase) {
  double p = mod1(phase);
  return {std::cos(kTwoPi * p), std::sin(kTwoPi * p)};
}

/// Distance between two phases in R/Z (circle metric min(d, 1-d)).
inline double circle_dist(double a, double b) {
  double d = mod1(a - b);
  return d <= 0.5 ? d : 1.0 - d;
}

/// Exact product c*m reduced mod 1.  Uses an FMA two-product so the integer
/// part of c*m is split off without rounding; exact as long as m is an
/// integer-valued double below 2^53.
inline double frac_prod(double c, double m) {
  double hi = c * m;
  double lo = std::fma(c, m, -hi);
  return mod1(mod1(hi) + lo);
}

/// Compensated (Kahan) accumulator.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

class KahanCplxSum {
 public:
  void add(cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void add(double re, double im) {
    re_.add(re);
    im_.add(im);
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

/// Deterministic balanced-tree reduction: adjacent pairs are combined until a
/// single value remains.  The tree shape depends only on the length, so the
/// result is identical no matter how the inputs were produced (or by how many
/// threads).
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.empty()) return T{};
  std::vector<T> buf(xs.begin(), xs.end());
  std::size_t n = buf.size();
  while (n > 1) {
    std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (n % 2 == 1) {
      buf[half] = buf[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return buf[0];
}

inline double pairwise_sum(std::span<const double> xs) { return pairwise_sum<double>(xs); }
inline cplx pairwise_sum(std::span<const cplx> xs) { return pairwise_sum<cplx>(xs); }

}  // namespace ulab
