#pragma once

#include <cstdint>
#include <vector>

#include "ulab/num.hpp"

namespace ulab {

inline constexpr double kDiscTol = 1e-12;  // admissible overshoot of |f| <= 1

/// f : {1,...,N} -> D, the closed unit disc.  Values beyond the disc (past a
/// 1e-12 tolerance) are rejected at construction rather than clamped.
class IntervalFunction {
 public:
  IntervalFunction(std::int64_t n, std::vector<cplx> values);

  static IntervalFunction constant(std::int64_t n, cplx value);

  std::int64_t size() const { return n_; }
  /// Value at n, 1-based: n in [1, N].
  cplx at(std::int64_t n) const { return values_[static_cast<std::size_t>(n - 1)]; }
  const std::vector<cplx>& values() const { return values_; }

 private:
  std::int64_t n_;
  std::vector<cplx> values_;
};

/// f : Z/mZ -> D with index arithmetic mod m.
class CyclicFunction {
 public:
  CyclicFunction(std::int64_t modulus, std::vector<cplx> values);

  static CyclicFunction constant(std::int64_t modulus, cplx value);

  std::int64_t modulus() const { return m_; }
  cplx at(std::int64_t x) const {
    std::int64_t r = x % m_;
    if (r < 0) r += m_;
    return values_[static_cast<std::size_t>(r)];
  }
  const std::vector<cplx>& values() const { return values_; }

 private:
  std::int64_t m_;
  std::vector<cplx> values_;
};

/// P(n) = sum_j c_j n^j interpreted mod 1; e(P(n)) has modulus exactly 1.
class PhasePolynomial {
 public:
  explicit PhasePolynomial(std::vector<double> coefficients);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  /// P(n) mod 1.  Each term c_j * n^j is reduced with an exact two-product,
  /// so no precision is lost to the integer part even when n^j is large
  /// (exact while n^j < 2^53).
  double phase_at(std::int64_t n) const;

 private:
  std::vector<double> coeffs_;
};

/// Zero extension of f to Z/mZ: result(x) = f(x) for x = 1..N, 0 otherwise.
/// Rejects m <= N, where wrap-around would alias the window.
CyclicFunction embed_zero_extend(const IntervalFunction& f, std::int64_t modulus);

/// values[n] = e(P(n)) on [1, N].
IntervalFunction phase_poly_function(const PhasePolynomial& p, std::int64_t n);

/// Multiplicative derivative on the cyclic group: x -> f(x+h) conj(f(x)).
CyclicFunction mult_derivative(const CyclicFunction& f, std::int64_t h);

/// Windowed derivative on [N]: defined where both n and n+h lie in [1, N].
/// The window is returned together with its offset (the smallest n), so
/// callers can align values across different shifts.
struct WindowedDerivative {
  IntervalFunction window;  // length = overlap size, window.at(i) = value at offset+i-1
  std::int64_t offset;      // first point of the overlap
};
WindowedDerivative mult_derivative_interval(const IntervalFunction& f, std::int64_t h);

}  // namespace ulab
