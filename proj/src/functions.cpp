#include "ulab/functions.hpp"

#include <string>

#include "ulab/errors.hpp"

namespace ulab {

namespace {

void check_disc(const std::vector<cplx>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > 1.0 + kDiscTol)
      throw InputError("value at index " + std::to_string(i) + " has modulus " +
                       std::to_string(std::abs(values[i])) + " > 1 + 1e-12");
  }
}

}  // namespace

IntervalFunction::IntervalFunction(std::int64_t n, std::vector<cplx> values)
    : n_(n), values_(std::move(values)) {
  if (n <= 0) throw InputError("IntervalFunction: N must be positive");
  if (static_cast<std::int64_t>(values_.size()) != n)
    throw InputError("IntervalFunction: expected " + std::to_string(n) + " values, got " +
                     std::to_string(values_.size()));
  check_disc(values_);
}

IntervalFunction IntervalFunction::constant(std::int64_t n, cplx value) {
  return IntervalFunction(n, std::vector<cplx>(static_cast<std::size_t>(n), value));
}

CyclicFunction::CyclicFunction(std::int64_t modulus, std::vector<cplx> values)
    : m_(modulus), values_(std::move(values)) {
  if (modulus <= 0) throw InputError("CyclicFunction: modulus must be positive");
  if (static_cast<std::int64_t>(values_.size()) != modulus)
    throw InputError("CyclicFunction: expected " + std::to_string(modulus) + " values, got " +
                     std::to_string(values_.size()));
  check_disc(values_);
}

CyclicFunction CyclicFunction::constant(std::int64_t modulus, cplx value) {
  return CyclicFunction(modulus, std::vector<cplx>(static_cast<std::size_t>(modulus), value));
}

PhasePolynomial::PhasePolynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw InputError("PhasePolynomial: need at least the constant term");
}

double PhasePolynomial::phase_at(std::int64_t n) const {
  double acc = mod1(coeffs_[0]);
  double npow = 1.0;
  for (std::size_t j = 1; j < coeffs_.size(); ++j) {
    npow *= static_cast<double>(n);
    acc = mod1(acc + frac_prod(coeffs_[j], npow));
  }
  return acc;
}

CyclicFunction embed_zero_extend(const IntervalFunction& f, std::int64_t modulus) {
  if (modulus <= f.size())
    throw InputError("embed_zero_extend: modulus " + std::to_string(modulus) +
                     " <= N = " + std::to_string(f.size()) + " would alias the window");
  std::vector<cplx> values(static_cast<std::size_t>(modulus), cplx{0.0, 0.0});
  for (std::int64_t n = 1; n <= f.size(); ++n) values[static_cast<std::size_t>(n)] = f.at(n);
  return CyclicFunction(modulus, std::move(values));
}

IntervalFunction phase_poly_function(const PhasePolynomial& p, std::int64_t n) {
  std::vector<cplx> values(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i)
    values[static_cast<std::size_t>(i - 1)] = e_of(p.phase_at(i));
  return IntervalFunction(n, std::move(values));
}

CyclicFunction mult_derivative(const CyclicFunction& f, std::int64_t h) {
  std::vector<cplx> values(static_cast<std::size_t>(f.modulus()));
  for (std::int64_t x = 0; x < f.modulus(); ++x)
    values[static_cast<std::size_t>(x)] = f.at(x + h) * std::conj(f.at(x));
  return CyclicFunction(f.modulus(), std::move(values));
}

WindowedDerivative mult_derivative_interval(const IntervalFunction& f, std::int64_t h) {
  std::int64_t n = f.size();
  if (h >= n || h <= -n)
    throw InputError("mult_derivative_interval: |h| = " + std::to_string(h > 0 ? h : -h) +
                     " leaves an empty window on [" + std::to_string(n) + "]");
  std::int64_t lo = h >= 0 ? 1 : 1 - h;  // both n and n+h must lie in [1, N]
  std::int64_t hi = h >= 0 ? n - h : n;
  std::vector<cplx> values(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t x = lo; x <= hi; ++x)
    values[static_cast<std::size_t>(x - lo)] = f.at(x + h) * std::conj(f.at(x));
  return WindowedDerivative{IntervalFunction(hi - lo + 1, std::move(values)), lo};
}

}  // namespace ulab
