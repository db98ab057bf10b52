#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ulab/exec.hpp"
#include "ulab/num.hpp"

namespace ulab {

/// A unit-modulus sequence on a window of consecutive integers.
struct Window {
  std::int64_t start = 0;
  std::vector<cplx> v;

  std::int64_t end() const { return start + static_cast<std::int64_t>(v.size()); }
  bool contains(std::int64_t n) const { return n >= start && n < end(); }
  cplx at(std::int64_t n) const { return v[static_cast<std::size_t>(n - start)]; }
};

/// The overlap of {0..N-1} with its translate by -h: the n for which both n
/// and n+h lie in the domain.
Window window_for(std::int64_t n, std::int64_t h);

/// A family {chi_h} of unit-modulus sequences indexed by shift, each defined
/// on the overlap window of the domain {0..N-1} with its h-translate.
class HFamily {
 public:
  HFamily(std::int64_t domain_size, std::map<std::int64_t, Window> chi);

  std::int64_t domain_size() const { return n_; }
  const std::vector<std::int64_t>& shifts() const { return shifts_; }
  bool has(std::int64_t h) const { return chi_.count(h) != 0; }
  const Window& chi(std::int64_t h) const;

  /// Returns a copy with chi_h multiplied by the given unit constants.
  HFamily rotated(const std::map<std::int64_t, cplx>& units) const;

 private:
  std::int64_t n_;
  std::map<std::int64_t, Window> chi_;
  std::vector<std::int64_t> shifts_;
};

/// chi_h = windowed multiplicative derivative of theta (a unit-modulus
/// sequence on {0..N-1}): chi_h(n) = theta(n+h) conj(theta(n)).
HFamily coboundary_family(std::span<const cplx> theta, std::span<const std::int64_t> shifts);

/// Max over sampled (n, h, k) of |chi_{h+k}(n) - chi_h(n) chi_k(n+h)|.
/// Only pairs with h+k present in the family are eligible; throws when the
/// shift set contains no such pair.
double verify_cocycle(const HFamily& family, std::size_t samples, std::uint64_t seed);

struct IntegrationResult {
  std::vector<cplx> theta;  // theta(n) = chi_n(0) on {0..N-1}
  double max_residual = 0.0;  // max |theta(n+h) - theta(n) chi_h(n)| over samples
};

/// Integrates an (approximate) cocycle by theta(n) := chi_n(0); requires the
/// family to contain shifts 0..N-1.
IntegrationResult integrate_cocycle(const HFamily& family, std::size_t samples,
                                    std::uint64_t seed);

/// chi_{h1}(n) chi_{h2}(n+h1-h4) conj(chi_{h3}(n) chi_{h4}(n+h1-h4)); the
/// quadruple must balance (h1+h2 == h3+h4) and all four window lookups must
/// be defined.
cplx quadruple_product(const HFamily& family, std::int64_t h1, std::int64_t h2, std::int64_t h3,
                       std::int64_t h4, std::int64_t n);

struct ChachaResult {
  std::vector<cplx> theta;        // chi_n(0)
  std::vector<cplx> theta_prime;  // chi_n(0) conj(chi_0(n))
  double max_residual = 0.0;      // max |chi_h(n) - theta(n+h) conj(theta_prime(n))|
  double quadruple_residual = 0.0;
};

/// Factorizes a family satisfying the exact quadruple identity as
/// chi_h(n) = theta(n+h) conj(theta_prime(n)).  The identity is verified on
/// samples first; a residual above 1e-9 is a precondition failure.
ChachaResult chacha_factorization(const HFamily& family, std::size_t samples,
                                  std::uint64_t seed);

/// Multiplies each chi_h by the unit constant that makes
/// E_n Delta_h f(n) chi_h(n) real and nonnegative; a vanishing correlation
/// leaves that shift unchanged.
HFamily phase_align(std::span<const cplx> f, const HFamily& family);

struct ScanBudget {
  std::uint64_t enumeration_limit = 10000000;  // switch to sampling above this
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 0;
  std::int64_t min_window = -1;  // quadruples with smaller windows are skipped; -1 => N/4
};

struct QuadrupleStats {
  std::uint64_t total = 0;    // quadruples whose statistic was evaluated
  std::uint64_t passing = 0;  // statistic >= threshold
  std::uint64_t skipped = 0;  // window shorter than the minimum, counted separately
  double threshold = 0.0;
  bool sampled = false;
  std::optional<double> stderr_value;  // binomial standard error when sampled

  double pass_fraction() const {
    return total == 0 ? 0.0 : static_cast<double>(passing) / static_cast<double>(total);
  }
};

/// Row emitted per examined quadruple when a sink is attached to the scan.
struct QuadrupleRow {
  std::int64_t h = 0, a = 0, b = 0;
  double statistic = 0.0;  // |E_n chi_{h1}(n) chi_{h2}(n-b) conj(chi_{h3}(n) chi_{h4}(n-b))|
  bool skipped = false;
};

/// Scans additive quadruples parametrized as h1 = h, h2 = h+a+b, h3 = h+a,
/// h4 = h+b, computing |E_n ...| over the common window of the four shifted
/// sequences and counting those >= c.  Enumerates when the quadruple count is
/// within budget, otherwise samples uniformly.  Deterministic given the seed;
/// enumeration parallelizes over h with per-shift partial tallies.
QuadrupleStats quadruple_scan(std::span<const cplx> f, const HFamily& family, double c,
                              const ScanBudget& budget, const ExecConfig& cfg = {},
                              const std::function<void(const QuadrupleRow&)>& sink = nullptr);

/// E_{n in [1,N]} of the product of four canonical Heisenberg evaluations
/// with the given conjugation signs.  Phases are accumulated before
/// exponentiation, so conjugate-cancelling pairs give exactly 1.
cplx fw_mean(const std::array<std::pair<double, double>, 4>& specs,
             const std::array<int, 4>& signs, std::int64_t n, const ExecConfig& cfg = {});

/// With chi(h, n) := Delta_h theta(n), the two mixed second derivatives of
/// theta agree:  chi(h, n+k) conj(chi(h, n)) = chi(k, n+h) conj(chi(k, n)).
/// Returns the max residual over all n with n, n+h, n+k, n+h+k in range.
double mixed_derivative_symmetry(std::span<const cplx> theta, std::int64_t h, std::int64_t k);

/// The same residual for an arbitrary two-variable kernel chi(h, n) on the
/// domain {0..N-1}; derivative kernels give 0, generic kernels do not.
double mixed_symmetry_residual(const std::function<cplx(std::int64_t, std::int64_t)>& chi,
                               std::int64_t n, std::int64_t h, std::int64_t k);

}  // namespace ulab
