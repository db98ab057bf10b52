#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ulab/exec.hpp"
#include "ulab/functions.hpp"

namespace ulab {

enum class NormMethod { direct, recursive, fft_u2, sampled };

std::string to_string(NormMethod m);
NormMethod norm_method_from_string(const std::string& s);

struct NormResult {
  double value = 0.0;        // power_value^(1/2^d)
  double power_value = 0.0;  // the averaged 2^d-fold derivative product
  int d = 1;
  NormMethod method = NormMethod::direct;
  std::optional<double> stderr_value;  // batch-means standard error (sampled only)
};

struct WitnessReport {
  std::int64_t frequency = 0;  // argmax_xi |f_hat(xi)|, ties to the smallest xi
  cplx coefficient{0.0, 0.0};
  double lower_bound = 0.0;  // squared U^2 norm; |coefficient| >= lower_bound
};

/// Elementary-operation estimate used by the work-budget refusal check.  For
/// a dense cyclic function this is modulus^(d+1); functions supported on a
/// short window cost (2L)^d * L because derivative branches outside the
/// window vanish identically and are pruned.
double required_norm_ops(const CyclicFunction& f, int d);

/// || f ||_{U^d(Z/mZ)} by full enumeration of the shift tuples.
/// power_value = E_{x,h_1..h_d} Delta_{h_1}...Delta_{h_d} f(x), which is a
/// nonnegative real; an imaginary residue above 1e-9 raises InternalError.
///
/// Iteration order (fixed): shift tuples (h_1,...,h_{d-1}) in lexicographic
/// order, then rows h_d = 0..m-1, then x ascending over the support window.
/// Row sums feed a Kahan accumulator per outermost shift; the per-shift
/// partials are combined by a balanced pairwise tree, so results are
/// identical for any thread count.
NormResult gowers_norm_cyclic(const CyclicFunction& f, int d, const ExecConfig& cfg = {});

/// Same norm via the recursion ||f||^{2^d} = E_h ||Delta_h f||^{2^{d-1}},
/// with the d = 2 base case evaluated as the fourth moment of the Fourier
/// coefficients.  Requires d >= 2.
NormResult gowers_norm_recursive(const CyclicFunction& f, int d, const ExecConfig& cfg = {});

/// || f ||_{U^2} via power_value = sum_xi |f_hat(xi)|^4.
NormResult u2_norm_fft(const CyclicFunction& f);

/// Monte-Carlo estimate of the U^d power: the mean over `samples` uniform
/// draws of (x, h_1..h_d) of Re Delta_{h_1}...Delta_{h_d} f(x).  The power is
/// the unbiased quantity; the reported root is biased for small samples.
/// stderr_value is the batch-means standard error over 10 equal batches.
/// Deterministic for a fixed seed (single-threaded; cost ~ samples * 2^d).
NormResult gowers_norm_sampled(const CyclicFunction& f, int d, std::uint64_t samples,
                               std::uint64_t seed);

/// || f ||_{U^d[N]} = || f~ ||_{U^d(Z/mZ)} / || 1_[N] ||_{U^d(Z/mZ)} with
/// m = 2^d N.  The indicator norm in the denominator is cached per (N, d,
/// method).  For method sampled, numerator and denominator are sampled with
/// seeds derived from the given seed and the standard errors are propagated
/// to the ratio.
NormResult gowers_norm_interval(const IntervalFunction& f, int d,
                                NormMethod method = NormMethod::recursive,
                                const ExecConfig& cfg = {}, std::uint64_t samples = 1000000,
                                std::uint64_t seed = 0);

/// E_{n in [N]} f(n) conj(g(n)); rejects mismatched N.
cplx correlate(const IntervalFunction& f, const IntervalFunction& g);

/// The U^2 inverse witness: the largest Fourier coefficient, together with
/// the guaranteed lower bound ||f||_{U^2}^2 on its magnitude.
WitnessReport u2_inverse_witness(const CyclicFunction& f);

}  // namespace ulab
