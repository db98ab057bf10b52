#pragma once

#include <cstdint>
#include <vector>

#include "ulab/num.hpp"

namespace ulab {

/// Reusable DFT plan for one fixed length.  Power-of-two lengths run a plain
/// iterative radix-2 transform; everything else goes through Bluestein's
/// chirp-z reduction to the next power of two.  Both paths are branch-free in
/// the data and bit-reproducible run to run.
class DftPlan {
 public:
  explicit DftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  /// Unnormalized forward transform: out[k] = sum_x in[x] e(-kx/n).
  std::vector<cplx> forward(const std::vector<cplx>& in) const;

 private:
  void fft_pow2(std::vector<cplx>& a, bool inverse) const;

  std::size_t n_;
  std::size_t m_;                  // pow2 work size (== n_ when n_ is pow2)
  std::vector<cplx> twiddle_;      // radix-2 twiddles for size m_
  std::vector<std::uint32_t> rev_; // bit-reversal permutation for size m_
  std::vector<cplx> chirp_;        // Bluestein chirp e(-x^2/(2n)), empty if pow2
  std::vector<cplx> chirp_fft_;    // FFT of the padded conjugate chirp
};

/// Normalized Fourier coefficients f_hat(k) = E_x f(x) e(-kx/n).
std::vector<cplx> fourier_coefficients(const std::vector<cplx>& values);

}  // namespace ulab
