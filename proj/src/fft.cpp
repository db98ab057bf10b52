#include "ulab/fft.hpp"

#include <stdexcept>

namespace ulab {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

/// e(-x^2/(2n)) with the square reduced as an exact integer mod 2n, so the
/// chirp phase keeps full precision for any index.
cplx chirp_at(std::uint64_t x, std::uint64_t n) {
  std::uint64_t r = (x % (2 * n)) * (x % (2 * n)) % (2 * n);
  return e_of(-static_cast<double>(r) / static_cast<double>(2 * n));
}

}  // namespace

DftPlan::DftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("DftPlan: zero length");
  m_ = is_pow2(n) ? n : next_pow2(2 * n - 1);

  twiddle_.resize(m_ / 2);
  for (std::size_t j = 0; j < m_ / 2; ++j)
    twiddle_[j] = e_of(-static_cast<double>(j) / static_cast<double>(m_));

  rev_.resize(m_);
  std::uint32_t bits = 0;
  while ((std::size_t(1) << bits) < m_) ++bits;
  for (std::size_t i = 0; i < m_; ++i) {
    std::uint32_t r = 0;
    for (std::uint32_t b = 0; b < bits; ++b)
      if (i & (std::size_t(1) << b)) r |= std::uint32_t(1) << (bits - 1 - b);
    rev_[i] = r;
  }

  if (!is_pow2(n)) {
    chirp_.resize(n);
    for (std::size_t x = 0; x < n; ++x) chirp_[x] = chirp_at(x, n);
    // FFT of the wrapped conjugate chirp c[j] = e(j^2/(2n)), j = -(n-1)..n-1.
    std::vector<cplx> c(m_, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
      c[j] = std::conj(chirp_[j]);
      if (j != 0) c[m_ - j] = std::conj(chirp_[j]);
    }
    fft_pow2(c, false);
    chirp_fft_ = std::move(c);
  }
}

void DftPlan::fft_pow2(std::vector<cplx>& a, bool inverse) const {
  const std::size_t m = m_;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t r = rev_[i];
    if (i < r) std::swap(a[i], a[r]);
  }
  for (std::size_t len = 2; len <= m; len <<= 1) {
    std::size_t step = m / len;
    for (std::size_t i = 0; i < m; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        cplx w = twiddle_[j * step];
        if (inverse) w = std::conj(w);
        cplx u = a[i + j];
        cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
  if (inverse) {
    double scale = 1.0 / static_cast<double>(m);
    for (auto& z : a) z *= scale;
  }
}

std::vector<cplx> DftPlan::forward(const std::vector<cplx>& in) const {
  if (in.size() != n_) throw std::invalid_argument("DftPlan: length mismatch");
  if (is_pow2(n_)) {
    std::vector<cplx> a = in;
    fft_pow2(a, false);
    return a;
  }
  // Bluestein: out[k] = chirp(k) * (b (*) c)[k] with b[x] = in[x] chirp(x).
  std::vector<cplx> b(m_, cplx{0.0, 0.0});
  for (std::size_t x = 0; x < n_; ++x) b[x] = in[x] * chirp_[x];
  fft_pow2(b, false);
  for (std::size_t i = 0; i < m_; ++i) b[i] *= chirp_fft_[i];
  fft_pow2(b, true);
  std::vector<cplx> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = b[k] * chirp_[k];
  return out;
}

std::vector<cplx> fourier_coefficients(const std::vector<cplx>& values) {
  DftPlan plan(values.size());
  std::vector<cplx> out = plan.forward(values);
  double scale = 1.0 / static_cast<double>(values.size());
  for (auto& z : out) z *= scale;
  return out;
}

}  // namespace ulab
