#include "ulab/gowers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "ulab/errors.hpp"
#include "ulab/fft.hpp"
#include "ulab/rng.hpp"

namespace ulab {

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::direct: return "direct";
    case NormMethod::recursive: return "recursive";
    case NormMethod::fft_u2: return "fft_u2";
    case NormMethod::sampled: return "sampled";
  }
  return "?";
}

NormMethod norm_method_from_string(const std::string& s) {
  if (s == "direct") return NormMethod::direct;
  if (s == "recursive") return NormMethod::recursive;
  if (s == "fft" || s == "fft_u2") return NormMethod::fft_u2;
  if (s == "sampled") return NormMethod::sampled;
  throw InputError("unknown norm method '" + s + "'");
}

namespace {

// Support window of a function on Z/mZ: the shortest cyclic interval
// containing every nonzero value.  Derivative branches that leave the window
// are identically zero and can be pruned without changing any sum.  Windows
// that wrap or cover more than half the circle are treated as dense.
struct Support {
  std::int64_t start = 0;
  std::int64_t len = 0;  // len == m means dense
};

Support find_support(const std::vector<cplx>& v) {
  const std::int64_t m = static_cast<std::int64_t>(v.size());
  std::vector<std::int64_t> idx;
  for (std::int64_t i = 0; i < m; ++i)
    if (v[static_cast<std::size_t>(i)] != cplx{0.0, 0.0}) idx.push_back(i);
  if (idx.empty()) return {0, 0};
  if (static_cast<std::int64_t>(idx.size()) == m) return {0, m};
  std::int64_t best_gap = idx.front() + m - idx.back();
  std::int64_t start = idx.front();
  for (std::size_t i = 1; i < idx.size(); ++i) {
    std::int64_t gap = idx[i] - idx[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      start = idx[i];
    }
  }
  std::int64_t len = m - best_gap + 1;
  if (len > m / 2 || start + len > m) return {0, m};  // dense fallback
  return {start, len};
}

struct DenseArr {
  std::vector<double> re, im;
  std::int64_t start = 0, len = 0;  // len == m => dense
  std::int64_t dirty_lo = 0, dirty_hi = 0;

  void init(std::int64_t m) {
    re.assign(static_cast<std::size_t>(m), 0.0);
    im.assign(static_cast<std::size_t>(m), 0.0);
  }
  void clear_dirty() {
    for (std::int64_t i = dirty_lo; i < dirty_hi; ++i) {
      re[static_cast<std::size_t>(i)] = 0.0;
      im[static_cast<std::size_t>(i)] = 0.0;
    }
    dirty_lo = dirty_hi = 0;
  }
};

std::int64_t signed_shift(std::int64_t h, std::int64_t m) { return 2 * h > m ? h - m : h; }

// child = Delta_h parent.  Returns false when the derivative vanishes
// identically (empty overlap window).
bool fill_derivative(const DenseArr& p, DenseArr& c, std::int64_t h, std::int64_t m) {
  if (p.len == m) {
    for (std::int64_t x = 0; x < m; ++x) {
      std::int64_t y = x + h;
      if (y >= m) y -= m;
      const double a = p.re[static_cast<std::size_t>(y)], b = p.im[static_cast<std::size_t>(y)];
      const double cr = p.re[static_cast<std::size_t>(x)], ci = p.im[static_cast<std::size_t>(x)];
      c.re[static_cast<std::size_t>(x)] = a * cr + b * ci;
      c.im[static_cast<std::size_t>(x)] = b * cr - a * ci;
    }
    c.start = 0;
    c.len = m;
    return true;
  }
  const std::int64_t s = signed_shift(h, m);
  const std::int64_t abs_s = s < 0 ? -s : s;
  const std::int64_t len = p.len - abs_s;
  if (len <= 0) return false;
  const std::int64_t lo = p.start + (s < 0 ? -s : 0);
  c.clear_dirty();
  for (std::int64_t x = lo; x < lo + len; ++x) {
    const std::int64_t y = x + s;
    const double a = p.re[static_cast<std::size_t>(y)], b = p.im[static_cast<std::size_t>(y)];
    const double cr = p.re[static_cast<std::size_t>(x)], ci = p.im[static_cast<std::size_t>(x)];
    c.re[static_cast<std::size_t>(x)] = a * cr + b * ci;
    c.im[static_cast<std::size_t>(x)] = b * cr - a * ci;
  }
  c.start = lo;
  c.len = len;
  c.dirty_lo = lo;
  c.dirty_hi = lo + len;
  return true;
}

DenseArr make_root(const std::vector<cplx>& v) {
  DenseArr root;
  const std::int64_t m = static_cast<std::int64_t>(v.size());
  root.init(m);
  for (std::int64_t i = 0; i < m; ++i) {
    root.re[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)].real();
    root.im[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)].imag();
  }
  Support s = find_support(v);
  root.start = s.start;
  root.len = s.len;
  return root;
}

// Innermost pair of loops of the direct enumeration: rows h = 0..m-1, x
// ascending over the overlap window; each row is summed plainly and the row
// totals feed the caller's compensated accumulators.
void innermost_rows(const DenseArr& g, std::int64_t m, KahanSum& acc_re, KahanSum& acc_im) {
  for (std::int64_t h = 0; h < m; ++h) {
    std::int64_t lo, hi, s;
    if (g.len == m) {
      lo = 0;
      hi = m;
      s = h;
    } else {
      s = signed_shift(h, m);
      const std::int64_t abs_s = s < 0 ? -s : s;
      if (abs_s >= g.len) continue;  // empty overlap, exact zero row
      lo = g.start + (s < 0 ? -s : 0);
      hi = g.start + g.len - (s > 0 ? s : 0);
    }
    double rre = 0.0, rim = 0.0;
    if (g.len == m) {
      for (std::int64_t x = 0; x < m; ++x) {
        std::int64_t y = x + s;
        if (y >= m) y -= m;
        const double a = g.re[static_cast<std::size_t>(y)], b = g.im[static_cast<std::size_t>(y)];
        const double cr = g.re[static_cast<std::size_t>(x)], ci = g.im[static_cast<std::size_t>(x)];
        rre += a * cr + b * ci;
        rim += b * cr - a * ci;
      }
    } else {
      for (std::int64_t x = lo; x < hi; ++x) {
        const std::int64_t y = x + s;
        const double a = g.re[static_cast<std::size_t>(y)], b = g.im[static_cast<std::size_t>(y)];
        const double cr = g.re[static_cast<std::size_t>(x)], ci = g.im[static_cast<std::size_t>(x)];
        rre += a * cr + b * ci;
        rim += b * cr - a * ci;
      }
    }
    acc_re.add(rre);
    acc_im.add(rim);
  }
}

// Serial evaluation of one outer-shift subtree of the direct enumeration.
class DirectWorker {
 public:
  DirectWorker(const DenseArr& root, std::int64_t m, int d) : root_(root), m_(m), d_(d) {
    arr_.resize(static_cast<std::size_t>(std::max(0, d - 1)));
    for (auto& a : arr_) a.init(m);
  }

  // Sum over the subtree rooted at h1 (all remaining shifts and x).
  void subtree(std::int64_t h1, double& out_re, double& out_im) {
    acc_re_ = KahanSum{};
    acc_im_ = KahanSum{};
    if (d_ == 1) {
      // no outer shifts: h1 is the row index of the innermost loop
      single_row(h1);
    } else if (fill_derivative(root_, arr_[0], h1, m_)) {
      descend(1);
    }
    out_re = acc_re_.value();
    out_im = acc_im_.value();
  }

 private:
  void single_row(std::int64_t h) {
    const DenseArr& g = root_;
    // one row of innermost_rows, reusing its conventions
    std::int64_t s = g.len == m_ ? h : signed_shift(h, m_);
    std::int64_t lo = 0, hi = 0;
    if (g.len == m_) {
      lo = 0;
      hi = m_;
    } else {
      const std::int64_t abs_s = s < 0 ? -s : s;
      if (abs_s >= g.len) return;
      lo = g.start + (s < 0 ? -s : 0);
      hi = g.start + g.len - (s > 0 ? s : 0);
    }
    double rre = 0.0, rim = 0.0;
    for (std::int64_t x = lo; x < hi; ++x) {
      std::int64_t y = x + s;
      if (y >= m_) y -= m_;
      const double a = g.re[static_cast<std::size_t>(y)], b = g.im[static_cast<std::size_t>(y)];
      const double cr = g.re[static_cast<std::size_t>(x)], ci = g.im[static_cast<std::size_t>(x)];
      rre += a * cr + b * ci;
      rim += b * cr - a * ci;
    }
    acc_re_.add(rre);
    acc_im_.add(rim);
  }

  void descend(int level) {
    // arr_[level-1] holds the derivative after `level` shifts
    if (level == d_ - 1) {
      innermost_rows(arr_[static_cast<std::size_t>(level - 1)], m_, acc_re_, acc_im_);
      return;
    }
    for (std::int64_t h = 0; h < m_; ++h) {
      if (fill_derivative(arr_[static_cast<std::size_t>(level - 1)],
                          arr_[static_cast<std::size_t>(level)], h, m_))
        descend(level + 1);
    }
  }

  const DenseArr& root_;
  std::int64_t m_;
  int d_;
  std::vector<DenseArr> arr_;
  KahanSum acc_re_, acc_im_;
};

void check_budget(const CyclicFunction& f, int d, const ExecConfig& cfg) {
  double required = required_norm_ops(f, d);
  if (required > cfg.work_budget)
    throw BudgetError("norm computation needs ~" + std::to_string(required) +
                          " elementary ops, over the budget of " +
                          std::to_string(cfg.work_budget) +
                          "; use the sampled estimator (--method sampled) instead",
                      required, cfg.work_budget);
}

double u2_power_of_values(const std::vector<cplx>& values, const DftPlan& plan) {
  std::vector<cplx> hat = plan.forward(values);
  const double scale = 1.0 / static_cast<double>(values.size());
  KahanSum acc;
  for (const cplx& c : hat) {
    const double re = c.real() * scale, im = c.imag() * scale;
    const double sq = re * re + im * im;
    acc.add(sq * sq);
  }
  return acc.value();
}

double u2_power_of_arr(const DenseArr& g, std::int64_t m, const DftPlan& plan) {
  std::vector<cplx> v(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i)
    v[static_cast<std::size_t>(i)] = {g.re[static_cast<std::size_t>(i)],
                                      g.im[static_cast<std::size_t>(i)]};
  return u2_power_of_values(v, plan);
}

// power_{d}(g) by the shift recursion with the d = 2 FFT base case.
double recursive_power_arr(DenseArr& g, std::vector<DenseArr>& arr, int level, int d,
                           std::int64_t m, const DftPlan& plan) {
  if (d == 2) return u2_power_of_arr(g, m, plan);
  KahanSum acc;
  DenseArr& child = arr[static_cast<std::size_t>(level)];
  for (std::int64_t h = 0; h < m; ++h) {
    if (fill_derivative(g, child, h, m)) {
      // the child is consumed before this loop touches it again
      acc.add(recursive_power_arr(child, arr, level + 1, d - 1, m, plan));
    }
  }
  return acc.value() / static_cast<double>(m);
}

NormResult finish_norm(double power, double imag, int d, NormMethod method) {
  if (std::abs(imag) > 1e-9)
    throw InternalError("Gowers average has imaginary residue " + std::to_string(imag) +
                        "; the average is real by construction");
  NormResult r;
  r.power_value = power;
  r.value = power > 0.0 ? std::pow(power, std::ldexp(1.0, -d)) : 0.0;
  r.d = d;
  r.method = method;
  return r;
}

}  // namespace

double required_norm_ops(const CyclicFunction& f, int d) {
  const double m = static_cast<double>(f.modulus());
  Support s = find_support(f.values());
  const double len = s.len == 0 ? 1.0 : static_cast<double>(s.len);
  const double span = std::min(m, 2.0 * len);
  return len * std::pow(span, static_cast<double>(d));
}

NormResult gowers_norm_cyclic(const CyclicFunction& f, int d, const ExecConfig& cfg) {
  if (d < 1) throw InputError("gowers_norm_cyclic: d must be >= 1");
  check_budget(f, d, cfg);
  const std::int64_t m = f.modulus();
  DenseArr root = make_root(f.values());
  if (root.len == 0) return finish_norm(0.0, 0.0, d, NormMethod::direct);

  const std::size_t outer = static_cast<std::size_t>(m);
  std::vector<double> part_re(outer, 0.0), part_im(outer, 0.0);
  parallel_blocks(cfg.threads, outer, [&](std::size_t lo, std::size_t hi) {
    DirectWorker worker(root, m, d);
    for (std::size_t i = lo; i < hi; ++i)
      worker.subtree(static_cast<std::int64_t>(i), part_re[i], part_im[i]);
  });
  const double denom = std::pow(static_cast<double>(m), static_cast<double>(d + 1));
  const double re = pairwise_sum(std::span<const double>(part_re)) / denom;
  const double im = pairwise_sum(std::span<const double>(part_im)) / denom;
  return finish_norm(re, im, d, NormMethod::direct);
}

NormResult gowers_norm_recursive(const CyclicFunction& f, int d, const ExecConfig& cfg) {
  if (d < 2) throw InputError("gowers_norm_recursive: d must be >= 2");
  check_budget(f, d, cfg);
  const std::int64_t m = f.modulus();
  DftPlan plan(static_cast<std::size_t>(m));
  if (d == 2) {
    double power = u2_power_of_values(f.values(), plan);
    NormResult r = finish_norm(power, 0.0, d, NormMethod::recursive);
    return r;
  }
  DenseArr root = make_root(f.values());
  if (root.len == 0) return finish_norm(0.0, 0.0, d, NormMethod::recursive);

  const std::size_t outer = static_cast<std::size_t>(m);
  std::vector<double> part(outer, 0.0);
  parallel_blocks(cfg.threads, outer, [&](std::size_t lo, std::size_t hi) {
    std::vector<DenseArr> arr(static_cast<std::size_t>(d - 1));
    for (auto& a : arr) a.init(m);
    for (std::size_t i = lo; i < hi; ++i) {
      if (fill_derivative(root, arr[0], static_cast<std::int64_t>(i), m))
        part[i] = recursive_power_arr(arr[0], arr, 1, d - 1, m, plan);
    }
  });
  const double power = pairwise_sum(std::span<const double>(part)) / static_cast<double>(m);
  return finish_norm(power, 0.0, d, NormMethod::recursive);
}

NormResult u2_norm_fft(const CyclicFunction& f) {
  DftPlan plan(static_cast<std::size_t>(f.modulus()));
  double power = u2_power_of_values(f.values(), plan);
  return finish_norm(power, 0.0, 2, NormMethod::fft_u2);
}

NormResult gowers_norm_sampled(const CyclicFunction& f, int d, std::uint64_t samples,
                               std::uint64_t seed) {
  if (d < 1) throw InputError("gowers_norm_sampled: d must be >= 1");
  if (samples < 100) throw InputError("gowers_norm_sampled: need at least 100 samples");
  if (samples % 10 != 0)
    throw InputError("gowers_norm_sampled: samples must be a multiple of 10 (batch means)");
  const std::uint64_t m = static_cast<std::uint64_t>(f.modulus());
  const std::uint64_t batch_size = samples / 10;
  const int points = 1 << d;

  std::vector<std::uint64_t> shifts(static_cast<std::size_t>(d));
  double batch_mean[10];
  for (int b = 0; b < 10; ++b) {
    KahanSum acc;
    for (std::uint64_t i = 0; i < batch_size; ++i) {
      const std::uint64_t sample_index = static_cast<std::uint64_t>(b) * batch_size + i;
      CounterRng rng(seed, sample_index);
      const std::uint64_t x = rng.below(m);
      for (int j = 0; j < d; ++j) shifts[static_cast<std::size_t>(j)] = rng.below(m);
      double pre = 1.0, pim = 0.0;
      for (int mask = 0; mask < points; ++mask) {
        std::uint64_t y = x;
        for (int j = 0; j < d; ++j)
          if (mask & (1 << j)) y += shifts[static_cast<std::size_t>(j)];
        const cplx v = f.at(static_cast<std::int64_t>(y % m));
        const bool conj = (__builtin_popcount(static_cast<unsigned>(mask)) & 1) != 0;
        const double a = v.real(), bb = conj ? -v.imag() : v.imag();
        const double nre = pre * a - pim * bb;
        const double nim = pre * bb + pim * a;
        pre = nre;
        pim = nim;
      }
      acc.add(pre);
    }
    batch_mean[b] = acc.value() / static_cast<double>(batch_size);
  }
  KahanSum total;
  for (double bm : batch_mean) total.add(bm);
  const double power = total.value() / 10.0;
  KahanSum var;
  for (double bm : batch_mean) var.add((bm - power) * (bm - power));
  const double se = std::sqrt(var.value() / (10.0 * 9.0));

  NormResult r;
  r.power_value = power;
  r.value = power > 0.0 ? std::pow(power, std::ldexp(1.0, -d)) : 0.0;
  r.d = d;
  r.method = NormMethod::sampled;
  r.stderr_value = se;
  return r;
}

namespace {

NormResult norm_by_method(const CyclicFunction& f, int d, NormMethod method,
                          const ExecConfig& cfg, std::uint64_t samples, std::uint64_t seed) {
  switch (method) {
    case NormMethod::direct: return gowers_norm_cyclic(f, d, cfg);
    case NormMethod::recursive: return gowers_norm_recursive(f, d, cfg);
    case NormMethod::fft_u2:
      if (d != 2) throw InputError("fft method only computes the U^2 norm (d = 2)");
      return u2_norm_fft(f);
    case NormMethod::sampled: return gowers_norm_sampled(f, d, samples, seed);
  }
  throw InputError("bad norm method");
}

// || 1_[N] ||_{U^d} is shared by every interval norm with the same (N, d,
// method); memoized so batch runs pay for it once.
NormResult indicator_norm(std::int64_t n, std::int64_t modulus, int d, NormMethod method,
                          const ExecConfig& cfg, std::uint64_t samples, std::uint64_t seed) {
  using Key = std::tuple<std::int64_t, int, NormMethod, std::uint64_t, std::uint64_t>;
  static std::map<Key, NormResult> cache;
  static std::mutex mutex;
  Key key{n, d, method, method == NormMethod::sampled ? samples : 0,
          method == NormMethod::sampled ? seed : 0};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  CyclicFunction ind = embed_zero_extend(IntervalFunction::constant(n, cplx{1.0, 0.0}), modulus);
  NormResult r = norm_by_method(ind, d, method, cfg, samples, seed);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, r);
  return r;
}

}  // namespace

NormResult gowers_norm_interval(const IntervalFunction& f, int d, NormMethod method,
                                const ExecConfig& cfg, std::uint64_t samples,
                                std::uint64_t seed) {
  if (d < 1) throw InputError("gowers_norm_interval: d must be >= 1");
  if (d > 24) throw InputError("gowers_norm_interval: d too large for 2^d N to fit");
  const std::int64_t modulus = (std::int64_t{1} << d) * f.size();
  CyclicFunction tilde = embed_zero_extend(f, modulus);
  NormResult num = norm_by_method(tilde, d, method, cfg, samples, seed);
  NormResult den = indicator_norm(f.size(), modulus, d, method, cfg, samples, seed ^ 0x1f);

  NormResult r;
  r.d = d;
  r.method = method;
  r.power_value = num.power_value / den.power_value;
  r.value = r.power_value > 0.0 ? std::pow(r.power_value, std::ldexp(1.0, -d)) : 0.0;
  if (num.stderr_value || den.stderr_value) {
    const double rel_n = num.stderr_value ? *num.stderr_value / std::abs(num.power_value) : 0.0;
    const double rel_d = den.stderr_value ? *den.stderr_value / std::abs(den.power_value) : 0.0;
    r.stderr_value = std::abs(r.power_value) * std::sqrt(rel_n * rel_n + rel_d * rel_d);
  }
  return r;
}

cplx correlate(const IntervalFunction& f, const IntervalFunction& g) {
  if (f.size() != g.size())
    throw InputError("correlate: domain sizes differ (" + std::to_string(f.size()) + " vs " +
                     std::to_string(g.size()) + ")");
  KahanCplxSum acc;
  for (std::int64_t n = 1; n <= f.size(); ++n) acc.add(f.at(n) * std::conj(g.at(n)));
  return acc.value() / static_cast<double>(f.size());
}

WitnessReport u2_inverse_witness(const CyclicFunction& f) {
  std::vector<cplx> hat = fourier_coefficients(f.values());
  std::size_t best = 0;
  double best_mag = std::abs(hat[0]);
  KahanSum power;
  for (std::size_t xi = 0; xi < hat.size(); ++xi) {
    const double mag = std::abs(hat[xi]);
    if (mag > best_mag) {  // strict: ties keep the smallest frequency
      best_mag = mag;
      best = xi;
    }
    const double sq = mag * mag;
    power.add(sq * sq);
  }
  WitnessReport w;
  w.frequency = static_cast<std::int64_t>(best);
  w.coefficient = hat[best];
  w.lower_bound = std::sqrt(std::max(0.0, power.value()));
  return w;
}

}  // namespace ulab
