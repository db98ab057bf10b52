#include "ulab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "ulab/errors.hpp"
#include "ulab/nilsequence.hpp"
#include "ulab/rng.hpp"

namespace ulab {

namespace {
constexpr double kUnitTol = 1e-12;
}

Window window_for(std::int64_t n, std::int64_t h) {
  Window w;
  w.start = std::max<std::int64_t>(0, -h);
  const std::int64_t end = std::min(n, n - h);
  if (end > w.start) w.v.resize(static_cast<std::size_t>(end - w.start));
  return w;
}

HFamily::HFamily(std::int64_t domain_size, std::map<std::int64_t, Window> chi)
    : n_(domain_size), chi_(std::move(chi)) {
  if (domain_size <= 0) throw InputError("HFamily: domain size must be positive");
  if (chi_.empty()) throw InputError("HFamily: shift set must be nonempty");
  for (const auto& [h, w] : chi_) {
    shifts_.push_back(h);
    for (std::size_t i = 0; i < w.v.size(); ++i) {
      if (std::abs(std::abs(w.v[i]) - 1.0) > kUnitTol)
        throw InputError("HFamily: chi_" + std::to_string(h) + " is not unit-modulus at n = " +
                         std::to_string(w.start + static_cast<std::int64_t>(i)));
    }
  }
}

const Window& HFamily::chi(std::int64_t h) const {
  auto it = chi_.find(h);
  if (it == chi_.end()) throw InputError("missing shift " + std::to_string(h));
  return it->second;
}

HFamily HFamily::rotated(const std::map<std::int64_t, cplx>& units) const {
  std::map<std::int64_t, Window> out = chi_;
  for (auto& [h, w] : out) {
    auto it = units.find(h);
    if (it == units.end()) continue;
    for (auto& z : w.v) z *= it->second;
  }
  return HFamily(n_, std::move(out));
}

HFamily coboundary_family(std::span<const cplx> theta, std::span<const std::int64_t> shifts) {
  const std::int64_t n = static_cast<std::int64_t>(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i)
    if (std::abs(std::abs(theta[i]) - 1.0) > kUnitTol)
      throw InputError("coboundary_family: theta is not unimodular at n = " + std::to_string(i));
  std::map<std::int64_t, Window> chi;
  for (std::int64_t h : shifts) {
    Window w = window_for(n, h);
    for (std::int64_t x = w.start; x < w.end(); ++x)
      w.v[static_cast<std::size_t>(x - w.start)] =
          theta[static_cast<std::size_t>(x + h)] * std::conj(theta[static_cast<std::size_t>(x)]);
    chi.emplace(h, std::move(w));
  }
  return HFamily(n, std::move(chi));
}

double verify_cocycle(const HFamily& family, std::size_t samples, std::uint64_t seed) {
  struct Pair {
    std::int64_t h, k, lo, hi;
  };
  std::vector<Pair> eligible;
  for (std::int64_t h : family.shifts()) {
    for (std::int64_t k : family.shifts()) {
      if (!family.has(h + k)) continue;
      const Window& wh = family.chi(h);
      const Window& wk = family.chi(k);
      const Window& whk = family.chi(h + k);
      // need n in win(h) and win(h+k), and n+h in win(k)
      const std::int64_t lo = std::max({wh.start, whk.start, wk.start - h});
      const std::int64_t hi = std::min({wh.end(), whk.end(), wk.end() - h});
      if (lo < hi) eligible.push_back({h, k, lo, hi});
    }
  }
  if (eligible.empty())
    throw InputError("verify_cocycle: no shift pair (h, k) has h+k in the family with a "
                     "nonempty common window");
  CounterRng rng(seed, 0xc0c);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Pair& p = eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
    const std::int64_t n = rng.uniform_int(p.lo, p.hi - 1);
    const cplx lhs = family.chi(p.h + p.k).at(n);
    const cplx rhs = family.chi(p.h).at(n) * family.chi(p.k).at(n + p.h);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

namespace {

std::vector<cplx> integrate_theta(const HFamily& family) {
  const std::int64_t n = family.domain_size();
  std::vector<cplx> theta(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    if (!family.has(i))
      throw InputError("insufficient shift coverage: shift " + std::to_string(i) +
                       " is missing (need 0.." + std::to_string(n - 1) + ")");
    const Window& w = family.chi(i);
    if (!w.contains(0))
      throw InputError("insufficient shift coverage: chi_" + std::to_string(i) +
                       " window does not contain 0");
    theta[static_cast<std::size_t>(i)] = w.at(0);
  }
  return theta;
}

}  // namespace

IntegrationResult integrate_cocycle(const HFamily& family, std::size_t samples,
                                    std::uint64_t seed) {
  IntegrationResult out;
  out.theta = integrate_theta(family);
  const std::int64_t n = family.domain_size();
  CounterRng rng(seed, 0x1b7);
  const auto& shifts = family.shifts();
  for (std::size_t i = 0; i < samples; ++i) {
    const std::int64_t h = shifts[static_cast<std::size_t>(rng.below(shifts.size()))];
    const Window& w = family.chi(h);
    const std::int64_t lo = std::max({w.start, std::int64_t{0}, -h});
    const std::int64_t hi = std::min({w.end(), n, n - h});
    if (lo >= hi) continue;
    const std::int64_t x = rng.uniform_int(lo, hi - 1);
    const cplx lhs = out.theta[static_cast<std::size_t>(x + h)];
    const cplx rhs = out.theta[static_cast<std::size_t>(x)] * w.at(x);
    out.max_residual = std::max(out.max_residual, std::abs(lhs - rhs));
  }
  return out;
}

cplx quadruple_product(const HFamily& family, std::int64_t h1, std::int64_t h2, std::int64_t h3,
                       std::int64_t h4, std::int64_t n) {
  if (h1 + h2 != h3 + h4)
    throw InputError("quadruple_product: unbalanced quadruple (h1+h2 != h3+h4)");
  const std::int64_t s = h1 - h4;
  const Window& w1 = family.chi(h1);
  const Window& w2 = family.chi(h2);
  const Window& w3 = family.chi(h3);
  const Window& w4 = family.chi(h4);
  if (!w1.contains(n) || !w3.contains(n) || !w2.contains(n + s) || !w4.contains(n + s))
    throw InputError("quadruple_product: point outside a chi window");
  return w1.at(n) * w2.at(n + s) * std::conj(w3.at(n)) * std::conj(w4.at(n + s));
}

namespace {

struct QuadRange {
  std::int64_t lo = 0, hi = 0;  // common n window (empty when lo >= hi)
};

QuadRange quad_range(const HFamily& family, std::int64_t h1, std::int64_t h2, std::int64_t h3,
                     std::int64_t h4) {
  const std::int64_t s = h1 - h4;
  const Window& w1 = family.chi(h1);
  const Window& w2 = family.chi(h2);
  const Window& w3 = family.chi(h3);
  const Window& w4 = family.chi(h4);
  QuadRange r;
  r.lo = std::max({w1.start, w3.start, w2.start - s, w4.start - s});
  r.hi = std::min({w1.end(), w3.end(), w2.end() - s, w4.end() - s});
  return r;
}

double quad_statistic(const HFamily& family, std::int64_t h1, std::int64_t h2, std::int64_t h3,
                      std::int64_t h4, const QuadRange& r) {
  const std::int64_t s = h1 - h4;
  const Window& w1 = family.chi(h1);
  const Window& w2 = family.chi(h2);
  const Window& w3 = family.chi(h3);
  const Window& w4 = family.chi(h4);
  KahanCplxSum acc;
  for (std::int64_t n = r.lo; n < r.hi; ++n)
    acc.add(w1.at(n) * w2.at(n + s) * std::conj(w3.at(n)) * std::conj(w4.at(n + s)));
  return std::abs(acc.value()) / static_cast<double>(r.hi - r.lo);
}

}  // namespace

ChachaResult chacha_factorization(const HFamily& family, std::size_t samples,
                                  std::uint64_t seed) {
  const auto& shifts = family.shifts();
  CounterRng rng(seed, 0xc4ac4a);
  double quad_res = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::int64_t h1 = shifts[static_cast<std::size_t>(rng.below(shifts.size()))];
    const std::int64_t h3 = shifts[static_cast<std::size_t>(rng.below(shifts.size()))];
    const std::int64_t h4 = shifts[static_cast<std::size_t>(rng.below(shifts.size()))];
    const std::int64_t h2 = h3 + h4 - h1;
    if (!family.has(h2)) continue;
    QuadRange r = quad_range(family, h1, h2, h3, h4);
    if (r.lo >= r.hi) continue;
    const std::int64_t n = rng.uniform_int(r.lo, r.hi - 1);
    quad_res = std::max(quad_res,
                        std::abs(quadruple_product(family, h1, h2, h3, h4, n) - cplx{1.0, 0.0}));
  }
  if (quad_res > 1e-9)
    throw InputError("chacha_factorization: family violates the exact quadruple identity "
                     "(measured residual " +
                     std::to_string(quad_res) + " > 1e-9)");

  ChachaResult out;
  out.quadruple_residual = quad_res;
  out.theta = integrate_theta(family);
  const std::int64_t n = family.domain_size();
  const Window& chi0 = family.chi(0);
  out.theta_prime.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    out.theta_prime[static_cast<std::size_t>(i)] =
        out.theta[static_cast<std::size_t>(i)] * std::conj(chi0.at(i));

  for (std::size_t i = 0; i < samples; ++i) {
    const std::int64_t h = shifts[static_cast<std::size_t>(rng.below(shifts.size()))];
    const Window& w = family.chi(h);
    const std::int64_t lo = std::max({w.start, std::int64_t{0}, -h});
    const std::int64_t hi = std::min({w.end(), n, n - h});
    if (lo >= hi) continue;
    const std::int64_t x = rng.uniform_int(lo, hi - 1);
    const cplx lhs = w.at(x);
    const cplx rhs = out.theta[static_cast<std::size_t>(x + h)] *
                     std::conj(out.theta_prime[static_cast<std::size_t>(x)]);
    out.max_residual = std::max(out.max_residual, std::abs(lhs - rhs));
  }
  return out;
}

HFamily phase_align(std::span<const cplx> f, const HFamily& family) {
  if (static_cast<std::int64_t>(f.size()) != family.domain_size())
    throw InputError("phase_align: f and the family have different domain sizes");
  std::map<std::int64_t, cplx> units;
  for (std::int64_t h : family.shifts()) {
    const Window& w = family.chi(h);
    KahanCplxSum acc;
    std::size_t count = 0;
    for (std::int64_t x = w.start; x < w.end(); ++x) {
      const std::int64_t y = x + h;
      if (x < 0 || y < 0 || x >= family.domain_size() || y >= family.domain_size()) continue;
      const cplx df = f[static_cast<std::size_t>(y)] * std::conj(f[static_cast<std::size_t>(x)]);
      acc.add(df * w.at(x));
      ++count;
    }
    if (count == 0) continue;
    const cplx z = acc.value() / static_cast<double>(count);
    if (std::abs(z) < 1e-15) continue;  // degenerate: leave chi_h unchanged
    units[h] = std::conj(z) / std::abs(z);
  }
  return family.rotated(units);
}

QuadrupleStats quadruple_scan(std::span<const cplx> f, const HFamily& family, double c,
                              const ScanBudget& budget, const ExecConfig& cfg,
                              const std::function<void(const QuadrupleRow&)>& sink) {
  if (!f.empty() && static_cast<std::int64_t>(f.size()) != family.domain_size())
    throw InputError("quadruple_scan: f and the family have different domain sizes");
  const std::int64_t n = family.domain_size();
  const std::int64_t min_window = budget.min_window >= 0 ? budget.min_window : n / 4;
  const auto& shifts = family.shifts();
  std::set<std::int64_t> shift_set(shifts.begin(), shifts.end());

  // Upper bound on the triple count decides enumeration vs sampling: each of
  // (h1, h3, h4) ranges over the shift set, with h2 filtered inside.
  const double bound = std::pow(static_cast<double>(shifts.size()), 3.0);

  QuadrupleStats stats;
  stats.threshold = c;

  if (bound <= static_cast<double>(budget.enumeration_limit)) {
    struct Tally {
      std::uint64_t total = 0, passing = 0, skipped = 0;
    };
    std::vector<Tally> tallies(shifts.size());
    auto scan_h = [&](std::size_t hi_idx, const std::function<void(const QuadrupleRow&)>& emit) {
      const std::int64_t h1 = shifts[hi_idx];
      Tally& t = tallies[hi_idx];
      for (std::int64_t h3 : shifts) {
        for (std::int64_t h4 : shifts) {
          const std::int64_t h2 = h3 + h4 - h1;
          if (!shift_set.count(h2)) continue;
          QuadRange r = quad_range(family, h1, h2, h3, h4);
          QuadrupleRow row{h1, h3 - h1, h4 - h1, 0.0, false};
          if (r.hi - r.lo < min_window) {
            ++t.skipped;  // too truncated to mean anything; not part of total
            row.skipped = true;
          } else {
            ++t.total;
            row.statistic = quad_statistic(family, h1, h2, h3, h4, r);
            if (row.statistic >= c) ++t.passing;
          }
          if (emit) emit(row);
        }
      }
    };
    if (sink) {
      for (std::size_t i = 0; i < shifts.size(); ++i) scan_h(i, sink);  // serial: ordered rows
    } else {
      parallel_blocks(cfg.threads, shifts.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) scan_h(i, nullptr);
      });
    }
    for (const Tally& t : tallies) {
      stats.total += t.total;
      stats.passing += t.passing;
      stats.skipped += t.skipped;
    }
    stats.sampled = false;
    return stats;
  }

  // Sampling mode: fixed 1024 sample blocks so the draw sequence does not
  // depend on the thread count.
  constexpr std::size_t kBlocks = 1024;
  struct Tally {
    std::uint64_t total = 0, passing = 0, skipped = 0;
  };
  std::vector<Tally> tallies(kBlocks);
  auto run_block = [&](std::size_t block, const std::function<void(const QuadrupleRow&)>& emit) {
    const std::uint64_t lo = budget.samples * block / kBlocks;
    const std::uint64_t hi = budget.samples * (block + 1) / kBlocks;
    CounterRng rng(budget.seed, 0x5ca0000 + block);
    Tally& t = tallies[block];
    for (std::uint64_t i = lo; i < hi; ++i) {
      std::int64_t h1 = 0, h2 = 0, h3 = 0, h4 = 0;
      bool found = false;
      for (int attempt = 0; attempt < 10000; ++attempt) {
        h1 = shifts[static_cast<std::size_t>(rng.below(shifts.size()))];
        h3 = shifts[static_cast<std::size_t>(rng.below(shifts.size()))];
        h4 = shifts[static_cast<std::size_t>(rng.below(shifts.size()))];
        h2 = h3 + h4 - h1;
        if (shift_set.count(h2)) {
          found = true;
          break;
        }
      }
      if (!found)
        throw InputError("quadruple_scan: shift set too sparse to sample additive quadruples");
      QuadRange r = quad_range(family, h1, h2, h3, h4);
      QuadrupleRow row{h1, h3 - h1, h4 - h1, 0.0, false};
      if (r.hi - r.lo < min_window) {
        ++t.skipped;
        row.skipped = true;
      } else {
        ++t.total;
        row.statistic = quad_statistic(family, h1, h2, h3, h4, r);
        if (row.statistic >= c) ++t.passing;
      }
      if (emit) emit(row);
    }
  };
  if (sink) {
    for (std::size_t b = 0; b < kBlocks; ++b) run_block(b, sink);
  } else {
    parallel_blocks(cfg.threads, kBlocks, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t b = lo; b < hi; ++b) run_block(b, nullptr);
    });
  }
  for (const Tally& t : tallies) {
    stats.total += t.total;
    stats.passing += t.passing;
    stats.skipped += t.skipped;
  }
  stats.sampled = true;
  const double p = stats.pass_fraction();
  stats.stderr_value = std::sqrt(p * (1.0 - p) / static_cast<double>(std::max<std::uint64_t>(
                                                     1, stats.total)));
  return stats;
}

cplx fw_mean(const std::array<std::pair<double, double>, 4>& specs,
             const std::array<int, 4>& signs, std::int64_t n, const ExecConfig& cfg) {
  (void)cfg;  // cheap enough to stay serial; kept for interface uniformity
  if (n <= 0) throw InputError("fw_mean: N must be positive");
  KahanCplxSum acc;
  for (std::int64_t x = 1; x <= n; ++x) {
    // positive and negative phases are summed separately so that
    // conjugate-cancelling pairs subtract to an exact zero
    double pos = 0.0, neg = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double p = heisenberg_phase(specs[static_cast<std::size_t>(j)].first,
                                        specs[static_cast<std::size_t>(j)].second, x);
      if (signs[static_cast<std::size_t>(j)] >= 0) pos += p;
      else neg += p;
    }
    acc.add(pos == neg ? cplx{1.0, 0.0} : e_of(pos - neg));
  }
  return acc.value() / static_cast<double>(n);
}

double mixed_derivative_symmetry(std::span<const cplx> theta, std::int64_t h, std::int64_t k) {
  const std::int64_t n = static_cast<std::int64_t>(theta.size());
  auto chi = [&theta](std::int64_t hh, std::int64_t nn) {
    return theta[static_cast<std::size_t>(nn + hh)] * std::conj(theta[static_cast<std::size_t>(nn)]);
  };
  const std::int64_t lo = std::max({std::int64_t{0}, -h, -k, -h - k});
  const std::int64_t hi = std::min({n, n - h, n - k, n - h - k});
  if (lo >= hi)
    throw InputError("mixed_derivative_symmetry: window too small for shifts h = " +
                     std::to_string(h) + ", k = " + std::to_string(k));
  double worst = 0.0;
  for (std::int64_t x = lo; x < hi; ++x) {
    const cplx lhs = chi(h, x + k) * std::conj(chi(h, x));
    const cplx rhs = chi(k, x + h) * std::conj(chi(k, x));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double mixed_symmetry_residual(const std::function<cplx(std::int64_t, std::int64_t)>& chi,
                               std::int64_t n, std::int64_t h, std::int64_t k) {
  const std::int64_t lo = std::max({std::int64_t{0}, -h, -k, -h - k});
  const std::int64_t hi = std::min({n, n - h, n - k, n - h - k});
  if (lo >= hi) throw InputError("mixed_symmetry_residual: window too small");
  double worst = 0.0;
  for (std::int64_t x = lo; x < hi; ++x) {
    const cplx lhs = chi(h, x + k) * std::conj(chi(h, x));
    const cplx rhs = chi(k, x + h) * std::conj(chi(k, x));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace ulab
