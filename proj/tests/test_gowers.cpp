#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ulab/errors.hpp"
#include "ulab/gowers.hpp"
#include "ulab/rng.hpp"

using namespace ulab;

namespace {

// Independent oracle: the average of the full 2^d-fold product over every
// cube, written as literally as possible.  No shared code with the library's
// incremental enumeration.
double brute_force_power(const CyclicFunction& f, int d) {
  const std::int64_t m = f.modulus();
  std::vector<std::int64_t> h(static_cast<std::size_t>(d), 0);
  cplx total{0.0, 0.0};
  std::uint64_t tuples = 1;
  for (int j = 0; j < d; ++j) tuples *= static_cast<std::uint64_t>(m);
  for (std::uint64_t code = 0; code < tuples; ++code) {
    std::uint64_t c = code;
    for (int j = 0; j < d; ++j) {
      h[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(m));
      c /= static_cast<std::uint64_t>(m);
    }
    for (std::int64_t x = 0; x < m; ++x) {
      cplx prod{1.0, 0.0};
      for (int mask = 0; mask < (1 << d); ++mask) {
        std::int64_t y = x;
        int bits = 0;
        for (int j = 0; j < d; ++j)
          if (mask & (1 << j)) {
            y += h[static_cast<std::size_t>(j)];
            ++bits;
          }
        cplx v = f.at(y);
        prod *= (bits % 2 == 1) ? std::conj(v) : v;
      }
      total += prod;
    }
  }
  double denom = std::pow(static_cast<double>(m), static_cast<double>(d + 1));
  return total.real() / denom;
}

CyclicFunction random_unimodular(std::int64_t m, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<cplx> v(static_cast<std::size_t>(m));
  for (auto& z : v) z = e_of(rng.uniform01());
  return CyclicFunction(m, std::move(v));
}

CyclicFunction quadratic_mod5() {
  std::vector<cplx> v(5);
  for (int x = 0; x < 5; ++x) v[static_cast<std::size_t>(x)] = e_of(x * x / 5.0);
  return CyclicFunction(5, v);
}

double rel_diff(double a, double b) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-30});
  return std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("direct norm of trivial inputs") {
  CHECK(gowers_norm_cyclic(CyclicFunction::constant(5, {1.0, 0.0}), 2).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  std::vector<cplx> lin(5);
  for (int x = 0; x < 5; ++x) lin[static_cast<std::size_t>(x)] = e_of(x / 5.0);
  CHECK(gowers_norm_cyclic(CyclicFunction(5, lin), 2).value ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the mod-5 quadratic phase has U^2 norm (1/5)^(1/4)") {
  NormResult r = gowers_norm_cyclic(quadratic_mod5(), 2);
  CHECK(std::abs(r.power_value - 0.2) < 1e-12);
  CHECK(std::abs(r.value - std::pow(0.2, 0.25)) < 1e-10);
  // (1/5)^(1/4) = 0.66874...
  CHECK(r.value == doctest::Approx(0.6687403).epsilon(1e-6));
}

TEST_CASE("direct agrees with the literal cube-product oracle") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    CyclicFunction f = random_unimodular(9, seed);
    for (int d = 1; d <= 3; ++d) {
      double oracle = brute_force_power(f, d);
      NormResult lib = gowers_norm_cyclic(f, d);
      CHECK(rel_diff(oracle, lib.power_value) < 1e-10);
    }
  }
}

TEST_CASE("recursive matches direct") {
  SUBCASE("random function on Z/8Z at d = 3") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      CyclicFunction f = random_unimodular(8, seed);
      CHECK(rel_diff(gowers_norm_cyclic(f, 3).power_value,
                     gowers_norm_recursive(f, 3).power_value) < 1e-10);
    }
  }
  SUBCASE("constant at d = 4") {
    CHECK(gowers_norm_recursive(CyclicFunction::constant(6, {1.0, 0.0}), 4).value ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("third derivative of a quadratic phase is trivial") {
    CHECK(gowers_norm_recursive(quadratic_mod5(), 3).value ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("d = 1 is rejected") {
    CHECK_THROWS_AS(gowers_norm_recursive(quadratic_mod5(), 1), InputError);
  }
}

TEST_CASE("U^2 by FFT") {
  SUBCASE("single Fourier mode") {
    std::vector<cplx> v(16);
    for (int x = 0; x < 16; ++x) v[static_cast<std::size_t>(x)] = e_of(3.0 * x / 16.0);
    NormResult r = u2_norm_fft(CyclicFunction(16, v));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("zero function") {
    CHECK(u2_norm_fft(CyclicFunction::constant(8, {0.0, 0.0})).value == 0.0);
  }
  SUBCASE("equals the direct enumeration for the quadratic phase") {
    CHECK(rel_diff(u2_norm_fft(quadratic_mod5()).power_value,
                   gowers_norm_cyclic(quadratic_mod5(), 2).power_value) < 1e-10);
  }
  SUBCASE("random functions, non-power-of-two modulus") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      CyclicFunction f = random_unimodular(12, seed);
      CHECK(rel_diff(u2_norm_fft(f).power_value, gowers_norm_cyclic(f, 2).power_value) < 1e-10);
    }
  }
}

TEST_CASE("sampled estimator") {
  SUBCASE("constant function is exact with zero stderr") {
    NormResult r = gowers_norm_sampled(CyclicFunction::constant(7, {1.0, 0.0}), 3, 1000, 42);
    CHECK(r.value == 1.0);
    CHECK(r.power_value == 1.0);
    CHECK(*r.stderr_value == 0.0);
  }
  SUBCASE("quadratic phase lands within 4 sigma of 1/5") {
    NormResult r = gowers_norm_sampled(quadratic_mod5(), 2, 1000000, 7);
    REQUIRE(r.stderr_value.has_value());
    CHECK(std::abs(r.power_value - 0.2) <= 4.0 * std::max(*r.stderr_value, 1e-12));
  }
  SUBCASE("same seed, bit-identical result") {
    NormResult a = gowers_norm_sampled(quadratic_mod5(), 2, 10000, 99);
    NormResult b = gowers_norm_sampled(quadratic_mod5(), 2, 10000, 99);
    CHECK(a.power_value == b.power_value);
    CHECK(a.value == b.value);
    CHECK(*a.stderr_value == *b.stderr_value);
  }
  SUBCASE("input contract") {
    CHECK_THROWS_AS(gowers_norm_sampled(quadratic_mod5(), 2, 50, 1), InputError);
    CHECK_THROWS_AS(gowers_norm_sampled(quadratic_mod5(), 2, 105, 1), InputError);
  }
}

TEST_CASE("interval norms") {
  SUBCASE("constant is exactly normalized") {
    for (int d = 1; d <= 3; ++d) {
      NormMethod method = d >= 2 ? NormMethod::recursive : NormMethod::direct;
      NormResult r = gowers_norm_interval(IntervalFunction::constant(20, {1.0, 0.0}), d, method);
      CHECK(r.value == doctest::Approx(1.0).epsilon(1e-11));
    }
  }
  SUBCASE("phase polynomials are extremal") {
    CounterRng rng(5);
    for (int s = 1; s <= 2; ++s) {
      std::vector<double> coeffs;
      for (int j = 0; j <= s; ++j) coeffs.push_back(rng.uniform01());
      IntervalFunction f = phase_poly_function(PhasePolynomial(coeffs), 30);
      NormResult r = gowers_norm_interval(f, s + 1, NormMethod::recursive);
      CHECK(std::abs(r.value - 1.0) < 1e-10);
    }
  }
  SUBCASE("direct and recursive agree on the interval normalization") {
    IntervalFunction f = phase_poly_function(PhasePolynomial({0.1, 0.37, 0.21}), 16);
    NormResult a = gowers_norm_interval(f, 2, NormMethod::direct);
    NormResult b = gowers_norm_interval(f, 2, NormMethod::recursive);
    CHECK(rel_diff(a.value, b.value) < 1e-10);
  }
}

TEST_CASE("budget refusal points at the sampled estimator") {
  ExecConfig tiny;
  tiny.work_budget = 1e6;
  try {
    gowers_norm_cyclic(random_unimodular(64, 1), 3, tiny);
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    CHECK(e.required_ops > e.budget_ops);
    CHECK(std::string(e.what()).find("sampled") != std::string::npos);
  }
}

TEST_CASE("invariances of the cyclic norm") {
  CyclicFunction f = random_unimodular(24, 17);
  const double base = gowers_norm_cyclic(f, 2).power_value;
  SUBCASE("modulation by a character") {
    std::vector<cplx> v(24);
    for (int x = 0; x < 24; ++x)
      v[static_cast<std::size_t>(x)] = f.at(x) * e_of(5.0 * x / 24.0);
    CHECK(rel_diff(gowers_norm_cyclic(CyclicFunction(24, v), 2).power_value, base) < 1e-10);
  }
  SUBCASE("translation") {
    std::vector<cplx> v(24);
    for (int x = 0; x < 24; ++x) v[static_cast<std::size_t>(x)] = f.at(x + 7);
    CHECK(rel_diff(gowers_norm_cyclic(CyclicFunction(24, v), 2).power_value, base) < 1e-10);
  }
  SUBCASE("conjugation") {
    std::vector<cplx> v(24);
    for (int x = 0; x < 24; ++x) v[static_cast<std::size_t>(x)] = std::conj(f.at(x));
    CHECK(rel_diff(gowers_norm_cyclic(CyclicFunction(24, v), 2).power_value, base) < 1e-12);
  }
}

TEST_CASE("norm monotonicity in d") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CyclicFunction f = random_unimodular(16, seed + 31);
    double u2 = gowers_norm_cyclic(f, 2).value;
    double u3 = gowers_norm_cyclic(f, 3).value;
    double u4 = gowers_norm_recursive(f, 4).value;
    CHECK(u2 <= u3 + 1e-9);
    CHECK(u3 <= u4 + 1e-9);
  }
}

TEST_CASE("power positivity") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CyclicFunction f = random_unimodular(10, seed);
    for (int d = 1; d <= 3; ++d) CHECK(gowers_norm_cyclic(f, d).power_value >= -1e-12);
  }
}

TEST_CASE("value is the 2^d-th root of the power") {
  CyclicFunction f = random_unimodular(20, 3);
  for (int d = 1; d <= 3; ++d) {
    NormResult r = gowers_norm_cyclic(f, d);
    CHECK(rel_diff(std::pow(r.value, std::ldexp(1.0, d)), r.power_value) < 1e-11);
  }
}

TEST_CASE("correlation") {
  SUBCASE("perfect correlation of a function with itself") {
    IntervalFunction f = phase_poly_function(PhasePolynomial({0.3, 0.7}), 12);
    cplx c = correlate(f, f);
    CHECK(std::abs(c - cplx{1.0, 0.0}) < 1e-13);
  }
  SUBCASE("alternating phase against the constant has zero mean") {
    IntervalFunction f = phase_poly_function(PhasePolynomial({0.0, 0.5}), 10);
    cplx c = correlate(f, IntervalFunction::constant(10, {1.0, 0.0}));
    CHECK(std::abs(c) < 1e-14);
  }
  SUBCASE("two linear phases give the geometric sum") {
    IntervalFunction f = phase_poly_function(PhasePolynomial({0.0, 0.3}), 10);
    IntervalFunction g = phase_poly_function(PhasePolynomial({0.0, 0.1}), 10);
    cplx expect{0.0, 0.0};
    for (int n = 1; n <= 10; ++n) expect += e_of(0.2 * n);
    expect /= 10.0;
    CHECK(std::abs(correlate(f, g) - expect) < 1e-13);
  }
  SUBCASE("mismatched domains are rejected") {
    CHECK_THROWS_AS(correlate(IntervalFunction::constant(3, {1.0, 0.0}),
                              IntervalFunction::constant(4, {1.0, 0.0})),
                    InputError);
  }
}

TEST_CASE("U^2 inverse witness") {
  SUBCASE("pure mode") {
    std::vector<cplx> v(32);
    for (int x = 0; x < 32; ++x) v[static_cast<std::size_t>(x)] = e_of(7.0 * x / 32.0);
    WitnessReport w = u2_inverse_witness(CyclicFunction(32, v));
    CHECK(w.frequency == 7);
    CHECK(std::abs(w.coefficient - cplx{1.0, 0.0}) < 1e-12);
  }
  SUBCASE("constant picks frequency zero") {
    WitnessReport w = u2_inverse_witness(CyclicFunction::constant(16, {1.0, 0.0}));
    CHECK(w.frequency == 0);
    CHECK(std::abs(w.coefficient - cplx{1.0, 0.0}) < 1e-12);
  }
  SUBCASE("dominant mode plus bounded noise") {
    CounterRng rng(11);
    std::vector<cplx> v(64);
    for (int x = 0; x < 64; ++x)
      v[static_cast<std::size_t>(x)] =
          0.8 * e_of(5.0 * x / 64.0) + 0.2 * e_of(rng.uniform01());
    CyclicFunction f(64, v);
    WitnessReport w = u2_inverse_witness(f);
    CHECK(w.frequency == 5);
    CHECK(std::abs(w.coefficient) >= w.lower_bound - 1e-12);
    // lower bound really is the squared U^2 norm
    CHECK(rel_diff(w.lower_bound, std::pow(u2_norm_fft(f).value, 2.0)) < 1e-10);
  }
  SUBCASE("witness soundness on random inputs") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      CyclicFunction f = random_unimodular(64, seed + 1000);
      WitnessReport w = u2_inverse_witness(f);
      CHECK(std::abs(w.coefficient) >= w.lower_bound - 1e-10);
    }
  }
}

TEST_CASE("phase polynomial with phase noise keeps a large norm") {
  // converse direction sanity: a degree-s phase times pointwise noise of
  // amplitude eps still has U^{s+1} norm at least 1 - 10 eps
  CounterRng rng(2024);
  for (double eps : {0.01, 0.05, 0.1}) {
    for (int s = 1; s <= 2; ++s) {
      std::vector<double> coeffs;
      for (int j = 0; j <= s; ++j) coeffs.push_back(rng.uniform01());
      PhasePolynomial p(coeffs);
      std::vector<cplx> v(50);
      for (int n = 1; n <= 50; ++n)
        v[static_cast<std::size_t>(n - 1)] =
            e_of(p.phase_at(n) + eps * (rng.uniform01() - 0.5));
      NormResult r = gowers_norm_interval(IntervalFunction(50, v), s + 1, NormMethod::recursive);
      CHECK(r.value >= 1.0 - 10.0 * eps);
    }
  }
}
