#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ulab/errors.hpp"
#include "ulab/functions.hpp"
#include "ulab/rng.hpp"

using namespace ulab;

namespace {

CyclicFunction random_unimodular(std::int64_t m, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<cplx> v(static_cast<std::size_t>(m));
  for (auto& z : v) z = e_of(rng.uniform01());
  return CyclicFunction(m, std::move(v));
}

}  // namespace

TEST_CASE("zero extension places the window and nothing else") {
  IntervalFunction ones = IntervalFunction::constant(3, {1.0, 0.0});
  CyclicFunction f = embed_zero_extend(ones, 12);
  CHECK(f.modulus() == 12);
  CHECK(f.at(0) == cplx{0.0, 0.0});
  for (int x = 1; x <= 3; ++x) CHECK(f.at(x) == cplx{1.0, 0.0});
  for (int x = 4; x < 12; ++x) CHECK(f.at(x) == cplx{0.0, 0.0});
}

TEST_CASE("zero extension copies phases pointwise") {
  std::vector<cplx> v{e_of(1.0 / 3), e_of(2.0 / 3), e_of(1.0)};
  IntervalFunction f(3, v);
  CyclicFunction g = embed_zero_extend(f, 12);
  for (int n = 1; n <= 3; ++n) CHECK(g.at(n) == f.at(n));  // bit-identical copy
}

TEST_CASE("zero extension rejects an aliasing modulus") {
  IntervalFunction f = IntervalFunction::constant(5, {1.0, 0.0});
  CHECK_THROWS_AS(embed_zero_extend(f, 5), InputError);
  CHECK_THROWS_AS(embed_zero_extend(f, 4), InputError);
}

TEST_CASE("restriction of the extension recovers f exactly") {
  CounterRng rng(7);
  std::vector<cplx> v(17);
  for (auto& z : v) z = e_of(rng.uniform01()) * rng.uniform01();
  IntervalFunction f(17, v);
  CyclicFunction g = embed_zero_extend(f, 64);
  for (int n = 1; n <= 17; ++n) CHECK(g.at(n) == f.at(n));
}

TEST_CASE("phase polynomial functions") {
  SUBCASE("zero phase") {
    IntervalFunction f = phase_poly_function(PhasePolynomial({0.0}), 4);
    for (int n = 1; n <= 4; ++n) CHECK(f.at(n) == cplx{1.0, 0.0});
  }
  SUBCASE("half-integer slope alternates") {
    IntervalFunction f = phase_poly_function(PhasePolynomial({0.0, 0.5}), 4);
    CHECK(f.at(1).real() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(f.at(2).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.at(3).real() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(f.at(4).real() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("quadratic phase evaluates directly") {
    IntervalFunction f = phase_poly_function(PhasePolynomial({0.0, 0.0, 0.1}), 3);
    CHECK(std::abs(f.at(1) - e_of(0.1)) < 1e-13);
    CHECK(std::abs(f.at(2) - e_of(0.4)) < 1e-13);
    CHECK(std::abs(f.at(3) - e_of(0.9)) < 1e-13);
  }
  SUBCASE("all moduli are 1") {
    IntervalFunction f = phase_poly_function(PhasePolynomial({0.2, 0.7, 0.11, 0.013}), 50);
    for (int n = 1; n <= 50; ++n) CHECK(std::abs(std::abs(f.at(n)) - 1.0) < 1e-14);
  }
}

TEST_CASE("multiplicative derivative on the cyclic group") {
  SUBCASE("constant unimodular gives 1") {
    CyclicFunction f = CyclicFunction::constant(7, e_of(0.37));
    CyclicFunction d = mult_derivative(f, 3);
    for (int x = 0; x < 7; ++x) CHECK(std::abs(d.at(x) - cplx{1.0, 0.0}) < 1e-15);
  }
  SUBCASE("h = 0 gives |f|^2 = 1 for unimodular f") {
    CyclicFunction f = random_unimodular(11, 3);
    CyclicFunction d = mult_derivative(f, 0);
    for (int x = 0; x < 11; ++x) CHECK(std::abs(d.at(x) - cplx{1.0, 0.0}) < 1e-15);
  }
  SUBCASE("quadratic phase differentiates to a linear phase") {
    std::vector<cplx> v(5);
    for (int x = 0; x < 5; ++x) v[static_cast<std::size_t>(x)] = e_of(x * x / 5.0);
    CyclicFunction f(5, v);
    CyclicFunction d = mult_derivative(f, 1);
    for (int x = 0; x < 5; ++x) CHECK(std::abs(d.at(x) - e_of((2 * x + 1) / 5.0)) < 1e-12);
  }
}

TEST_CASE("windowed derivative keeps the offset") {
  SUBCASE("constant function, positive shift") {
    IntervalFunction f = IntervalFunction::constant(10, {1.0, 0.0});
    WindowedDerivative d = mult_derivative_interval(f, 3);
    CHECK(d.offset == 1);
    CHECK(d.window.size() == 7);
    for (int i = 1; i <= 7; ++i) CHECK(std::abs(d.window.at(i) - cplx{1.0, 0.0}) < 1e-15);
  }
  SUBCASE("quadratic phase expands the square") {
    PhasePolynomial p({0.0, 0.0, 0.1});
    IntervalFunction f = phase_poly_function(p, 10);
    WindowedDerivative d = mult_derivative_interval(f, 2);
    CHECK(d.offset == 1);
    CHECK(d.window.size() == 8);
    for (int n = 1; n <= 8; ++n)
      CHECK(std::abs(d.window.at(n) - e_of(0.1 * (4 * n + 4))) < 1e-12);
  }
  SUBCASE("negative shift moves the offset") {
    IntervalFunction f = IntervalFunction::constant(10, {1.0, 0.0});
    WindowedDerivative d = mult_derivative_interval(f, -3);
    CHECK(d.offset == 4);
    CHECK(d.window.size() == 7);
  }
  SUBCASE("no overlap is an error") {
    IntervalFunction f = IntervalFunction::constant(10, {1.0, 0.0});
    CHECK_THROWS_AS(mult_derivative_interval(f, 10), InputError);
    CHECK_THROWS_AS(mult_derivative_interval(f, -10), InputError);
  }
}

TEST_CASE("derivative respects products of unimodular functions") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CyclicFunction f = random_unimodular(16, seed);
    CyclicFunction g = random_unimodular(16, seed + 100);
    std::vector<cplx> fg(16);
    for (int x = 0; x < 16; ++x) fg[static_cast<std::size_t>(x)] = f.at(x) * g.at(x);
    CyclicFunction prod(16, fg);
    CounterRng rng(seed + 55);
    std::int64_t h = rng.uniform_int(-20, 20);
    CyclicFunction lhs = mult_derivative(prod, h);
    CyclicFunction df = mult_derivative(f, h);
    CyclicFunction dg = mult_derivative(g, h);
    for (int x = 0; x < 16; ++x)
      CHECK(std::abs(lhs.at(x) - df.at(x) * dg.at(x)) < 1e-12);
  }
}

TEST_CASE("derivatives in different directions commute") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CyclicFunction f = random_unimodular(13, seed);
    CounterRng rng(seed + 1);
    std::int64_t h = rng.uniform_int(-30, 30);
    std::int64_t k = rng.uniform_int(-30, 30);
    CyclicFunction a = mult_derivative(mult_derivative(f, h), k);
    CyclicFunction b = mult_derivative(mult_derivative(f, k), h);
    for (int x = 0; x < 13; ++x) CHECK(std::abs(a.at(x) - b.at(x)) < 1e-12);
  }
}

TEST_CASE("s+1 derivatives kill a degree-s rational phase polynomial") {
  const std::int64_t m = 36;
  CounterRng rng(99);
  for (int s = 1; s <= 3; ++s) {
    std::vector<double> coeffs;
    for (int j = 0; j <= s; ++j)
      coeffs.push_back(static_cast<double>(rng.uniform_int(0, m - 1)) / static_cast<double>(m));
    PhasePolynomial p(coeffs);
    std::vector<cplx> v(static_cast<std::size_t>(m));
    for (std::int64_t x = 0; x < m; ++x) v[static_cast<std::size_t>(x)] = e_of(p.phase_at(x));
    CyclicFunction f(m, v);
    for (int rep = 0; rep <= s; ++rep) f = mult_derivative(f, rng.uniform_int(1, m - 1));
    for (std::int64_t x = 0; x < m; ++x) CHECK(std::abs(f.at(x) - cplx{1.0, 0.0}) < 1e-10);
  }
}

TEST_CASE("values beyond the unit disc are rejected, not clamped") {
  std::vector<cplx> v{cplx{1.0 + 1e-6, 0.0}};
  CHECK_THROWS_AS(IntervalFunction(1, v), InputError);
  CHECK_THROWS_AS(CyclicFunction(1, v), InputError);
  // within tolerance is fine
  std::vector<cplx> ok{cplx{1.0 + 1e-13, 0.0}};
  CHECK_NOTHROW(IntervalFunction(1, ok));
}

TEST_CASE("length mismatches are rejected") {
  std::vector<cplx> v{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
  CHECK_THROWS_AS(IntervalFunction(3, v), InputError);
  CHECK_THROWS_AS(CyclicFunction(1, v), InputError);
}
