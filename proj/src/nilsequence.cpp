#include "ulab/nilsequence.hpp"

#include <cmath>

#include "ulab/errors.hpp"
#include "ulab/rng.hpp"

namespace ulab {

double heisenberg_phase(double alpha, double beta, std::int64_t n) {
  PolySequence2D seq = PolySequence2D::heisenberg_linear(alpha, beta);
  ReducedH3Point r = h3_reduce(seq.eval(0, n));
  return mod1(-r.point.t12);
}

cplx heisenberg_nilchar(double alpha, double beta, std::int64_t n) {
  return e_of(heisenberg_phase(alpha, beta, n));
}

double bi_phase(double alpha, double beta, std::int64_t h, std::int64_t n) {
  PolySequence2D seq = PolySequence2D::bidegree_one_one(alpha, beta);
  ReducedH3Point r = h3_reduce(seq.eval(h, n));
  return mod1(-r.point.t12);
}

cplx bi_nilchar(double alpha, double beta, std::int64_t h, std::int64_t n) {
  return e_of(bi_phase(alpha, beta, h, n));
}

double semidirect_phase(double beta, double gamma, double delta, std::int64_t h,
                        std::int64_t n) {
  const double dn = static_cast<double>(n);
  TildeElement left{0.0, h3_e2(beta * dn), PetalElement{gamma * dn, 0.0}};
  TildeElement right{delta * static_cast<double>(h), H3Element{}, PetalElement{}};
  ReducedTilde r = tilde_reduce(tilde_mul(left, right));
  return mod1(-r.point.g.t12);
}

cplx semidirect_nilchar(double beta, double gamma, double delta, std::int64_t h,
                        std::int64_t n) {
  return e_of(semidirect_phase(beta, gamma, delta, h, n));
}

cplx bracket_linear_char(double gamma, std::span<const std::pair<double, double>> petal_pairs,
                         std::int64_t h, std::int64_t n, std::size_t m_max) {
  if (petal_pairs.size() > m_max)
    throw InputError("bracket_linear_char: frequency list longer than the cap of " +
                     std::to_string(m_max));
  double phase = mod1(gamma * static_cast<double>(n));
  for (const auto& [alpha, beta] : petal_pairs)
    phase = mod1(phase + bi_phase(alpha, beta, h, n));
  return e_of(phase);
}

namespace {

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

double eta1_sq(double x) {
  x = mod1(x);
  if (x < 0.1 || x > 0.9) return 0.0;
  if (x < 0.4) return smoothstep((x - 0.1) / 0.3);
  if (x <= 0.6) return 1.0;
  return smoothstep((0.9 - x) / 0.3);
}

}  // namespace

double eta1(double x) { return std::sqrt(eta1_sq(x)); }
double eta2(double x) { return std::sqrt(1.0 - eta1_sq(x)); }

std::array<cplx, 2> vector_nilchar(double alpha, double beta, std::int64_t n) {
  const double bn = beta * static_cast<double>(n);
  const double an = alpha * static_cast<double>(n);
  const double y = mod1(bn);
  const double phase1 = mod1(an * std::floor(bn));
  const double phase2 = mod1(an * std::floor(bn - 0.5));
  return {e_of(phase1) * eta1(y), e_of(phase2) * eta2(y)};
}

VerticalFrequency VerticalFrequency::annihilating(double xi, double tol) {
  if (std::abs(xi - std::round(xi)) > tol)
    throw InputError("vertical frequency " + std::to_string(xi) +
                     " does not annihilate the center lattice (not an integer)");
  return VerticalFrequency{xi};
}

NilcharSpec NilcharSpec::heisenberg(double alpha, double beta, EvaluatorKind kind) {
  NilcharSpec s;
  s.manifold = Manifold::heisenberg;
  s.sequence = PolySequence2D::heisenberg_linear(alpha, beta);
  s.evaluator = kind;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

std::vector<cplx> evaluate_on_point(const NilcharSpec& spec, const H3Element& reduced) {
  switch (spec.evaluator) {
    case EvaluatorKind::phase_e_minus_z: return {e_of(-reduced.t12)};
    case EvaluatorKind::vector_pu: {
      // Same components as vector_nilchar read off the reduced coordinates:
      // on ({an},{bn},{-an floor(bn)}) the second bracket shifts by -x when
      // y < 1/2.
      const double x = reduced.t1, y = reduced.t2, z = reduced.t12;
      const double phase1 = -z;
      const double phase2 = y < 0.5 ? -z - x : -z;
      return {e_of(phase1) * eta1(y), e_of(phase2) * eta2(y)};
    }
  }
  throw InputError("bad evaluator");
}

double vertical_frequency_check(
    const std::function<std::vector<cplx>(const H3Element&)>& f, const VerticalFrequency& xi,
    std::size_t samples, std::uint64_t seed) {
  CounterRng rng(seed, 0x76657274);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double u = 4.0 * rng.uniform01() - 2.0;  // central coordinate
    H3Element x{rng.uniform01(), rng.uniform01(), rng.uniform01()};
    H3Element moved = h3_mul(h3_center(u), x);
    std::vector<cplx> fx = f(h3_reduce(x).point);
    std::vector<cplx> fmoved = f(h3_reduce(moved).point);
    const cplx rot = e_of(xi.xi * u);
    double dist = 0.0;
    for (std::size_t k = 0; k < fx.size(); ++k) {
      const cplx diff = fmoved[k] - rot * fx[k];
      dist += std::norm(diff);
    }
    worst = std::max(worst, std::sqrt(dist));
  }
  return worst;
}

double vertical_frequency_check(const NilcharSpec& spec, const VerticalFrequency& xi,
                                std::size_t samples, std::uint64_t seed) {
  return vertical_frequency_check(
      [&spec](const H3Element& p) { return evaluate_on_point(spec, p); }, xi, samples, seed);
}

}  // namespace ulab
