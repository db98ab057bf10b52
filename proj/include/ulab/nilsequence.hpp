#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ulab/nilpotent.hpp"
#include "ulab/num.hpp"

namespace ulab {

/// Phase of the canonical Heisenberg evaluation: build the e2-first sequence
/// e2^{beta n} e1^{alpha n}, reduce mod the lattice and read off -z.  Equals
/// alpha n floor(beta n) mod 1.
double heisenberg_phase(double alpha, double beta, std::int64_t n);
cplx heisenberg_nilchar(double alpha, double beta, std::int64_t n);

/// Two-variable evaluation from the sequence e2^{beta h} e1^{alpha n};
/// equals e(alpha n floor(beta h)).
double bi_phase(double alpha, double beta, std::int64_t h, std::int64_t n);
cplx bi_nilchar(double alpha, double beta, std::int64_t h, std::int64_t n);

/// Evaluation on the 3-step semidirect product: build
///   g~(h,n) = (0, (e2^{beta n}, e1^{gamma n})) * (delta h, (id, id)),
/// reduce mod the lattice, evaluate F((t,(g,g1))) = e(-z(g)).  Equals
/// e(gamma {delta h} n floor(beta n)).
double semidirect_phase(double beta, double gamma, double delta, std::int64_t h, std::int64_t n);
cplx semidirect_nilchar(double beta, double gamma, double delta, std::int64_t h, std::int64_t n);

/// e(gamma n) * prod_j bi_nilchar(alpha_j, beta_j, h, n); the list length is
/// capped (default 16).
cplx bracket_linear_char(double gamma, std::span<const std::pair<double, double>> petal_pairs,
                         std::int64_t h, std::int64_t n, std::size_t m_max = 16);

/// Partition of unity used by the vector-valued evaluator: eta1^2 rises with
/// a smoothstep on [0.1, 0.4], is 1 on [0.4, 0.6] and falls on [0.6, 0.9];
/// eta2^2 = 1 - eta1^2.  Supports are [0.1, 0.9] and [-0.4, 0.4] mod 1.
double eta1(double x);
double eta2(double x);

/// Vector-valued evaluation on the sphere S^3 in C^2:
///   ( e(alpha n floor(beta n)) eta1(beta n mod 1),
///     e(alpha n floor(beta n - 1/2)) eta2(beta n mod 1) ).
/// Continuous in the underlying nilmanifold point, unlike the scalar form.
std::array<cplx, 2> vector_nilchar(double alpha, double beta, std::int64_t n);

/// Central character xi((0,0,u)) = xi * u.  When annihilation of the center
/// lattice is requested, xi must be an integer.
struct VerticalFrequency {
  double xi = 0.0;
  static VerticalFrequency annihilating(double xi, double tol = 1e-9);
};

enum class Manifold { heisenberg, tilde_product };
enum class EvaluatorKind { phase_e_minus_z, vector_pu };

/// A nilmanifold, a polynomial sequence and an evaluator choice.  Scalar
/// evaluators are only piecewise continuous on the manifold (the fundamental
/// domain has edges); downstream consumers can check piecewise() and switch
/// to the vector form.
struct NilcharSpec {
  Manifold manifold = Manifold::heisenberg;
  PolySequence2D sequence;
  EvaluatorKind evaluator = EvaluatorKind::phase_e_minus_z;
  double alpha = 0.0, beta = 0.0;  // evaluator parameters (vector form)

  bool piecewise() const { return evaluator == EvaluatorKind::phase_e_minus_z; }
  static NilcharSpec heisenberg(double alpha, double beta,
                                EvaluatorKind kind = EvaluatorKind::phase_e_minus_z);
};

/// Evaluate the spec's F at a reduced Heisenberg point (components as a
/// vector; scalar evaluators yield one component).
std::vector<cplx> evaluate_on_point(const NilcharSpec& spec, const H3Element& reduced);

/// Samples random central elements g_s = (0,0,u) and random reduced points x
/// and returns max | F(g_s x) - e(xi(g_s)) F(x) | where F is evaluated after
/// reduction.  A residual near zero certifies the vertical frequency.
double vertical_frequency_check(const NilcharSpec& spec, const VerticalFrequency& xi,
                                std::size_t samples, std::uint64_t seed);

/// Same check for an arbitrary F given as a callable on reduced points.
double vertical_frequency_check(
    const std::function<std::vector<cplx>(const H3Element&)>& f, const VerticalFrequency& xi,
    std::size_t samples, std::uint64_t seed);

}  // namespace ulab
