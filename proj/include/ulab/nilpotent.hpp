#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace ulab {

/// Element of the free 2-step nilpotent group G on generators e1, e2, in the
/// coordinates (t1, t2, t12) = e2^{t2} e1^{t1} [e1,e2]^{t12} with
/// [x,y] = x^{-1} y^{-1} x y.
///
/// The multiplication law is
///   (t1, t2, t12) * (t1', t2', t12') = (t1+t1', t2+t2', t12+t12' + t1*t2').
/// Under this law the commutator of the generators is (0,0,1), the central
/// coordinate is t12, and the right-coset representative of (t1,t2,t12) mod
/// the integer lattice is ({t1}, {t2}, {t12 - floor(t2)*t1}).  Canonical
/// products put the e2 power first; see PolySequence2D.
struct H3Element {
  double t1 = 0.0, t2 = 0.0, t12 = 0.0;
};

H3Element h3_mul(const H3Element& x, const H3Element& y);
H3Element h3_inv(const H3Element& x);
inline H3Element h3_e1(double t) { return {t, 0.0, 0.0}; }
inline H3Element h3_e2(double t) { return {0.0, t, 0.0}; }
inline H3Element h3_center(double t) { return {0.0, 0.0, t}; }
/// x^{-1} y^{-1} x y.
H3Element h3_commutator(const H3Element& x, const H3Element& y);

struct LatticeWord3 {
  std::int64_t a = 0, b = 0, c = 0;  // the integer element e2^b e1^a [e1,e2]^c
};
H3Element h3_from_lattice(const LatticeWord3& w);

/// Representative of x Gamma in the fundamental domain [0,1)^3, together
/// with the lattice word gamma such that point = x * gamma.
struct ReducedH3Point {
  H3Element point;
  LatticeWord3 lattice_word;
};
ReducedH3Point h3_reduce(const H3Element& x);

/// Element e1^a [e1,e2]^c of the petal subgroup (abelian, normal in G).
struct PetalElement {
  double a = 0.0, c = 0.0;
};
PetalElement petal_mul(const PetalElement& x, const PetalElement& y);
PetalElement petal_inv(const PetalElement& x);
PetalElement petal_pow(const PetalElement& x, double t);
H3Element petal_embed(const PetalElement& x);  // (a, 0, c)
/// Conjugation p^g = g^{-1} p g; lands back in the petal subgroup.
PetalElement petal_conj(const PetalElement& p, const H3Element& g);

/// Pair (g, g1) in the inner semidirect product G x| G_petal, with
/// (g, g1) * (g', g1') = (g g', g1^{g'} g1').
using GPair = std::pair<H3Element, PetalElement>;
GPair pair_mul(const GPair& x, const GPair& y);
/// rho(t)(g, g1) = (g g1^t, g1), an action of R by automorphisms.
GPair rho_action(double t, const GPair& p);

/// Element (t, (g, g1)) of the outer semidirect product R x|_rho (G x| G_petal),
/// a 3-step nilpotent group.  Multiplication is
///   (t,(g,g1)) * (t',(g',g1')) = (t+t', rho(t')(g,g1) * (g',g1')).
struct TildeElement {
  double t = 0.0;
  H3Element g;
  PetalElement g1;
};
TildeElement tilde_mul(const TildeElement& x, const TildeElement& y);
TildeElement tilde_inv(const TildeElement& x);
TildeElement tilde_commutator(const TildeElement& x, const TildeElement& y);

struct TildeLatticeWord {
  std::int64_t m = 0;       // integer outer coordinate
  LatticeWord3 gamma;       // integer element of Gamma
  std::int64_t a = 0, c = 0;  // integer petal element
};
TildeElement tilde_from_word(const TildeLatticeWord& w);

/// Reduction mod the lattice Z x| (Gamma x| Gamma_petal): outer coordinate in
/// [0,1), g in the G/Gamma fundamental domain, petal coordinates in [0,1).
/// point = x * word under tilde_mul.
struct ReducedTilde {
  TildeElement point;
  TildeLatticeWord word;
};
ReducedTilde tilde_reduce(const TildeElement& x);

/// Membership tests for the two distinguished subgroups: the center
/// G_2 = [G,G] (t1 = t2 = 0) and the petal subgroup (t2 = 0).
enum class Subgroup { center_g2, petal };
bool subgroup_membership(const H3Element& x, Subgroup which, double tol = 1e-10);

/// Exponent of one generator power, affine in (h, n): value = a*h + b*n + c.
struct AffineExponent {
  double h = 0.0, n = 0.0, c = 0.0;
  double eval(std::int64_t hv, std::int64_t nv) const {
    return h * static_cast<double>(hv) + n * static_cast<double>(nv) + c;
  }
};

enum class Generator { e1, e2 };

/// Ordered product of generator powers with affine exponents; evaluation at
/// integer (h, n) multiplies left to right under h3_mul.
struct PolySequence2D {
  struct Term {
    Generator gen;
    AffineExponent exp;
  };
  std::vector<Term> terms;

  H3Element eval(std::int64_t h, std::int64_t n) const;

  /// The canonical (e2-first) Heisenberg sequence n -> e2^{beta n} e1^{alpha n}.
  static PolySequence2D heisenberg_linear(double alpha, double beta);
  /// The two-variable sequence (h, n) -> e2^{beta h} e1^{alpha n}.
  static PolySequence2D bidegree_one_one(double alpha, double beta);
};

/// Discrete derivative of a group-valued map: F(shifted) * F(.)^{-1}.
using H3Map = std::function<H3Element(std::int64_t, std::int64_t)>;
enum class Var2 { h, n };
H3Map partial_derivative(H3Map f, Var2 var, std::int64_t step);

}  // namespace ulab
