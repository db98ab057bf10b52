#include "ulab/nilpotent.hpp"

#include <cmath>

#include "ulab/num.hpp"

namespace ulab {

H3Element h3_mul(const H3Element& x, const H3Element& y) {
  return {x.t1 + y.t1, x.t2 + y.t2, x.t12 + y.t12 + x.t1 * y.t2};
}

H3Element h3_inv(const H3Element& x) { return {-x.t1, -x.t2, -x.t12 + x.t1 * x.t2}; }

H3Element h3_commutator(const H3Element& x, const H3Element& y) {
  return h3_mul(h3_mul(h3_inv(x), h3_inv(y)), h3_mul(x, y));
}

H3Element h3_from_lattice(const LatticeWord3& w) {
  return {static_cast<double>(w.a), static_cast<double>(w.b), static_cast<double>(w.c)};
}

ReducedH3Point h3_reduce(const H3Element& x) {
  // Right-multiplying by gamma = (a, b, c) sends (t1, t2, t12) to
  // (t1 + a, t2 + b, t12 + c + t1 b); choosing b = -floor(t2), a = -floor(t1)
  // and then c to cut the central coordinate gives the closed form
  // ({t1}, {t2}, {t12 - floor(t2) t1}).
  const double fb = std::floor(x.t2);
  const double fa = std::floor(x.t1);
  const double z = x.t12 - fb * x.t1;
  const double fc = std::floor(z);
  ReducedH3Point r;
  r.point = {x.t1 - fa, x.t2 - fb, z - fc};
  if (r.point.t1 >= 1.0) r.point.t1 = 0.0;  // rounding guard at the edge
  if (r.point.t2 >= 1.0) r.point.t2 = 0.0;
  if (r.point.t12 >= 1.0) r.point.t12 = 0.0;
  r.lattice_word = {-static_cast<std::int64_t>(fa), -static_cast<std::int64_t>(fb),
                    -static_cast<std::int64_t>(fc)};
  return r;
}

PetalElement petal_mul(const PetalElement& x, const PetalElement& y) {
  return {x.a + y.a, x.c + y.c};
}

PetalElement petal_inv(const PetalElement& x) { return {-x.a, -x.c}; }

PetalElement petal_pow(const PetalElement& x, double t) { return {t * x.a, t * x.c}; }

H3Element petal_embed(const PetalElement& x) { return {x.a, 0.0, x.c}; }

PetalElement petal_conj(const PetalElement& p, const H3Element& g) {
  // g^{-1} (a, 0, c) g = (a, 0, c + a t2(g)); closed in the petal subgroup.
  return {p.a, p.c + p.a * g.t2};
}

GPair pair_mul(const GPair& x, const GPair& y) {
  return {h3_mul(x.first, y.first), petal_mul(petal_conj(x.second, y.first), y.second)};
}

GPair rho_action(double t, const GPair& p) {
  return {h3_mul(p.first, petal_embed(petal_pow(p.second, t))), p.second};
}

TildeElement tilde_mul(const TildeElement& x, const TildeElement& y) {
  GPair rotated = rho_action(y.t, {x.g, x.g1});
  GPair prod = pair_mul(rotated, {y.g, y.g1});
  return {x.t + y.t, prod.first, prod.second};
}

TildeElement tilde_inv(const TildeElement& x) {
  // Solve (t,(g,g1)) * (t',(g',g1')) = identity:
  //   g' = g1^t g^{-1},  g1' = (g1^{-1})^{g^{-1}}.
  H3Element ginv = h3_inv(x.g);
  H3Element gprime = h3_mul(petal_embed(petal_pow(x.g1, x.t)), ginv);
  PetalElement g1prime = petal_conj(petal_inv(x.g1), ginv);
  return {-x.t, gprime, g1prime};
}

TildeElement tilde_commutator(const TildeElement& x, const TildeElement& y) {
  return tilde_mul(tilde_mul(tilde_inv(x), tilde_inv(y)), tilde_mul(x, y));
}

TildeElement tilde_from_word(const TildeLatticeWord& w) {
  return {static_cast<double>(w.m), h3_from_lattice(w.gamma),
          {static_cast<double>(w.a), static_cast<double>(w.c)}};
}

ReducedTilde tilde_reduce(const TildeElement& x) {
  // Right multiplication by (m, (gamma, gamma1)) gives
  //   (t + m, (g g1^m gamma, g1^gamma gamma1)).
  // Stage 1: m = -floor(t) brings the outer coordinate into [0,1).
  const double fm = std::floor(x.t);
  const std::int64_t m = -static_cast<std::int64_t>(fm);
  H3Element g2 = h3_mul(x.g, petal_embed(petal_pow(x.g1, static_cast<double>(m))));
  // Stage 2: reduce the G component mod Gamma.
  ReducedH3Point rg = h3_reduce(g2);
  // Stage 3: the petal component picks up conjugation by gamma, then is cut
  // to [0,1)^2 by an integer petal word.
  PetalElement p = petal_conj(x.g1, h3_from_lattice(rg.lattice_word));
  const double pa = std::floor(p.a);
  const double pc = std::floor(p.c);
  ReducedTilde out;
  out.point.t = x.t - fm;
  if (out.point.t >= 1.0) out.point.t = 0.0;
  out.point.g = rg.point;
  out.point.g1 = {p.a - pa, p.c - pc};
  if (out.point.g1.a >= 1.0) out.point.g1.a = 0.0;
  if (out.point.g1.c >= 1.0) out.point.g1.c = 0.0;
  out.word.m = m;
  out.word.gamma = rg.lattice_word;
  out.word.a = -static_cast<std::int64_t>(pa);
  out.word.c = -static_cast<std::int64_t>(pc);
  return out;
}

bool subgroup_membership(const H3Element& x, Subgroup which, double tol) {
  switch (which) {
    case Subgroup::center_g2: return std::abs(x.t1) <= tol && std::abs(x.t2) <= tol;
    case Subgroup::petal: return std::abs(x.t2) <= tol;
  }
  return false;
}

H3Element PolySequence2D::eval(std::int64_t h, std::int64_t n) const {
  H3Element acc;  // identity
  for (const Term& t : terms) {
    const double e = t.exp.eval(h, n);
    acc = h3_mul(acc, t.gen == Generator::e1 ? h3_e1(e) : h3_e2(e));
  }
  return acc;
}

PolySequence2D PolySequence2D::heisenberg_linear(double alpha, double beta) {
  PolySequence2D s;
  s.terms.push_back({Generator::e2, {0.0, beta, 0.0}});
  s.terms.push_back({Generator::e1, {0.0, alpha, 0.0}});
  return s;
}

PolySequence2D PolySequence2D::bidegree_one_one(double alpha, double beta) {
  PolySequence2D s;
  s.terms.push_back({Generator::e2, {beta, 0.0, 0.0}});
  s.terms.push_back({Generator::e1, {0.0, alpha, 0.0}});
  return s;
}

H3Map partial_derivative(H3Map f, Var2 var, std::int64_t step) {
  return [f = std::move(f), var, step](std::int64_t h, std::int64_t n) {
    const std::int64_t hs = var == Var2::h ? h + step : h;
    const std::int64_t ns = var == Var2::n ? n + step : n;
    return h3_mul(f(hs, ns), h3_inv(f(h, n)));
  };
}

}  // namespace ulab
