#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "twistlab/algebra.hpp"

namespace twistlab {

// invariant twist presented by a normal abelian subgroup and a form on it
struct FormTwist {
  AbelianStructure A;
  PairingForm beta;

  static FormTwist trivial(const Group& G) {
    FormTwist t;
    t.A = abelian_structure(G, std::vector<int>{G.id()});
    t.beta = PairingForm::trivial(t.A.basis.orders);
    return t;
  }
};

// F = (1/|A|) sum_{a,b in A} beta(a,b) a tensor b
inline TensorElement twist_from_form(const AbelianStructure& A, const PairingForm& beta) {
  TensorElement f(A.G);
  Cyclo inv_n(Rational(1, A.size()));
  for (int a : A.basis.members) {
    const auto& ca = A.basis.coords_of(a);
    for (int b : A.basis.members)
      f.t[{a, b}] = inv_n * beta.eval_coords(ca, A.basis.coords_of(b));
  }
  return f;
}
inline TensorElement realize(const FormTwist& t) { return twist_from_form(t.A, t.beta); }

// F = sum_{chi,psi} b(chi,psi) p_chi tensor p_psi, b a form on the dual group
inline TensorElement twist_from_dual_form(const AbelianStructure& A, const PairingForm& b) {
  TensorElement f(A.G);
  int n = A.size();
  Cyclo inv_n2(Rational(1, (long long)n * n));
  std::vector<std::vector<int>> chars((size_t)n);
  for (int ci = 0; ci < n; ++ci) chars[(size_t)ci] = A.char_vec(ci);
  // conjugated character values by member position, and the pairing table
  std::vector<Cyclo> cv((size_t)n * n), bval((size_t)n * n);
  for (int ci = 0; ci < n; ++ci)
    for (int pos = 0; pos < n; ++pos)
      cv[(size_t)ci * n + pos] =
          A.char_value(chars[(size_t)ci], A.basis.members[(size_t)pos]).conj();
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = 0; c2 < n; ++c2)
      bval[(size_t)c1 * n + c2] = b.eval_coords(chars[(size_t)c1], chars[(size_t)c2]);
  for (int pa = 0; pa < n; ++pa)
    for (int pb = 0; pb < n; ++pb) {
      Cyclo v;
      for (int c1 = 0; c1 < n; ++c1) {
        const Cyclo& left = cv[(size_t)c1 * n + pa];
        for (int c2 = 0; c2 < n; ++c2)
          v += bval[(size_t)c1 * n + c2] * left * cv[(size_t)c2 * n + pb];
      }
      f.add_term(A.basis.members[(size_t)pa], A.basis.members[(size_t)pb], inv_n2 * v);
    }
  return f;
}

inline std::vector<int> twist_support(const TensorElement& f) {
  return tensor_support_closure(f);
}

// recover the group-side form: beta(a,b) = |A| F[a,b]
inline PairingForm form_from_twist(const TensorElement& f, const AbelianStructure& A) {
  Cyclo n((long long)A.size());
  return form_from_values(A, [&](int a, int b) {
    auto it = f.t.find({a, b});
    if (it == f.t.end()) throw ExpectationError("tensor vanishes on the subgroup square");
    return n * it->second;
  });
}

// recover the dual-side form: b(chi,psi) = sum F[a,b] chi(a) psi(b)
inline PairingForm dual_form_from_twist(const TensorElement& f, const AbelianStructure& A) {
  PairingForm b;
  b.divisors = A.basis.orders;
  b.exponent = A.exponent();
  size_t r = (size_t)A.rank();
  b.m.assign(r, std::vector<int>(r, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      std::vector<int> chi(r, 0), psi(r, 0);
      chi[i] = 1;
      psi[j] = 1;
      Cyclo v = character_pair_evaluate(f, A, chi, psi);
      auto k = v.log_root(b.exponent);
      if (!k) throw ExpectationError("dual pairing value is not a root of unity");
      b.m[i][j] = (int)*k;
    }
  int n = A.size();
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = 0; c2 < n; ++c2) {
      auto chi = A.char_vec(c1), psi = A.char_vec(c2);
      if (character_pair_evaluate(f, A, chi, psi) != b.eval_coords(chi, psi))
        throw ExpectationError("dual pairing is not bi-multiplicative");
    }
  return b;
}

// both presentations of a form twist agree, and the Fourier transform returns
// the adjoint dual form
inline bool presentation_lemma_check(const AbelianStructure& A, const PairingForm& beta) {
  TensorElement group_side = twist_from_form(A, beta);
  PairingForm b = adjoint_dual_form(A, beta);
  if (!(group_side == twist_from_dual_form(A, b))) return false;
  return dual_form_from_twist(group_side, A) == b;
}

// standard symplectic-pair form on A = <u> x <v> with ord(u) = ord(v) = d:
// alpha(u^i v^s, u^j v^t) = zeta_d^{k (i t - j s)}
inline PairingForm standard_symplectic_form(const AbelianStructure& A, int u, int v, int k = 1) {
  int d = A.G.element_order(u);
  if (A.G.element_order(v) != d) throw UsageError("symplectic pair needs equal orders");
  if ((long long)d * d != (long long)A.size())
    throw UsageError("symplectic pair does not span the subgroup");
  std::map<int, std::pair<int, int>> coord;
  int cur_u = A.G.id();
  for (int i = 0; i < d; ++i) {
    int cur = cur_u;
    for (int s = 0; s < d; ++s) {
      coord[cur] = {i, s};
      cur = A.G.mul(cur, v);
    }
    cur_u = A.G.mul(cur_u, u);
  }
  if ((int)coord.size() != A.size()) throw UsageError("symplectic pair does not span");
  return form_from_values(A, [&](int a, int b) {
    auto [i, s] = coord.at(a);
    auto [j, t] = coord.at(b);
    return Cyclo::root_of_unity(d, (long long)k * ((long long)i * t - (long long)s * j));
  });
}

inline bool is_symmetric_twist(const TensorElement& f) { return ts_flip(f) == f; }
inline bool is_antisymmetric_twist(const TensorElement& f) {
  TensorElement p = ts_flip(f) * f;
  p.prune();
  return p == TensorElement::one(f.G);
}

// square root of an invariant form twist for odd exponent: the square of a
// form twist halves the exponent, so squaring the form undoes it
inline FormTwist sqrt_form_twist(const FormTwist& t) {
  if (t.beta.exponent % 2 == 0 && t.beta.exponent > 1)
    throw ExpectationError("no canonical square root at even exponent");
  FormTwist out = t;
  out.beta = t.beta.power(2);
  return out;
}

// --- composition of invariant twists ------------------------------------------

struct CircResult {
  FormTwist twist;
  bool support_matches_kernel = false;
  bool square_matches = false;
  bool factorization_independent = false;
  std::string branch;  // which power of the result form the square carries
};

inline CircResult circ(const FormTwist& T1, const FormTwist& T2, const Config& cfg = {}) {
  const Group& G = T1.A.G;
  TensorElement F1 = realize(T1), F2 = realize(T2);
  TensorElement R = F1 * (F2 * F2) * F1;
  R.prune();

  CircResult out;
  std::vector<int> supp = twist_support(R);
  out.twist.A = abelian_structure(G, supp);
  PairingForm beta_r = form_from_twist(R, out.twist.A);
  out.twist.beta = beta_r.power(2);

  // square check: the result twist squared reproduces R
  TensorElement Y = realize(out.twist);
  out.square_matches = (Y * Y == R);

  // kernel description of the support
  std::vector<int> inter;
  std::set_intersection(T1.A.basis.members.begin(), T1.A.basis.members.end(),
                        T2.A.basis.members.begin(), T2.A.basis.members.end(),
                        std::back_inserter(inter));
  std::vector<int> K;
  for (int c : inter) {
    bool ok = true;
    for (int x : inter)
      if (!(T1.beta.eval_members(T1.A, x, c) * T2.beta.eval_members(T2.A, x, c) ==
            Cyclo::one())) {
        ok = false;
        break;
      }
    if (ok) K.push_back(c);
  }
  // canonical factorizations of the product set
  std::map<int, std::pair<int, int>> factor;
  for (int a1 : T1.A.basis.members)
    for (int a2 : T2.A.basis.members) {
      int p = G.mul(a1, a2);
      if (!factor.count(p)) factor[p] = {a1, a2};
    }
  std::vector<int> kernel_elems;
  for (const auto& [p, fa] : factor) {
    bool in_kernel = true;
    for (int c : K)
      if (!(T1.beta.eval_members(T1.A, fa.first, c) ==
            T2.beta.eval_members(T2.A, fa.second, c))) {
        in_kernel = false;
        break;
      }
    if (in_kernel) kernel_elems.push_back(p);
  }
  std::sort(kernel_elems.begin(), kernel_elems.end());
  out.support_matches_kernel = (kernel_elems == supp);

  // the quotient map must not depend on the factorization chosen
  out.factorization_independent = true;
  SplitMix64 rng{cfg.seed};
  int n1 = (int)T1.A.basis.members.size(), n2 = (int)T2.A.basis.members.size();
  for (int trial = 0; trial < 100; ++trial) {
    int a1 = T1.A.basis.members[(size_t)rng.below((unsigned long long)n1)];
    int a2 = T2.A.basis.members[(size_t)rng.below((unsigned long long)n2)];
    auto fa = factor.at(G.mul(a1, a2));
    for (int c : K)
      if (!(T1.beta.eval_members(T1.A, a1, c) * T2.beta.eval_members(T2.A, a2, c).inverted() ==
            T1.beta.eval_members(T1.A, fa.first, c) *
                T2.beta.eval_members(T2.A, fa.second, c).inverted()))
        out.factorization_independent = false;
  }

  // which power of gamma the square R realizes
  int e = out.twist.beta.exponent;
  FormTwist minus = out.twist;
  minus.beta = out.twist.beta.power(((e - 2) % e + e) % e);
  if (realize(minus) == R)
    out.branch = "alpha^-2";
  else {
    FormTwist plus = out.twist;
    plus.beta = out.twist.beta.power(2);
    out.branch = (realize(plus) == R) ? "alpha^2" : "other";
  }
  return out;
}

// --- commutator of two invariant twists and its diagonal trivialization --------

struct Triform {
  AbelianStructure Bstr;  // structure of B = [A1, A2]
  std::vector<Cyclo> table;

  const Cyclo& at(int c1, int c2, int c3) const {
    int n = Bstr.size();
    return table[((size_t)c1 * n + c2) * n + c3];
  }
};

inline Triform triform_of_pair(const FormTwist& T1, const FormTwist& T2) {
  const Group& G = T1.A.G;
  std::vector<int> comm_gens;
  for (int a1 : T1.A.basis.members)
    for (int a2 : T2.A.basis.members) comm_gens.push_back(G.comm(a1, a2));
  std::sort(comm_gens.begin(), comm_gens.end());
  comm_gens.erase(std::unique(comm_gens.begin(), comm_gens.end()), comm_gens.end());
  std::vector<int> B = subgroup_closure(G, comm_gens, G.order() + 1);
  for (int b : B) {
    if (!std::binary_search(T1.A.basis.members.begin(), T1.A.basis.members.end(), b) ||
        !std::binary_search(T2.A.basis.members.begin(), T2.A.basis.members.end(), b))
      throw ExpectationError("commutator subgroup escapes the twist supports");
  }
  Triform tri;
  tri.Bstr = abelian_structure(G, B);
  int n = tri.Bstr.size();

  // x_i with beta_i(x_i, .) = chi on B
  auto solve_x = [&](const FormTwist& T, int ci) {
    auto chi = tri.Bstr.char_vec(ci);
    for (int x : T.A.basis.members) {
      bool ok = true;
      for (int bg : tri.Bstr.basis.generators)
        if (!(T.beta.eval_members(T.A, x, bg) == tri.Bstr.char_value(chi, bg))) {
          ok = false;
          break;
        }
      if (ok) return x;
    }
    throw ExpectationError("form does not restrict onto the commutator characters");
  };
  std::vector<int> x1((size_t)n), x2((size_t)n);
  for (int ci = 0; ci < n; ++ci) {
    x1[(size_t)ci] = solve_x(T1, ci);
    x2[(size_t)ci] = solve_x(T2, ci);
  }
  tri.table.assign((size_t)n * n * n, Cyclo());
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = 0; c2 < n; ++c2) {
      int cm = G.comm(x1[(size_t)c1], x2[(size_t)c2]);
      if (!tri.Bstr.contains(cm))
        throw ConsistencyError("commutator of representatives escapes B");
      for (int c3 = 0; c3 < n; ++c3)
        tri.table[((size_t)c1 * n + c2) * n + c3] = tri.Bstr.char_value_idx(c3, cm);
    }
  return tri;
}

inline TensorElement commutator_twist(const TensorElement& F1, const TensorElement& F2,
                                      const Config& cfg = {}) {
  TensorElement c = F1 * F2 * ts_invert(F1, cfg) * ts_invert(F2, cfg);
  c.prune();
  return c;
}

struct CommutatorFormulaReport {
  TensorElement commutator;
  Triform tri;
  bool diagonal_symmetric = false;
  bool matches = false;
};

inline CommutatorFormulaReport commutator_formula_check(const FormTwist& T1, const FormTwist& T2,
                                                        const Config& cfg = {}) {
  CommutatorFormulaReport rep;
  rep.commutator = commutator_twist(realize(T1), realize(T2), cfg);
  rep.tri = triform_of_pair(T1, T2);
  int n = rep.tri.Bstr.size();
  auto D = [&](int c1, int c2) { return rep.tri.at(c1, c1, c2) * rep.tri.at(c1, c2, c2); };
  rep.diagonal_symmetric = true;
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = 0; c2 < n; ++c2)
      if (!(D(c1, c2) == D(c2, c1))) rep.diagonal_symmetric = false;
  TensorElement predicted(T1.A.G);
  std::vector<AlgebraElement> p;
  for (int ci = 0; ci < n; ++ci) p.push_back(idempotent_of_character(rep.tri.Bstr, ci));
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = 0; c2 < n; ++c2)
      predicted = predicted + D(c1, c2) * TensorElement::outer(p[(size_t)c1], p[(size_t)c2]);
  predicted.prune();
  rep.matches = (rep.commutator == predicted);
  return rep;
}

struct UnitSolveReport {
  AlgebraElement u;
  std::vector<Cyclo> values;
  bool pair_identity = false;
  bool coboundary_matches = false;
  bool invariant = false;
};

// diagonal unit trivializing the commutator: u(chi) is the inverse cube root
// of the triform diagonal
inline UnitSolveReport solve_u(const Triform& tri, const TensorElement& commutator,
                               const Config& cfg = {}) {
  int n = tri.Bstr.size();
  UnitSolveReport rep;
  rep.u = AlgebraElement(tri.Bstr.G);
  rep.values.assign((size_t)n, Cyclo());
  for (int ci = 0; ci < n; ++ci)
    rep.values[(size_t)ci] = mth_root_in_mu(tri.at(ci, ci, ci), 3).inverted();
  for (int ci = 0; ci < n; ++ci)
    rep.u = rep.u + rep.values[(size_t)ci] * idempotent_of_character(tri.Bstr, ci);

  rep.pair_identity = true;
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = 0; c2 < n; ++c2) {
      Cyclo lhs = rep.values[(size_t)tri.Bstr.char_mul(c1, c2)] * tri.at(c1, c1, c2) *
                  tri.at(c1, c2, c2);
      if (!(lhs == rep.values[(size_t)c1] * rep.values[(size_t)c2])) rep.pair_identity = false;
    }
  TensorElement cob = coboundary_of_unit(rep.u, cfg);
  rep.coboundary_matches = (cob == commutator);
  rep.invariant = invariance_check(cob);
  return rep;
}

// --- symmetric / antisymmetric separation --------------------------------------

struct SeparationResult {
  TensorElement symmetric;
  FormTwist antisym;
  bool y_trivial = false;
};

inline SeparationResult separate_symmetric_antisymmetric(const TensorElement& F,
                                                         const Config& cfg = {}) {
  const Group& G = F.G;
  TensorElement P = ts_invert(ts_flip(F), cfg) * F;
  P.prune();
  SeparationResult out;
  if (P == TensorElement::one(G)) {
    out.symmetric = F;
    out.antisym = FormTwist::trivial(G);
    out.y_trivial = true;
    return out;
  }
  AbelianStructure Astr = abelian_structure(G, twist_support(P));
  PairingForm beta_p = form_from_twist(P, Astr);
  if (!form_is_alternating(beta_p))
    throw ExpectationError("flip defect is not an alternating form twist");
  if (beta_p.exponent % 2 == 0)
    throw ExpectationError("no canonical square root of the flip defect at even exponent");
  out.antisym.A = Astr;
  out.antisym.beta = beta_p.power(2);
  TensorElement Y = realize(out.antisym);
  out.symmetric = F * ts_invert(Y, cfg);
  out.symmetric.prune();
  if (!(ts_flip(out.symmetric) == out.symmetric))
    throw ConsistencyError("symmetric part fails the flip test");
  if (!(out.symmetric * Y == F)) throw ConsistencyError("separation does not recompose");
  return out;
}

// --- enumeration of invariant twist data ----------------------------------------

struct TriangularStructure {
  Subgroup subgroup;
  PairingForm form;
};

inline std::vector<TriangularStructure> enumerate_triangular_structures(const Group& G,
                                                                        const Config& cfg = {}) {
  std::vector<TriangularStructure> out;
  for (const auto& sub : enumerate_normal_abelian_subgroups(G, cfg)) {
    AbelianStructure A = abelian_structure(G, sub);
    std::vector<PairingForm> forms;
    try {
      forms = enumerate_invariant_forms(A, true, true, cfg);
    } catch (const ExpectationError&) {
      continue;  // enumeration over cap for this subgroup
    }
    for (auto& f : forms) out.push_back({sub, std::move(f)});
  }
  return out;
}

}  // namespace twistlab
