#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "twistlab/twist.hpp"

namespace twistlab {

// x conj_g(x)^{-1}, the defect of x under conjugation by g
inline AlgebraElement twisted_commutator(const AlgebraElement& x, int g, const Config& cfg = {}) {
  return x * conj_by(g, invert(x, cfg));
}

// unit x in k[G] with phi(g) x = x g for every g, when phi is class-preserving.
// The solution space is spanned by indicators of the joint orbits of
// h |-> phi(g) h g^{-1}; deterministic small-integer combinations are tried.
inline AlgebraElement find_conjugator(const Group& G, const GroupMorphism& phi,
                                      const Config& cfg = {}, int attempts = 64) {
  int n = G.order();
  std::vector<int> orbit((size_t)n, -1);
  int norb = 0;
  for (int start = 0; start < n; ++start) {
    if (orbit[(size_t)start] >= 0) continue;
    std::queue<int> q;
    orbit[(size_t)start] = norb;
    q.push(start);
    while (!q.empty()) {
      int h = q.front();
      q.pop();
      for (int g : G.generators()) {
        for (int t : {G.mul(phi(g), G.mul(h, G.inv(g))), G.mul(G.inv(phi(g)), G.mul(h, g))}) {
          if (orbit[(size_t)t] < 0) {
            orbit[(size_t)t] = norb;
            q.push(t);
          }
        }
      }
    }
    ++norb;
  }
  SplitMix64 rng{cfg.seed ^ 0x9e3779b97f4a7c15ULL};
  for (int attempt = 0; attempt < attempts; ++attempt) {
    AlgebraElement x(G);
    std::vector<Cyclo> weight((size_t)norb);
    for (int o = 0; o < norb; ++o)
      weight[(size_t)o] = Cyclo((long long)(attempt == 0 ? o + 1 : rng.below(19) + 1));
    for (int h = 0; h < n; ++h) x[h] = weight[(size_t)orbit[(size_t)h]];
    try {
      AlgebraElement xi = invert(x, cfg);
      (void)xi;
    } catch (const ExpectationError&) {
      continue;
    }
    bool ok = true;
    for (int g : G.generators()) {
      if (!(AlgebraElement::basis(G, phi(g)) * x == x * AlgebraElement::basis(G, g))) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
    // the intertwining condition holds for every orbit-constant element or for
    // none of them, so a failed verification will not improve with retries
    throw ExpectationError("automorphism is not realized by any unit conjugation");
  }
  throw ExpectationError("no invertible conjugator found in the orbit span");
}

// --- 1-cocycles g -> A under conjugation and their diagonal realizations --------

struct H1DetectorResult {
  long long z1_count = 0;
  long long b1_count = 0;
  long long h1_classes = 0;
  long long consistent_classes = 0;  // classes admitting a diagonal unit
  bool found_nontrivial = false;
  std::vector<int> psi;  // realized nontrivial cocycle, one value per group element
  AlgebraElement x;      // unit in k[A] with x conj_g(x)^{-1} = psi(g)
};

namespace detail {

// extend generator images to a full cocycle psi(gh) = psi(g) * (g psi(h) g^{-1}),
// or return empty if inconsistent
inline std::vector<int> extend_cocycle(const Group& G, const std::vector<int>& gen_images) {
  int n = G.order();
  std::vector<int> psi((size_t)n, -1);
  psi[(size_t)G.id()] = G.id();
  std::queue<int> q;
  q.push(G.id());
  const auto& gens = G.generators();
  while (!q.empty()) {
    int h = q.front();
    q.pop();
    for (size_t i = 0; i < gens.size(); ++i) {
      int t = G.mul(h, gens[i]);
      int val = G.mul(psi[(size_t)h], G.conj(h, gen_images[i]));
      if (psi[(size_t)t] < 0) {
        psi[(size_t)t] = val;
        q.push(t);
      } else if (psi[(size_t)t] != val) {
        return {};
      }
    }
  }
  for (int g = 0; g < n; ++g)
    if (psi[(size_t)g] < 0) throw ConsistencyError("generators do not generate the group");
  // full cocycle identity
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (psi[(size_t)G.mul(g, h)] != G.mul(psi[(size_t)g], G.conj(g, psi[(size_t)h])))
        return {};
  return psi;
}

}  // namespace detail

// search for conjugation 1-cocycles valued in a normal abelian subgroup that are
// realized by diagonal units of k[A]
inline H1DetectorResult h1_detector(const Group& G, const AbelianStructure& A,
                                    const Config& cfg = {}) {
  H1DetectorResult out;
  const auto& gens = G.generators();
  int n = G.order(), nA = A.size();
  long long combos = 1;
  for (size_t i = 0; i < gens.size(); ++i) {
    combos *= nA;
    if (combos > 1000000) throw ExpectationError("cocycle search space exceeds cap");
  }
  std::vector<std::vector<int>> cocycles;
  std::vector<int> pick(gens.size(), 0);
  for (long long cnt = 0; cnt < combos; ++cnt) {
    std::vector<int> images(gens.size());
    for (size_t i = 0; i < gens.size(); ++i)
      images[i] = A.basis.members[(size_t)pick[i]];
    auto psi = detail::extend_cocycle(G, images);
    if (!psi.empty()) cocycles.push_back(std::move(psi));
    for (size_t i = pick.size(); i-- > 0;) {
      if (++pick[i] < nA) break;
      pick[i] = 0;
    }
  }
  out.z1_count = (long long)cocycles.size();

  // coboundaries psi_a(g) = a (g a g^{-1})^{-1}
  std::set<std::vector<int>> coboundaries;
  for (int a : A.basis.members) {
    std::vector<int> psi((size_t)n);
    for (int g = 0; g < n; ++g) psi[(size_t)g] = G.mul(a, G.inv(G.conj(g, a)));
    coboundaries.insert(std::move(psi));
  }
  out.b1_count = (long long)coboundaries.size();

  // quotient by pointwise products with coboundaries
  std::set<std::vector<int>> reps;
  std::vector<std::vector<int>> rep_list;
  for (const auto& psi : cocycles) {
    std::vector<int> best;
    for (const auto& cb : coboundaries) {
      std::vector<int> mixed((size_t)n);
      for (int g = 0; g < n; ++g) mixed[(size_t)g] = G.mul(psi[(size_t)g], cb[(size_t)g]);
      if (best.empty() || mixed < best) best = std::move(mixed);
    }
    if (reps.insert(best).second) rep_list.push_back(best);
  }
  out.h1_classes = (long long)rep_list.size();
  std::sort(rep_list.begin(), rep_list.end());

  std::vector<int> trivial((size_t)n, G.id());
  for (const auto& psi : rep_list) {
    // transport a diagonal x over the character orbits:
    // x(g^{-1}. chi) = x(chi) / chi(psi(g))
    std::vector<Cyclo> xval((size_t)nA);
    std::vector<bool> known((size_t)nA, false);
    bool consistent = true;
    for (int start = 0; start < nA && consistent; ++start) {
      if (known[(size_t)start]) continue;
      xval[(size_t)start] = Cyclo::one();
      known[(size_t)start] = true;
      std::queue<int> q;
      q.push(start);
      while (!q.empty() && consistent) {
        int ci = q.front();
        q.pop();
        auto chi = A.char_vec(ci);
        for (int g : gens) {
          for (int dir = 0; dir < 2; ++dir) {
            int gg = dir ? G.inv(g) : g;
            // target character: (gg^{-1} . chi)(a) = chi(gg a gg^{-1})
            int tgt = A.char_index(A.char_conj(G.inv(gg), chi));
            Cyclo val = xval[(size_t)ci] * A.char_value(chi, psi[(size_t)gg]).conj();
            if (!known[(size_t)tgt]) {
              xval[(size_t)tgt] = val;
              known[(size_t)tgt] = true;
              q.push(tgt);
            } else if (!(xval[(size_t)tgt] == val)) {
              consistent = false;
              break;
            }
          }
          if (!consistent) break;
        }
      }
    }
    if (!consistent) continue;
    AlgebraElement x(G);
    for (int ci = 0; ci < nA; ++ci)
      x = x + xval[(size_t)ci] * idempotent_of_character(A, ci);
    // exhaustive verification of x conj_g(x)^{-1} = psi(g)
    AlgebraElement xi = invert(x, cfg);
    bool verified = true;
    for (int g = 0; g < n && verified; ++g)
      verified = (x * conj_by(g, xi) == AlgebraElement::basis(G, psi[(size_t)g]));
    if (!verified) continue;
    ++out.consistent_classes;
    if (psi != trivial && !out.found_nontrivial) {
      out.found_nontrivial = true;
      out.psi = psi;
      out.x = x;
    }
  }
  return out;
}

// twisted multiplication on functions over A:
// (f *F h)(x) = sum_{(y,z)} F[y,z] f(xy) h(xz); characters must multiply by the
// dual pairing of the twist
inline bool skew_group_algebra_iso_check(const AbelianStructure& A, const TensorElement& F,
                                         const PairingForm& dual_b) {
  int n = A.size();
  std::map<int, int> pos;
  for (int p = 0; p < n; ++p) pos[A.basis.members[(size_t)p]] = p;
  std::vector<int> mul_pos((size_t)n * n);
  for (int p1 = 0; p1 < n; ++p1)
    for (int p2 = 0; p2 < n; ++p2)
      mul_pos[(size_t)p1 * n + p2] =
          pos.at(A.G.mul(A.basis.members[(size_t)p1], A.basis.members[(size_t)p2]));
  std::vector<Cyclo> chi_tab((size_t)n * n);
  for (int ci = 0; ci < n; ++ci)
    for (int p = 0; p < n; ++p)
      chi_tab[(size_t)ci * n + p] = A.char_value_idx(ci, A.basis.members[(size_t)p]);
  // twist entries on member positions
  struct Term {
    int py, pz;
    Cyclo v;
  };
  std::vector<Term> terms;
  for (const auto& [k, v] : F.t) {
    auto iy = pos.find(k.first), iz = pos.find(k.second);
    if (iy == pos.end() || iz == pos.end()) return false;  // support escapes A
    terms.push_back({iy->second, iz->second, v});
  }
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = 0; c2 < n; ++c2) {
      int c12 = A.char_mul(c1, c2);
      Cyclo factor = dual_b.eval_coords(A.char_vec(c1), A.char_vec(c2));
      for (int px = 0; px < n; ++px) {
        Cyclo acc;
        for (const auto& t : terms)
          acc += t.v * chi_tab[(size_t)c1 * n + mul_pos[(size_t)px * n + t.py]] *
                 chi_tab[(size_t)c2 * n + mul_pos[(size_t)px * n + t.pz]];
        if (!(acc == factor * chi_tab[(size_t)c12 * n + px])) return false;
      }
    }
  return true;
}

}  // namespace twistlab
