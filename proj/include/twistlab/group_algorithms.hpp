#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "twistlab/group.hpp"

namespace twistlab {

struct Subgroup {
  std::vector<int> members;  // sorted element indices
  bool normal = false;
  bool abelian = false;
  int order() const { return (int)members.size(); }
  bool contains(int g) const {
    return std::binary_search(members.begin(), members.end(), g);
  }
};

inline std::vector<int> subgroup_closure(const Group& G, std::vector<int> gens, int cap) {
  std::vector<char> in((size_t)G.order(), 0);
  std::vector<int> queue{G.id()};
  in[(size_t)G.id()] = 1;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int cur = queue[qi];
    for (int g : gens) {
      int t = G.mul(cur, g);
      if (!in[(size_t)t]) {
        if ((int)queue.size() >= cap)
          throw ExpectationError("subgroup closure exceeded cap " + std::to_string(cap));
        in[(size_t)t] = 1;
        queue.push_back(t);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

// closure that gives up as soon as two members fail to commute
inline std::optional<std::vector<int>> abelian_closure(const Group& G, std::vector<int> gens,
                                                       int cap) {
  std::vector<char> in((size_t)G.order(), 0);
  std::vector<int> queue{G.id()};
  in[(size_t)G.id()] = 1;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (int a : gens)
    for (int b : gens)
      if (G.mul(a, b) != G.mul(b, a)) return std::nullopt;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int cur = queue[qi];
    for (int g : gens) {
      int t = G.mul(cur, g);
      if (!in[(size_t)t]) {
        if ((int)queue.size() >= cap) return std::nullopt;
        in[(size_t)t] = 1;
        queue.push_back(t);
      }
    }
  }
  // generated by commuting generators => abelian
  std::sort(queue.begin(), queue.end());
  return queue;
}

inline bool is_abelian_subset(const Group& G, const std::vector<int>& members) {
  for (int a : members)
    for (int b : members)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

inline bool is_normal_subset(const Group& G, const Subgroup& S) {
  for (int g : G.generators())
    for (int m : S.members)
      if (!S.contains(G.conj(g, m))) return false;
  return true;
}

struct ConjugacyClasses {
  std::vector<std::vector<int>> classes;  // each sorted; ordered by least member
  std::vector<int> class_of;
};

inline ConjugacyClasses conjugacy_classes(const Group& G) {
  int n = G.order();
  ConjugacyClasses out;
  out.class_of.assign((size_t)n, -1);
  for (int e = 0; e < n; ++e) {
    if (out.class_of[(size_t)e] >= 0) continue;
    int ci = (int)out.classes.size();
    std::vector<int> orbit{e};
    out.class_of[(size_t)e] = ci;
    for (size_t qi = 0; qi < orbit.size(); ++qi) {
      int cur = orbit[qi];
      for (int g : G.generators()) {
        int t = G.conj(g, cur);
        if (out.class_of[(size_t)t] < 0) {
          out.class_of[(size_t)t] = ci;
          orbit.push_back(t);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.classes.push_back(std::move(orbit));
  }
  return out;
}

inline std::vector<int> center(const Group& G) {
  std::vector<int> out;
  for (int a = 0; a < G.order(); ++a) {
    bool c = true;
    for (int g : G.generators())
      if (G.mul(a, g) != G.mul(g, a)) {
        c = false;
        break;
      }
    if (c) out.push_back(a);
  }
  return out;
}

inline std::vector<Subgroup> enumerate_normal_abelian_subgroups(const Group& G,
                                                                const Config& cfg = {}) {
  auto cc = conjugacy_classes(G);
  std::map<std::vector<int>, bool> found;
  std::vector<std::vector<int>> worklist;
  std::vector<int> trivial{G.id()};
  found.emplace(trivial, true);
  worklist.push_back(trivial);
  for (size_t wi = 0; wi < worklist.size(); ++wi) {
    std::vector<int> base = worklist[wi];
    for (const auto& cls : cc.classes) {
      if (std::all_of(cls.begin(), cls.end(),
                      [&](int x) { return std::binary_search(base.begin(), base.end(), x); }))
        continue;
      std::vector<int> gens = base;
      gens.insert(gens.end(), cls.begin(), cls.end());
      auto closed = abelian_closure(G, gens, cfg.closure_cap);
      if (!closed) continue;
      if (found.emplace(*closed, true).second) worklist.push_back(*closed);
    }
  }
  std::vector<Subgroup> out;
  for (auto& [members, _] : found) {
    Subgroup s;
    s.members = members;
    s.abelian = true;
    s.normal = true;
    if (!is_normal_subset(G, s))
      throw ConsistencyError("class-union closure produced a non-normal subgroup");
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

struct GroupMorphism {
  std::vector<int> images;  // source index -> target index
  int operator()(int g) const { return images[(size_t)g]; }
  friend bool operator==(const GroupMorphism& a, const GroupMorphism& b) = default;
};

inline GroupMorphism compose(const GroupMorphism& a, const GroupMorphism& b) {
  GroupMorphism out;
  out.images.resize(b.images.size());
  for (size_t i = 0; i < b.images.size(); ++i) out.images[i] = a.images[(size_t)b.images[i]];
  return out;
}

inline GroupMorphism inverse_of(const GroupMorphism& a) {
  GroupMorphism out;
  out.images.assign(a.images.size(), -1);
  for (size_t i = 0; i < a.images.size(); ++i) out.images[(size_t)a.images[i]] = (int)i;
  return out;
}

inline GroupMorphism identity_morphism(int n) {
  GroupMorphism out;
  out.images.resize((size_t)n);
  for (int i = 0; i < n; ++i) out.images[(size_t)i] = i;
  return out;
}

inline GroupMorphism conjugation_morphism(const Group& G, int g) {
  GroupMorphism out;
  out.images.resize((size_t)G.order());
  for (int x = 0; x < G.order(); ++x) out.images[(size_t)x] = G.conj(g, x);
  return out;
}

inline bool is_homomorphism(const Group& S, const Group& T, const GroupMorphism& f,
                            std::uint64_t seed = 1, int samples = 10000) {
  int n = S.order();
  auto check = [&](int a, int b) {
    return f(S.mul(a, b)) == T.mul(f(a), f(b));
  };
  if ((long long)n * n <= 262144) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (!check(a, b)) return false;
    return true;
  }
  SplitMix64 rng(seed);
  for (int s = 0; s < samples; ++s)
    if (!check((int)rng.below((std::uint64_t)n), (int)rng.below((std::uint64_t)n))) return false;
  return true;
}

// extend generator images to a full endomorphism by breadth-first rederivation;
// nullopt if inconsistent or not bijective
inline std::optional<GroupMorphism> extend_from_generators(const Group& G,
                                                           const std::vector<int>& gens,
                                                           const std::vector<int>& images) {
  int n = G.order();
  std::vector<int> img((size_t)n, -1);
  img[(size_t)G.id()] = G.id();
  std::vector<int> queue{G.id()};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (size_t k = 0; k < gens.size(); ++k) {
      int v = G.mul(u, gens[k]);
      int w = G.mul(img[(size_t)u], images[k]);
      if (img[(size_t)v] < 0) {
        img[(size_t)v] = w;
        queue.push_back(v);
      } else if (img[(size_t)v] != w) {
        return std::nullopt;
      }
    }
  }
  if ((int)queue.size() != n)
    throw ConsistencyError("generator list does not generate the group");
  std::vector<char> hit((size_t)n, 0);
  for (int v : img) {
    if (hit[(size_t)v]) return std::nullopt;
    hit[(size_t)v] = 1;
  }
  return GroupMorphism{std::move(img)};
}

inline std::vector<GroupMorphism> automorphism_group(const Group& G, const Config& cfg = {}) {
  int n = G.order();
  if (n > cfg.aut_cap)
    throw ExpectationError("automorphism search needs order <= " + std::to_string(cfg.aut_cap) +
                           "; supply automorphisms explicitly");
  Group T = G.ensure_table(std::max(n, cfg.table_cap));
  auto cc = conjugacy_classes(T);
  std::vector<int> ord((size_t)n);
  for (int a = 0; a < n; ++a) ord[(size_t)a] = T.element_order(a);
  const auto& gens = T.generators();
  std::vector<std::vector<int>> candidates;
  for (int g : gens) {
    std::vector<int> c;
    size_t cls = cc.classes[(size_t)cc.class_of[(size_t)g]].size();
    for (int a = 0; a < n; ++a)
      if (ord[(size_t)a] == ord[(size_t)g] && cc.classes[(size_t)cc.class_of[(size_t)a]].size() == cls)
        c.push_back(a);
    candidates.push_back(std::move(c));
  }
  std::vector<GroupMorphism> out;
  std::vector<int> images(gens.size(), -1);
  long long budget = 0;
  auto rec = [&](auto&& self, size_t depth) -> void {
    if (depth == gens.size()) {
      if (auto m = extend_from_generators(T, gens, images)) out.push_back(std::move(*m));
      return;
    }
    for (int cand : candidates[depth]) {
      if (++budget > 100000000) throw ExpectationError("automorphism search budget exhausted");
      images[depth] = cand;
      self(self, depth + 1);
    }
    images[depth] = -1;
  };
  rec(rec, 0);
  return out;
}

struct ClassPreservingData {
  std::vector<GroupMorphism> aut_cl;
  std::vector<GroupMorphism> inner;
  long long out_cl_order = 0;
};

inline ClassPreservingData class_preserving_filter(const std::vector<GroupMorphism>& auts,
                                                   const Group& G) {
  auto cc = conjugacy_classes(G);
  ClassPreservingData out;
  for (const auto& f : auts) {
    bool ok = true;
    for (const auto& cls : cc.classes)
      if (cc.class_of[(size_t)f(cls[0])] != cc.class_of[(size_t)cls[0]]) {
        ok = false;
        break;
      }
    if (ok) out.aut_cl.push_back(f);
  }
  std::set<std::vector<int>> seen;
  for (int g = 0; g < G.order(); ++g) {
    auto m = conjugation_morphism(G, g);
    if (seen.insert(m.images).second) out.inner.push_back(std::move(m));
  }
  if (!out.inner.empty() && out.aut_cl.size() % out.inner.size() == 0)
    out.out_cl_order = (long long)(out.aut_cl.size() / out.inner.size());
  return out;
}

// --- abelian structure -------------------------------------------------------

namespace detail {

// abstract abelian group on arbitrary int ids for the basis recursion
struct MiniAb {
  std::vector<int> elems;  // sorted
  std::function<int(int, int)> mul;
  int id = 0;
};

inline int mini_order(const MiniAb& A, int g) {
  int o = 1, cur = g;
  while (cur != A.id) {
    cur = A.mul(cur, g);
    if (++o > (int)A.elems.size() + 1) throw ConsistencyError("order walk diverged");
  }
  return o;
}

inline int mini_pow(const MiniAb& A, int g, int k) {
  int acc = A.id;
  for (int i = 0; i < k; ++i) acc = A.mul(acc, g);
  return acc;
}

// basis of an abelian p-group: list of (element, order), orders non-increasing
inline std::vector<std::pair<int, int>> mini_p_basis(const MiniAb& A) {
  if (A.elems.size() <= 1) return {};
  int g1 = A.id, d1 = 1;
  for (int e : A.elems) {
    int o = mini_order(A, e);
    if (o > d1) {
      d1 = o;
      g1 = e;
    }
  }
  // span of g1, with discrete logs
  std::map<int, int> logs;
  {
    int cur = A.id;
    for (int k = 0; k < d1; ++k) {
      logs.emplace(cur, k);
      cur = A.mul(cur, g1);
    }
  }
  // quotient by <g1>: coset representative = least member
  std::map<int, int> rep;
  for (int e : A.elems) {
    if (rep.count(e)) continue;
    std::vector<int> coset;
    int cur = e;
    for (int k = 0; k < d1; ++k) {
      coset.push_back(cur);
      cur = A.mul(cur, g1);
    }
    int r = *std::min_element(coset.begin(), coset.end());
    for (int m : coset) rep.emplace(m, r);
  }
  MiniAb Q;
  for (auto& [e, r] : rep)
    if (e == r) Q.elems.push_back(r);
  std::sort(Q.elems.begin(), Q.elems.end());
  auto repmap = std::make_shared<std::map<int, int>>(std::move(rep));
  auto base_mul = A.mul;
  Q.mul = [repmap, base_mul](int a, int b) { return repmap->at(base_mul(a, b)); };
  Q.id = repmap->at(A.id);
  std::vector<std::pair<int, int>> basis{{g1, d1}};
  for (auto& [r, q] : mini_p_basis(Q)) {
    // r^q (in A) lies in <g1>; correct so the lift has exact order q
    int rq = mini_pow(A, r, q);
    auto it = logs.find(rq);
    if (it == logs.end()) throw ConsistencyError("quotient basis lift left the span");
    int s = it->second;
    if (s % q != 0) throw ConsistencyError("basis correction exponent not divisible");
    int corrected = A.mul(r, mini_pow(A, g1, (d1 - (s / q) % d1) % d1));
    if (mini_pow(A, corrected, q) != A.id)
      throw ConsistencyError("corrected basis element has wrong order");
    basis.emplace_back(corrected, q);
  }
  return basis;
}

}  // namespace detail

// basis presentation of a finite abelian group (or abelian subgroup):
// independent generators with orders d1 >= d2 >= ..., each d_{i+1} | d_i,
// and exponent-vector coordinates for every member
struct AbelianBasis {
  std::vector<int> members;             // sorted element indices
  std::vector<int> generators;          // element indices b_1..b_r
  std::vector<int> orders;              // d_1 >= d_2 >= ... (invariant factors)
  int exponent = 1;                     // d_1 (or 1 for trivial)
  std::map<int, std::vector<int>> coords;  // member -> exponent vector

  const std::vector<int>& coords_of(int g) const {
    auto it = coords.find(g);
    if (it == coords.end()) throw UsageError("element outside the abelian subgroup");
    return it->second;
  }
};

inline AbelianBasis abelian_basis(const Group& G, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!is_abelian_subset(G, members))
    throw ExpectationError("abelian_basis: subset is not abelian");
  AbelianBasis out;
  out.members = members;
  long long n = (long long)members.size();
  if (n == 1) {
    out.coords.emplace(members[0], std::vector<int>{});
    return out;
  }
  // primary decomposition
  std::vector<int> primes;
  {
    long long m = n;
    for (long long p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        primes.push_back((int)p);
        while (m % p == 0) m /= p;
      }
    if (m > 1) primes.push_back((int)m);
  }
  std::vector<std::vector<std::pair<int, int>>> per_prime;
  size_t rank = 0;
  for (int p : primes) {
    detail::MiniAb Ap;
    for (int e : members) {
      int o = G.element_order(e);
      bool ppow = true;
      while (o > 1) {
        if (o % p != 0) {
          ppow = false;
          break;
        }
        o /= p;
      }
      if (ppow) Ap.elems.push_back(e);
    }
    Ap.mul = [&G](int a, int b) { return G.mul(a, b); };
    Ap.id = G.id();
    auto basis = detail::mini_p_basis(Ap);
    rank = std::max(rank, basis.size());
    per_prime.push_back(std::move(basis));
  }
  // CRT merge, largest orders first
  for (size_t i = 0; i < rank; ++i) {
    int gen = G.id();
    long long order = 1;
    for (const auto& pb : per_prime)
      if (i < pb.size()) {
        gen = G.mul(gen, pb[i].first);
        order *= pb[i].second;
      }
    out.generators.push_back(gen);
    out.orders.push_back((int)order);
  }
  out.exponent = out.orders.empty() ? 1 : out.orders[0];
  // coordinates by mixed-radix enumeration
  std::vector<int> e(rank, 0);
  long long total = 1;
  for (int d : out.orders) total *= d;
  if (total != n) throw ConsistencyError("abelian basis orders do not multiply to group order");
  for (long long cnt = 0; cnt < total; ++cnt) {
    int g = G.id();
    for (size_t i = 0; i < rank; ++i) g = G.mul(g, G.pow(out.generators[i], e[i]));
    if (!out.coords.emplace(g, e).second)
      throw ConsistencyError("abelian basis is not independent");
    for (size_t i = rank; i-- > 0;) {
      if (++e[i] < out.orders[i]) break;
      e[i] = 0;
    }
  }
  for (int m : members)
    if (!out.coords.count(m)) throw ConsistencyError("abelian basis does not span");
  return out;
}

// --- derived subgroup, abelianization, fingerprint ---------------------------

inline Subgroup derived_subgroup(const Group& G, const Config& cfg = {}) {
  std::vector<int> gens;
  for (int a : G.generators())
    for (int b : G.generators())
      if (a != b) gens.push_back(G.comm(a, b));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<int> H = subgroup_closure(G, gens, cfg.closure_cap);
  for (;;) {
    std::vector<int> missing;
    std::vector<char> in((size_t)G.order(), 0);
    for (int h : H) in[(size_t)h] = 1;
    for (int h : H)
      for (int g : G.generators()) {
        int c = G.conj(g, h);
        if (!in[(size_t)c]) missing.push_back(c);
      }
    if (missing.empty()) break;
    gens.insert(gens.end(), missing.begin(), missing.end());
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    H = subgroup_closure(G, gens, cfg.closure_cap);
  }
  Subgroup s;
  s.members = std::move(H);
  s.normal = true;
  s.abelian = is_abelian_subset(G, s.members);
  return s;
}

// invariant factors of G / [G,G], largest first
inline std::vector<int> abelianization_invariants(const Group& G, const Config& cfg = {}) {
  Subgroup H = derived_subgroup(G, cfg);
  std::vector<char> in((size_t)G.order(), 0);
  for (int h : H.members) in[(size_t)h] = 1;
  std::vector<int> reps{G.id()};
  auto rep_of = [&](int t) -> int {
    for (size_t i = 0; i < reps.size(); ++i)
      if (in[(size_t)G.mul(G.inv(reps[i]), t)]) return (int)i;
    return -1;
  };
  for (size_t qi = 0; qi < reps.size(); ++qi)
    for (int g : G.generators()) {
      int t = G.mul(reps[qi], g);
      if (rep_of(t) < 0) reps.push_back(t);
    }
  detail::MiniAb Q;
  Q.elems.resize(reps.size());
  for (size_t i = 0; i < reps.size(); ++i) Q.elems[i] = (int)i;
  auto repv = std::make_shared<std::vector<int>>(reps);
  Q.mul = [&G, repv, rep_of](int a, int b) {
    return rep_of(G.mul((*repv)[(size_t)a], (*repv)[(size_t)b]));
  };
  Q.id = 0;
  // primary basis per prime, merged to invariant factors
  long long n = (long long)reps.size();
  if (n == 1) return {};
  std::vector<int> primes;
  {
    long long m = n;
    for (long long p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        primes.push_back((int)p);
        while (m % p == 0) m /= p;
      }
    if (m > 1) primes.push_back((int)m);
  }
  std::vector<std::vector<std::pair<int, int>>> per_prime;
  size_t rank = 0;
  for (int p : primes) {
    detail::MiniAb Ap;
    for (int e : Q.elems) {
      int o = detail::mini_order(Q, e);
      bool ppow = true;
      while (o > 1) {
        if (o % p != 0) {
          ppow = false;
          break;
        }
        o /= p;
      }
      if (ppow) Ap.elems.push_back(e);
    }
    Ap.mul = Q.mul;
    Ap.id = Q.id;
    auto basis = detail::mini_p_basis(Ap);
    rank = std::max(rank, basis.size());
    per_prime.push_back(std::move(basis));
  }
  std::vector<int> factors;
  for (size_t i = 0; i < rank; ++i) {
    long long order = 1;
    for (const auto& pb : per_prime)
      if (i < pb.size()) order *= pb[i].second;
    factors.push_back((int)order);
  }
  return factors;
}

struct GroupFingerprint {
  long long order = 0;
  std::vector<std::pair<int, long long>> element_orders;  // (order, count), ascending
  std::vector<std::pair<long long, long long>> class_sizes;  // (size, count), ascending
  long long center_order = 0;
  std::vector<int> abelianization;

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;

  std::string to_string() const {
    std::string s = "order=" + std::to_string(order) + ";orders={";
    for (size_t i = 0; i < element_orders.size(); ++i)
      s += (i ? "," : "") + std::to_string(element_orders[i].first) + ":" +
           std::to_string(element_orders[i].second);
    s += "};classes={";
    for (size_t i = 0; i < class_sizes.size(); ++i)
      s += (i ? "," : "") + std::to_string(class_sizes[i].first) + ":" +
           std::to_string(class_sizes[i].second);
    s += "};center=" + std::to_string(center_order) + ";ab=[";
    for (size_t i = 0; i < abelianization.size(); ++i)
      s += (i ? "," : "") + std::to_string(abelianization[i]);
    return s + "]";
  }
};

inline GroupFingerprint fingerprint(const Group& G, const Config& cfg = {}) {
  GroupFingerprint fp;
  fp.order = G.order();
  std::map<int, long long> om;
  for (int a = 0; a < G.order(); ++a) om[G.element_order(a)]++;
  fp.element_orders.assign(om.begin(), om.end());
  std::map<long long, long long> cm;
  for (const auto& cls : conjugacy_classes(G).classes) cm[(long long)cls.size()]++;
  fp.class_sizes.assign(cm.begin(), cm.end());
  fp.center_order = (long long)center(G).size();
  fp.abelianization = abelianization_invariants(G, cfg);
  return fp;
}

inline bool fingerprints_differ(const GroupFingerprint& a, const GroupFingerprint& b) {
  return !(a == b);
}

}  // namespace twistlab
