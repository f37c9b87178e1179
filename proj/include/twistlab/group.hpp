#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twistlab/config.hpp"

namespace twistlab {

struct GroupBackend {
  std::vector<int> generators;
  std::string spec_text;

  virtual ~GroupBackend() = default;
  virtual int size() const = 0;
  virtual int mul(int a, int b) const = 0;
  virtual int inv(int a) const = 0;
  virtual int identity() const = 0;
  virtual std::string element_name(int a) const { return "g" + std::to_string(a); }
  virtual bool is_table() const { return false; }
};

struct TableBackend final : GroupBackend {
  int n = 0;
  int id = 0;
  std::vector<int> table;  // n*n, row-major
  std::vector<int> invs;
  std::vector<std::string> names;

  int size() const override { return n; }
  int mul(int a, int b) const override { return table[(size_t)a * n + b]; }
  int inv(int a) const override { return invs[(size_t)a]; }
  int identity() const override { return id; }
  std::string element_name(int a) const override {
    return names.empty() ? GroupBackend::element_name(a) : names[(size_t)a];
  }
  bool is_table() const override { return true; }
};

// multiplication given directly as an index formula
struct FnBackend final : GroupBackend {
  int n = 0;
  int id = 0;
  std::function<int(int, int)> mul_fn;
  std::function<int(int)> inv_fn;
  std::function<std::string(int)> name_fn;

  int size() const override { return n; }
  int mul(int a, int b) const override { return mul_fn(a, b); }
  int inv(int a) const override { return inv_fn(a); }
  int identity() const override { return id; }
  std::string element_name(int a) const override {
    return name_fn ? name_fn(a) : GroupBackend::element_name(a);
  }
};

// elements are canonical byte encodings, kept lexicographically sorted
struct HashBackend final : GroupBackend {
  std::vector<std::string> enc;
  std::unordered_map<std::string, int> index;
  std::function<std::string(const std::string&, const std::string&)> compose;
  std::function<std::string(const std::string&)> invert_enc;  // may be empty
  std::function<std::string(const std::string&)> pretty;      // may be empty
  int id_idx = 0;
  std::vector<int> inv_table;

  int size() const override { return (int)enc.size(); }
  int mul(int a, int b) const override {
    auto it = index.find(compose(enc[(size_t)a], enc[(size_t)b]));
    if (it == index.end()) throw ConsistencyError("product left the enumerated element set");
    return it->second;
  }
  int inv(int a) const override { return inv_table[(size_t)a]; }
  int identity() const override { return id_idx; }
  std::string element_name(int a) const override {
    return pretty ? pretty(enc[(size_t)a]) : GroupBackend::element_name(a);
  }
};

class Group {
 public:
  Group() = default;
  explicit Group(std::shared_ptr<const GroupBackend> b) : b_(std::move(b)) {}

  bool valid() const { return (bool)b_; }
  int order() const { return b_->size(); }
  int mul(int a, int b) const { return b_->mul(a, b); }
  int inv(int a) const { return b_->inv(a); }
  int id() const { return b_->identity(); }
  bool is_table() const { return b_->is_table(); }
  const std::vector<int>& generators() const { return b_->generators; }
  const std::string& spec_text() const { return b_->spec_text; }
  std::string name(int a) const { return b_->element_name(a); }
  const GroupBackend* backend() const { return b_.get(); }

  int pow(int g, long long k) const {
    if (k < 0) return pow(inv(g), -k);
    int acc = id(), base = g;
    while (k > 0) {
      if (k & 1) acc = mul(acc, base);
      k >>= 1;
      if (k) base = mul(base, base);
    }
    return acc;
  }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^{-1}
  int comm(int a, int b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
  int element_order(int g) const {
    int o = 1, cur = g;
    while (cur != id()) {
      cur = mul(cur, g);
      if (++o > order()) throw ConsistencyError("element order exceeds group order");
    }
    return o;
  }

  // same element indexing, dense table multiplication
  Group ensure_table(int cap) const {
    if (is_table()) return *this;
    int n = order();
    if (n > cap)
      throw ExpectationError("group order " + std::to_string(n) +
                             " exceeds table cap " + std::to_string(cap));
    auto t = std::make_shared<TableBackend>();
    t->n = n;
    t->id = id();
    t->generators = generators();
    t->spec_text = spec_text();
    t->table.resize((size_t)n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t->table[(size_t)a * n + b] = mul(a, b);
    t->invs.resize((size_t)n);
    for (int a = 0; a < n; ++a) t->invs[(size_t)a] = inv(a);
    t->names.resize((size_t)n);
    for (int a = 0; a < n; ++a) t->names[(size_t)a] = name(a);
    return Group(std::move(t));
  }

 private:
  std::shared_ptr<const GroupBackend> b_;
};

inline Group group_from_table(std::vector<int> table, std::vector<std::string> names = {},
                              std::vector<int> generators = {}, std::string spec_text = "") {
  size_t n2 = table.size();
  int n = (int)std::llround(std::sqrt((double)n2));
  if ((size_t)n * n != n2) throw UsageError("multiplication table is not square");
  auto t = std::make_shared<TableBackend>();
  t->n = n;
  t->table = std::move(table);
  for (int v : t->table)
    if (v < 0 || v >= n) throw UsageError("multiplication table entry out of range");
  // identity: the unique e with e*a == a == a*e for all a
  t->id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      ok = t->table[(size_t)e * n + a] == a && t->table[(size_t)a * n + e] == a;
    if (ok) {
      t->id = e;
      break;
    }
  }
  if (t->id < 0) throw UsageError("multiplication table has no identity");
  t->invs.assign((size_t)n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t->table[(size_t)a * n + b] == t->id && t->table[(size_t)b * n + a] == t->id)
        t->invs[(size_t)a] = b;
  for (int a = 0; a < n; ++a)
    if (t->invs[(size_t)a] < 0) throw UsageError("multiplication table has no inverse for element " +
                                                 std::to_string(a));
  // associativity (exhaustive at these sizes)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t->table[(size_t)t->table[(size_t)a * n + b] * n + c] !=
            t->table[(size_t)a * n + t->table[(size_t)b * n + c]])
          throw UsageError("multiplication table is not associative");
  t->names = std::move(names);
  if (generators.empty()) {
    for (int a = 0; a < n; ++a) generators.push_back(a);  // whole set generates
  }
  t->generators = std::move(generators);
  t->spec_text = spec_text.empty() ? "table(" + std::to_string(n) + ")" : std::move(spec_text);
  return Group(std::move(t));
}

// closure of generator encodings under a composition rule
struct ClosureSpec {
  std::string spec_text;
  std::string id_encoding;
  std::vector<std::string> generator_encodings;
  std::function<std::string(const std::string&, const std::string&)> compose;
  std::function<std::string(const std::string&)> invert;  // optional
  std::function<std::string(const std::string&)> pretty;  // optional
};

inline Group group_from_encodings(const ClosureSpec& spec, std::vector<std::string> elements) {
  auto h = std::make_shared<HashBackend>();
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  h->enc = std::move(elements);
  h->index.reserve(h->enc.size() * 2);
  for (int i = 0; i < (int)h->enc.size(); ++i) h->index.emplace(h->enc[(size_t)i], i);
  h->compose = spec.compose;
  h->invert_enc = spec.invert;
  h->pretty = spec.pretty;
  h->spec_text = spec.spec_text;
  auto idit = h->index.find(spec.id_encoding);
  if (idit == h->index.end()) throw ConsistencyError("identity encoding missing from element set");
  h->id_idx = idit->second;
  for (const auto& g : spec.generator_encodings) {
    auto it = h->index.find(g);
    if (it == h->index.end()) throw ConsistencyError("generator encoding missing from element set");
    h->generators.push_back(it->second);
  }
  // inverses: by explicit rule, else by power walk
  h->inv_table.assign(h->enc.size(), -1);
  for (int i = 0; i < (int)h->enc.size(); ++i) {
    if (spec.invert) {
      auto it = h->index.find(spec.invert(h->enc[(size_t)i]));
      if (it == h->index.end()) throw ConsistencyError("inverse left the enumerated element set");
      h->inv_table[(size_t)i] = it->second;
    } else {
      std::string prev = spec.id_encoding, cur = h->enc[(size_t)i];
      size_t steps = 0;
      while (cur != spec.id_encoding) {
        prev = cur;
        cur = spec.compose(cur, h->enc[(size_t)i]);
        if (++steps > h->enc.size())
          throw ConsistencyError("power walk failed to reach the identity");
      }
      auto it = h->index.find(prev);
      if (it == h->index.end()) throw ConsistencyError("inverse left the enumerated element set");
      h->inv_table[(size_t)i] = it->second;
    }
  }
  return Group(std::move(h));
}

inline Group group_from_closure(const ClosureSpec& spec, const Config& cfg = {}) {
  std::vector<std::string> elements{spec.id_encoding};
  std::unordered_map<std::string, int> seen{{spec.id_encoding, 0}};
  std::vector<std::string> queue{spec.id_encoding};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    std::string cur = queue[qi];  // copy: queue reallocates
    for (const auto& g : spec.generator_encodings) {
      std::string nxt = spec.compose(cur, g);
      if (seen.emplace(nxt, (int)elements.size()).second) {
        if ((int)elements.size() >= cfg.closure_cap)
          throw ExpectationError("closure too large: more than " +
                                 std::to_string(cfg.closure_cap) + " elements reached");
        elements.push_back(nxt);
        queue.push_back(std::move(nxt));
      }
    }
  }
  return group_from_encodings(spec, std::move(elements));
}

inline Group group_from_index_rule(int n, int id, std::function<int(int, int)> mul,
                                   std::function<int(int)> inv,
                                   std::function<std::string(int)> name,
                                   std::vector<int> generators, std::string spec_text) {
  auto f = std::make_shared<FnBackend>();
  f->n = n;
  f->id = id;
  f->mul_fn = std::move(mul);
  f->inv_fn = std::move(inv);
  f->name_fn = std::move(name);
  f->generators = std::move(generators);
  f->spec_text = std::move(spec_text);
  return Group(std::move(f));
}

// direct product of cyclic groups, mixed-radix element indices
inline Group abelian_product_group(const std::vector<int>& orders, std::string spec_text = "") {
  long long n = 1;
  for (int d : orders) {
    if (d < 1) throw UsageError("cyclic factor order must be positive");
    n *= d;
    if (n > 100000000) throw UsageError("abelian product too large");
  }
  size_t r = orders.size();
  auto split = [orders, r](int idx) {
    std::vector<int> e(r);
    for (size_t i = r; i-- > 0;) {
      e[i] = idx % orders[i];
      idx /= orders[i];
    }
    return e;
  };
  auto join = [orders, r](const std::vector<int>& e) {
    int idx = 0;
    for (size_t i = 0; i < r; ++i) idx = idx * orders[i] + e[i];
    return idx;
  };
  auto mul = [split, join, orders, r](int a, int b) {
    auto ea = split(a), eb = split(b);
    for (size_t i = 0; i < r; ++i) ea[i] = (ea[i] + eb[i]) % orders[i];
    return join(ea);
  };
  auto inv = [split, join, orders, r](int a) {
    auto e = split(a);
    for (size_t i = 0; i < r; ++i) e[i] = (orders[i] - e[i]) % orders[i];
    return join(e);
  };
  auto name = [split, r](int a) {
    auto e = split(a);
    std::string s = "(";
    for (size_t i = 0; i < r; ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
  };
  std::vector<int> gens;
  {
    std::vector<int> e(r, 0);
    for (size_t i = 0; i < r; ++i) {
      if (orders[i] == 1) continue;
      e[i] = 1;
      gens.push_back(join(e));
      e[i] = 0;
    }
  }
  if (spec_text.empty()) {
    spec_text = "product(";
    for (size_t i = 0; i < r; ++i)
      spec_text += (i ? "," : "") + ("cyclic(" + std::to_string(orders[i]) + ")");
    spec_text += ")";
  }
  return group_from_index_rule((int)n, 0, mul, inv, name, gens, std::move(spec_text));
}

inline Group cyclic_group(int n) {
  if (n < 1) throw UsageError("cyclic group order must be positive");
  auto name = [](int a) { return a == 0 ? std::string("e") : "g^" + std::to_string(a); };
  return group_from_index_rule(
      n, 0, [n](int a, int b) { return (a + b) % n; }, [n](int a) { return (n - a) % n; }, name,
      n > 1 ? std::vector<int>{1} : std::vector<int>{}, "cyclic(" + std::to_string(n) + ")");
}

// permutations encoded as byte strings of images
inline std::string perm_compose(const std::string& p, const std::string& q) {
  // (p*q)(x) = p(q(x))
  std::string out(p.size(), '\0');
  for (size_t i = 0; i < p.size(); ++i) out[i] = p[(size_t)(unsigned char)q[i]];
  return out;
}

inline std::string perm_invert(const std::string& p) {
  std::string out(p.size(), '\0');
  for (size_t i = 0; i < p.size(); ++i) out[(size_t)(unsigned char)p[i]] = (char)i;
  return out;
}

inline std::string perm_pretty(const std::string& p) {
  std::string out;
  std::vector<bool> used(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (used[i] || (size_t)(unsigned char)p[i] == i) continue;
    out += "(";
    size_t j = i;
    bool first = true;
    while (!used[j]) {
      used[j] = true;
      out += (first ? "" : " ") + std::to_string(j + 1);
      first = false;
      j = (size_t)(unsigned char)p[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

inline Group permutation_group(const std::vector<std::string>& generator_perms,
                               const Config& cfg = {}, std::string spec_text = "") {
  if (generator_perms.empty()) throw UsageError("permutation group needs at least one generator");
  size_t deg = generator_perms[0].size();
  for (const auto& g : generator_perms)
    if (g.size() != deg) throw UsageError("permutation generators have mixed degrees");
  ClosureSpec spec;
  spec.spec_text = std::move(spec_text);
  spec.id_encoding.resize(deg);
  for (size_t i = 0; i < deg; ++i) spec.id_encoding[i] = (char)i;
  spec.generator_encodings = generator_perms;
  spec.compose = perm_compose;
  spec.invert = perm_invert;
  spec.pretty = perm_pretty;
  if (spec.spec_text.empty()) {
    spec.spec_text = "perm_closure(" + std::to_string(deg) + ":";
    for (const auto& g : generator_perms) spec.spec_text += perm_pretty(g);
    spec.spec_text += ")";
  }
  return group_from_closure(spec, cfg);
}

// Heisenberg group of order p^3: generators x, y with [x,y] = c central of order p.
// Normal form x^i y^j c^s, index (i*p + j)*p + s.
struct HeisenbergGroupData {
  Group G;
  int p = 0;
  int x = 0, y = 0, c = 0;
};

inline HeisenbergGroupData heisenberg_group(int p) {
  if (p < 3 || p % 2 == 0) throw UsageError("heisenberg: p must be an odd prime");
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) throw UsageError("heisenberg: p must be an odd prime");
  int n = p * p * p;
  auto split = [p](int a) { return std::array<int, 3>{a / (p * p), (a / p) % p, a % p}; };
  auto join = [p](int i, int j, int s) { return (i * p + j) * p + s; };
  // y^j x^i = x^i y^j c^{-ij}
  auto mul = [split, join, p](int a, int b) {
    auto [i, j, s] = split(a);
    auto [i2, j2, s2] = split(b);
    return join((i + i2) % p, (j + j2) % p, ((s + s2 - i2 * j) % p + p) % p);
  };
  auto inv = [split, join, p](int a) {
    auto [i, j, s] = split(a);
    return join((p - i) % p, (p - j) % p, ((-s - i * j) % p + p * p) % p);
  };
  auto name = [split](int a) {
    auto [i, j, s] = split(a);
    std::string out;
    if (i) out += "x^" + std::to_string(i);
    if (j) out += (out.empty() ? "" : "*") + ("y^" + std::to_string(j));
    if (s) out += (out.empty() ? "" : "*") + ("c^" + std::to_string(s));
    return out.empty() ? std::string("e") : out;
  };
  HeisenbergGroupData out;
  out.p = p;
  out.x = join(1, 0, 0);
  out.y = join(0, 1, 0);
  out.c = join(0, 0, 1);
  out.G = group_from_index_rule(n, 0, mul, inv, name, {out.x, out.y},
                                "heisenberg(" + std::to_string(p) + ")");
  return out;
}

}  // namespace twistlab
