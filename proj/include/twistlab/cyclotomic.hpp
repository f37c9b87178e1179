#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/config.hpp"
#include "twistlab/rational.hpp"

namespace twistlab {
namespace detail {

// product of (x^n - 1) keeps integer coefficients through every exact division here
inline std::vector<long long> poly_divide_exact(std::vector<long long> num,
                                                const std::vector<long long>& den) {
  int dn = (int)num.size() - 1, dd = (int)den.size() - 1;
  std::vector<long long> q(dn - dd + 1, 0);
  for (int i = dn; i >= dd; --i) {
    long long c = num[i];
    if (c == 0) continue;
    q[i - dd] = c;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (long long c : num)
    if (c != 0) throw ConsistencyError("inexact cyclotomic polynomial division");
  return q;
}

inline const std::vector<long long>& cyclotomic_polynomial(int n) {
  static std::map<int, std::vector<long long>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<long long> res(n + 1, 0);
  res[0] = -1;
  res[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) res = poly_divide_exact(std::move(res), cyclotomic_polynomial(d));
  return cache.emplace(n, std::move(res)).first->second;
}

struct ConductorBasis {
  int n = 1;
  int degree = 1;                       // deg Phi_n
  std::vector<long long> minpoly;       // Phi_n, monic
  std::vector<std::vector<std::pair<int, long long>>> rows;  // x^k mod Phi_n, k <= max_power
};

inline const ConductorBasis& conductor_basis(int n) {
  static std::map<int, ConductorBasis> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw ConsistencyError("conductor must be positive");
  ConductorBasis b;
  b.n = n;
  b.minpoly = cyclotomic_polynomial(n);
  b.degree = (int)b.minpoly.size() - 1;
  int max_power = std::max({2 * b.degree - 2, n - 1, b.degree});
  std::vector<std::vector<long long>> dense(max_power + 1, std::vector<long long>(b.degree, 0));
  for (int k = 0; k < b.degree; ++k) dense[k][k] = 1;
  for (int k = b.degree; k <= max_power; ++k) {
    const auto& prev = dense[k - 1];
    auto& cur = dense[k];
    long long top = prev[b.degree - 1];
    for (int i = b.degree - 1; i >= 1; --i) cur[i] = prev[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < b.degree; ++i) cur[i] -= top * b.minpoly[i];
  }
  b.rows.resize(max_power + 1);
  for (int k = 0; k <= max_power; ++k)
    for (int i = 0; i < b.degree; ++i)
      if (dense[k][i] != 0) b.rows[k].emplace_back(i, dense[k][i]);
  return cache.emplace(n, std::move(b)).first->second;
}

inline long long mod_inverse(long long a, long long m) {
  long long r0 = m, r1 = ((a % m) + m) % m, t0 = 0, t1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  if (r0 != 1) throw ExpectationError("not invertible mod " + std::to_string(m));
  return ((t0 % m) + m) % m;
}

}  // namespace detail

// Element of the cyclotomic field Q(zeta_N), stored sparsely in the power basis
// 1, x, ..., x^{deg Phi_N - 1}. Mixed-conductor arithmetic lifts to the lcm.
class Cyclo {
 public:
  using Term = std::pair<int, Rational>;

  Cyclo() : conductor_(1) {}
  Cyclo(const Rational& r) : conductor_(1) {
    if (r != 0) terms_.emplace_back(0, r);
  }
  Cyclo(long long v) : Cyclo(Rational(v)) {}
  Cyclo(int v) : Cyclo(Rational(v)) {}

  static Cyclo zero() { return Cyclo(); }
  static Cyclo one() { return Cyclo(1); }

  static Cyclo root_of_unity(long long n, long long k) {
    if (n < 1) throw UsageError("root_of_unity: order must be positive");
    k = ((k % n) + n) % n;
    if (k == 0) return one();
    long long g = std::gcd(k, n);
    long long d = n / g;
    k /= g;
    if (d % 4 == 2) {
      // Q(zeta_{2m}) = Q(zeta_m) for odd m: zeta_{2m} = -zeta_m^{(m+1)/2}
      long long m = d / 2;
      if (m == 1) return Cyclo(-1);
      long long e = (k % m) * ((m + 1) / 2) % m;
      Cyclo r = from_power_terms((int)m, {{e, Rational(1)}});
      return (k % 2) ? -r : r;
    }
    return from_power_terms((int)d, {{k, Rational(1)}});
  }

  // value sum_i c_i * zeta_n^{e_i}; exponents arbitrary integers
  static Cyclo from_power_terms(int n, const std::vector<std::pair<long long, Rational>>& raw) {
    const auto& basis = detail::conductor_basis(n);
    std::vector<Rational> dense(basis.degree);
    for (const auto& [e_raw, c] : raw) {
      if (c == 0) continue;
      long long e = ((e_raw % n) + n) % n;
      if (e < basis.degree) {
        dense[(size_t)e] += c;
      } else {
        for (const auto& [i, m] : basis.rows[(size_t)e]) dense[(size_t)i] += c * m;
      }
    }
    Cyclo out;
    out.conductor_ = n;
    for (int i = 0; i < basis.degree; ++i)
      if (dense[(size_t)i] != 0) out.terms_.emplace_back(i, std::move(dense[(size_t)i]));
    out.normalize();
    return out;
  }

  int conductor() const { return conductor_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return conductor_ == 1 && terms_.size() == 1 && terms_[0].second == 1;
  }
  bool is_rational() const { return conductor_ == 1; }
  Rational rational_value() const {
    if (conductor_ != 1) throw ExpectationError("value is not rational: " + to_string());
    return terms_.empty() ? Rational(0) : terms_[0].second;
  }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.conductor_ == b.conductor_) {
      // merge of two sorted reduced term lists needs no row reduction
      Cyclo out;
      out.conductor_ = a.conductor_;
      auto ia = a.terms_.begin(), ib = b.terms_.begin();
      while (ia != a.terms_.end() || ib != b.terms_.end()) {
        if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
          out.terms_.push_back(*ia++);
        } else if (ia == a.terms_.end() || ib->first < ia->first) {
          out.terms_.push_back(*ib++);
        } else {
          Rational c = ia->second + ib->second;
          if (c != 0) out.terms_.emplace_back(ia->first, std::move(c));
          ++ia, ++ib;
        }
      }
      out.normalize();
      return out;
    }
    long long L = std::lcm<long long>(a.conductor_, b.conductor_);
    std::vector<std::pair<long long, Rational>> raw;
    raw.reserve(a.terms_.size() + b.terms_.size());
    for (const auto& [e, c] : a.terms_) raw.emplace_back(e * (L / a.conductor_), c);
    for (const auto& [e, c] : b.terms_) raw.emplace_back(e * (L / b.conductor_), c);
    return from_power_terms((int)L, raw);
  }

  friend Cyclo operator-(const Cyclo& a) {
    Cyclo out = a;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (a.is_zero() || b.is_zero()) return Cyclo();
    long long L = std::lcm<long long>(a.conductor_, b.conductor_);
    long long fa = L / a.conductor_, fb = L / b.conductor_;
    std::vector<std::pair<long long, Rational>> raw;
    raw.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) raw.emplace_back(ea * fa + eb * fb, ca * cb);
    return from_power_terms((int)L, raw);
  }

  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.conductor_ == b.conductor_) return a.terms_ == b.terms_;
    return (a - b).is_zero();
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  Cyclo inverted() const {
    if (is_zero()) throw ConsistencyError("division by zero in cyclotomic field");
    if (terms_.size() == 1) {
      const auto& [e, c] = terms_[0];
      long long back = (conductor_ - e) % conductor_;
      return from_power_terms(conductor_, {{back, Rational(1) / c}});
    }
    // extended Euclid against the minimal polynomial
    const auto& basis = detail::conductor_basis(conductor_);
    using P = std::vector<Rational>;
    auto trim = [](P& p) {
      while (!p.empty() && p.back() == 0) p.pop_back();
    };
    P r0(basis.minpoly.size());
    for (size_t i = 0; i < basis.minpoly.size(); ++i) r0[i] = basis.minpoly[i];
    P r1((size_t)basis.degree);
    for (const auto& [e, c] : terms_) r1[(size_t)e] = c;
    trim(r1);
    P t0, t1{Rational(1)};
    while (!r1.empty()) {
      P rem = r0, q;
      if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, Rational(0));
      while (rem.size() >= r1.size()) {
        Rational lead = rem.back() / r1.back();
        size_t shift = rem.size() - r1.size();
        q[shift] += lead;
        for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= lead * r1[i];
        trim(rem);  // the leading term cancels, so rem strictly shrinks
      }
      trim(q);
      // t_new = t0 - q * t1
      P tn = t0;
      if (!q.empty() && !t1.empty()) {
        tn.resize(std::max(tn.size(), q.size() + t1.size() - 1));
        for (size_t i = 0; i < q.size(); ++i)
          for (size_t j = 0; j < t1.size(); ++j) tn[i + j] -= q[i] * t1[j];
      }
      trim(tn);
      r0 = std::move(r1);
      r1 = std::move(rem);
      t0 = std::move(t1);
      t1 = std::move(tn);
    }
    if (r0.size() != 1)
      throw ConsistencyError("cyclotomic inversion: gcd with minimal polynomial not constant");
    std::vector<std::pair<long long, Rational>> raw;
    for (size_t i = 0; i < t0.size(); ++i)
      if (t0[i] != 0) raw.emplace_back((long long)i, t0[i] / r0[0]);
    return from_power_terms(conductor_, raw);
  }

  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverted(); }

  Cyclo pow(long long k) const {
    if (k < 0) return inverted().pow(-k);
    Cyclo acc = one(), base = *this;
    while (k > 0) {
      if (k & 1) acc *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return acc;
  }

  // zeta -> zeta^{-1} (complex conjugation)
  Cyclo conj() const {
    std::vector<std::pair<long long, Rational>> raw;
    for (const auto& [e, c] : terms_) raw.emplace_back(-(long long)e, c);
    return from_power_terms(conductor_, raw);
  }

  // smallest d with value^d == 1, or 0 if the value is not a root of unity
  int order_as_root() const {
    if (is_zero()) return 0;
    long long m = std::lcm<long long>(2, conductor_);
    for (long long d = 1; d <= m; ++d)
      if (m % d == 0 && pow(d).is_one()) return (int)d;
    return 0;
  }

  // k with value == zeta_n^k, if one exists
  std::optional<long long> log_root(long long n) const {
    for (long long k = 0; k < n; ++k)
      if (*this == root_of_unity(n, k)) return k;
    return std::nullopt;
  }

  std::string to_string() const {
    const auto& basis = detail::conductor_basis(conductor_);
    std::string out = "cyc(" + std::to_string(conductor_) + ")[";
    size_t ti = 0;
    for (int i = 0; i < basis.degree; ++i) {
      if (i) out += ",";
      if (ti < terms_.size() && terms_[ti].first == i)
        out += rat_to_string(terms_[ti++].second);
      else
        out += "0";
    }
    return out + "]";
  }

  static Cyclo parse(const std::string& s) {
    auto fail = [&]() -> Cyclo { throw UsageError("unparsable cyclotomic literal: " + s); };
    if (s.rfind("cyc(", 0) != 0) return fail();
    auto close = s.find(')');
    auto open = s.find('[');
    if (close == std::string::npos || open != close + 1 || s.back() != ']') return fail();
    int n = 0;
    try {
      n = std::stoi(s.substr(4, close - 4));
    } catch (...) {
      return fail();
    }
    if (n < 1) return fail();
    std::vector<std::pair<long long, Rational>> raw;
    std::string body = s.substr(open + 1, s.size() - open - 2);
    long long e = 0;
    size_t pos = 0;
    while (pos <= body.size() && !body.empty()) {
      auto comma = body.find(',', pos);
      std::string piece = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
      raw.emplace_back(e++, rat_parse(piece));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (e != detail::conductor_basis(n).degree)
      throw UsageError("cyclotomic literal has wrong coefficient count: " + s);
    return from_power_terms(n, raw);
  }

 private:
  int conductor_;
  std::vector<Term> terms_;  // sorted by exponent, coefficients nonzero

  void normalize() {
    if (terms_.empty()) {
      conductor_ = 1;
    } else if (conductor_ > 1 && terms_.size() == 1 && terms_[0].first == 0) {
      conductor_ = 1;
    }
  }
};

// canonical m-th root inside the group of roots of unity containing z
inline Cyclo mth_root_in_mu(const Cyclo& z, long long m) {
  int d = z.order_as_root();
  if (d == 0) throw ExpectationError("mth_root_in_mu: value is not a root of unity");
  if (std::gcd((long long)d, m) != 1)
    throw ExpectationError("mth_root_in_mu: no canonical root, gcd(order, m) != 1");
  if (d == 1) return Cyclo::one();
  return z.pow(detail::mod_inverse(m % d, d));
}

// some w with w^m == z, enlarging the cyclotomic field if necessary
inline Cyclo adjoined_root(const Cyclo& z, long long m) {
  int d = z.order_as_root();
  if (d == 0) throw ExpectationError("adjoined_root: value is not a root of unity");
  auto k = z.log_root(d);
  if (!k) throw ConsistencyError("adjoined_root: log lookup failed");
  return Cyclo::root_of_unity((long long)d * m, *k);
}

}  // namespace twistlab
