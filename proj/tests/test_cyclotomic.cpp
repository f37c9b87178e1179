#include <catch2/catch_amalgamated.hpp>

#include "twistlab/cyclotomic.hpp"

using namespace twistlab;

namespace {

std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
  std::vector<long long> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Cyclo zeta(long long n, long long k = 1) { return Cyclo::root_of_unity(n, k); }

}  // namespace

TEST_CASE("cyclotomic polynomials multiply back to x^n - 1") {
  for (int n = 1; n <= 36; ++n) {
    std::vector<long long> prod{1};
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) prod = poly_mul(prod, detail::cyclotomic_polynomial(d));
    std::vector<long long> expect(n + 1, 0);
    expect[0] = -1;
    expect[n] = 1;
    REQUIRE(prod == expect);
  }
}

TEST_CASE("known cyclotomic polynomials") {
  using V = std::vector<long long>;
  CHECK(detail::cyclotomic_polynomial(1) == V{-1, 1});
  CHECK(detail::cyclotomic_polynomial(2) == V{1, 1});
  CHECK(detail::cyclotomic_polynomial(4) == V{1, 0, 1});
  CHECK(detail::cyclotomic_polynomial(12) == V{1, 0, -1, 0, 1});
  CHECK(detail::cyclotomic_polynomial(25) == V{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0,
                                               0, 0, 0, 1});
}

TEST_CASE("vanishing sums of roots of unity") {
  Cyclo s5;
  for (int k = 0; k < 5; ++k) s5 += zeta(5, k);
  CHECK(s5.is_zero());
  Cyclo s12;
  for (int k = 0; k < 12; ++k) s12 += zeta(12, k);
  CHECK(s12.is_zero());
}

TEST_CASE("rational collapse and recognition") {
  CHECK(zeta(4, 2) == Cyclo(-1));
  CHECK(zeta(4, 2).is_rational());
  CHECK((zeta(5) * zeta(5, 4)).is_one());
  CHECK((zeta(5) * zeta(5, 4)).conductor() == 1);
  CHECK(zeta(6).conductor() == 3);  // zeta_6 = -zeta_3^2 lives in Q(zeta_3)... as zeta_6 proper
  CHECK(zeta(2).is_rational());
  CHECK(zeta(1).is_one());
}

TEST_CASE("cross-conductor identities") {
  CHECK(zeta(6) == -zeta(3, 2));
  CHECK(zeta(4) * zeta(3) == zeta(12, 7));
  CHECK(zeta(10) == -zeta(5, 3));
  CHECK(zeta(8, 2) == zeta(4));
}

TEST_CASE("powers and inverses of roots") {
  CHECK(zeta(5).pow(7) == zeta(5, 2));
  CHECK(zeta(5).pow(-1) == zeta(5, 4));
  CHECK(zeta(12).pow(12).is_one());
  CHECK(zeta(7).inverted() == zeta(7, 6));
}

TEST_CASE("inversion in Q(zeta_3)") {
  Cyclo v = Cyclo(1) - zeta(3);
  Cyclo expect = (Cyclo(1) - zeta(3, 2)) * Cyclo(Rational(1, 3));
  CHECK(v.inverted() == expect);
  CHECK((v * v.inverted()).is_one());
}

TEST_CASE("field axioms on random elements of Q(zeta_12)") {
  SplitMix64 rng(42);
  auto rand_elt = [&]() {
    std::vector<std::pair<long long, Rational>> raw;
    for (int t = 0; t < 3; ++t)
      raw.emplace_back((long long)rng.below(12), Rational((long long)rng.below(7)) - 3);
    return Cyclo::from_power_terms(12, raw);
  };
  for (int trial = 0; trial < 50; ++trial) {
    Cyclo a = rand_elt(), b = rand_elt(), c = rand_elt();
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    if (!a.is_zero()) {
      CHECK((a * a.inverted()).is_one());
      CHECK((a / a).is_one());
    }
  }
}

TEST_CASE("mixed conductor arithmetic stays exact") {
  Cyclo x = zeta(5) + zeta(4);
  Cyclo y = x * x;
  CHECK(y == zeta(5, 2) + 2 * zeta(5) * zeta(4) - Cyclo(1));
  CHECK((x - zeta(4) - zeta(5)).is_zero());
}

TEST_CASE("orders of roots of unity") {
  CHECK(Cyclo(1).order_as_root() == 1);
  CHECK(Cyclo(-1).order_as_root() == 2);
  CHECK(zeta(5, 2).order_as_root() == 5);
  CHECK(zeta(12, 5).order_as_root() == 12);
  CHECK(zeta(12, 8).order_as_root() == 3);
  CHECK(Cyclo(2).order_as_root() == 0);
  CHECK((Cyclo(1) + zeta(5)).order_as_root() == 0);
}

TEST_CASE("log against a fixed base") {
  CHECK(zeta(5, 3).log_root(5) == 3);
  CHECK(Cyclo(1).log_root(5) == 0);
  CHECK(Cyclo(-1).log_root(2) == 1);
  CHECK(!Cyclo(2).log_root(5).has_value());
  CHECK(zeta(5, 1).log_root(4) == std::nullopt);
}

TEST_CASE("canonical m-th roots inside mu") {
  CHECK(mth_root_in_mu(zeta(5), 3) == zeta(5, 2));
  CHECK(mth_root_in_mu(zeta(5), 3).pow(3) == zeta(5));
  CHECK(mth_root_in_mu(Cyclo(1), 7).is_one());
  CHECK(mth_root_in_mu(zeta(11, 4), 3).pow(3) == zeta(11, 4));
  CHECK_THROWS_AS(mth_root_in_mu(zeta(4), 2), ExpectationError);
  CHECK_THROWS_AS(mth_root_in_mu(Cyclo(2), 3), ExpectationError);
}

TEST_CASE("adjoined roots enlarge the conductor") {
  Cyclo w = adjoined_root(zeta(4), 3);
  CHECK(w.pow(3) == zeta(4));
  CHECK(w.conductor() == 12);
  Cyclo u = adjoined_root(Cyclo(-1), 2);
  CHECK(u.pow(2) == Cyclo(-1));
  CHECK(u == zeta(4));
}

TEST_CASE("serialization round trip") {
  Cyclo a = zeta(12, 7) * Cyclo(Rational(3, 2)) + Cyclo(Rational(-1, 5));
  CHECK(Cyclo::parse(a.to_string()) == a);
  CHECK(Cyclo::parse("cyc(1)[7/3]") == Cyclo(Rational(7, 3)));
  CHECK(Cyclo(0).to_string() == "cyc(1)[0]");
  CHECK(Cyclo::parse(Cyclo(0).to_string()).is_zero());
  CHECK(zeta(5).to_string() == "cyc(5)[0,1,0,0]");
  CHECK_THROWS_AS(Cyclo::parse("cyc(5)[1,2]"), UsageError);
  CHECK_THROWS_AS(Cyclo::parse("nonsense"), UsageError);
}

TEST_CASE("conjugation") {
  CHECK(zeta(5).conj() == zeta(5, 4));
  CHECK((zeta(5) + zeta(5, 4)).conj() == zeta(5) + zeta(5, 4));
  Cyclo a = zeta(12, 7) + 2;
  CHECK((a * a.conj()).conj() == a * a.conj());
}

TEST_CASE("rational parsing") {
  CHECK(rat_parse("-3/4") == Rational(-3, 4));
  CHECK(rat_parse("17") == Rational(17));
  CHECK_THROWS_AS(rat_parse("1/0"), UsageError);
  CHECK_THROWS_AS(rat_parse("x"), UsageError);
  CHECK(rat_to_string(Rational(-3, 4)) == "-3/4");
  CHECK(rat_to_string(Rational(5)) == "5");
}
