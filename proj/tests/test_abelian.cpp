#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "twistlab/abelian.hpp"

using namespace twistlab;

namespace {

PairingForm standard_form_55() {
  // beta((a1,a2),(b1,b2)) = zeta_5^{a1 b2}
  PairingForm f;
  f.divisors = {5, 5};
  f.exponent = 5;
  f.m = {{0, 1}, {0, 0}};
  return f;
}

PairingForm standard_alt_55() {
  // zeta_5^{a1 b2 - a2 b1}
  PairingForm f;
  f.divisors = {5, 5};
  f.exponent = 5;
  f.m = {{0, 1}, {4, 0}};
  return f;
}

}  // namespace

TEST_CASE("characters of an abelian structure") {
  Group G = abelian_product_group({5, 5});
  AbelianStructure A = abelian_structure(G, Subgroup{.members = [&] {
                                              std::vector<int> m(25);
                                              for (int i = 0; i < 25; ++i) m[i] = i;
                                              return m;
                                            }()});
  REQUIRE(A.size() == 25);
  REQUIRE(A.rank() == 2);
  REQUIRE(A.exponent() == 5);
  REQUIRE(A.basis.orders == std::vector<int>{5, 5});

  SECTION("multiplicative in the argument") {
    for (int ci = 0; ci < 25; ++ci) {
      auto chi = A.char_vec(ci);
      for (int a : A.basis.members)
        for (int b : A.basis.members)
          REQUIRE(A.char_value(chi, G.mul(a, b)) == A.char_value(chi, a) * A.char_value(chi, b));
    }
  }
  SECTION("index arithmetic matches value products") {
    for (int c1 = 0; c1 < 25; ++c1)
      for (int c2 = 0; c2 < 25; ++c2) {
        int c12 = A.char_mul(c1, c2);
        for (int g : A.basis.generators)
          REQUIRE(A.char_value_idx(c12, g) ==
                  A.char_value_idx(c1, g) * A.char_value_idx(c2, g));
      }
    for (int c1 = 0; c1 < 25; ++c1) REQUIRE(A.char_mul(c1, A.char_inv(c1)) == 0);
  }
  SECTION("orthogonality") {
    for (int ci = 0; ci < 25; ++ci) {
      Cyclo sum;
      for (int a : A.basis.members) sum += A.char_value_idx(ci, a);
      REQUIRE(sum == (ci == 0 ? Cyclo(25) : Cyclo(0)));
    }
  }
}

TEST_CASE("alternation and odd inverse") {
  Group G = abelian_product_group({5, 5});
  std::vector<int> all(25);
  for (int i = 0; i < 25; ++i) all[i] = i;
  AbelianStructure A = abelian_structure(G, all);

  PairingForm f = standard_form_55();
  PairingForm alt = alternation(f);
  REQUIRE(alt == standard_alt_55());

  auto flags = validate_form(alt, A);
  REQUIRE(flags.well_defined);
  REQUIRE(flags.alternating);
  REQUIRE(flags.skew_symmetric);
  REQUIRE(flags.nondegenerate);
  REQUIRE(flags.invariant);

  // the asymmetric source form is none of those
  auto src = validate_form(f, A);
  REQUIRE(src.well_defined);
  REQUIRE_FALSE(src.alternating);
  REQUIRE_FALSE(src.skew_symmetric);
  REQUIRE_FALSE(src.nondegenerate);

  SECTION("alt_inverse_odd is a one-sided inverse of alternation") {
    PairingForm back = alt_inverse_odd(alt);
    REQUIRE(alternation(back) == alt);
    // and on a second alternating form
    PairingForm alt3 = alt.power(3);
    REQUIRE(alternation(alt_inverse_odd(alt3)) == alt3);
  }
  SECTION("even exponent rejected") {
    PairingForm f4;
    f4.divisors = {4};
    f4.exponent = 4;
    f4.m = {{0}};
    REQUIRE_THROWS_AS(alt_inverse_odd(f4), ExpectationError);
  }
  SECTION("serialization") {
    REQUIRE(standard_alt_55().to_string() == "form[5,5][0,1;4,0]");
  }
}

TEST_CASE("form fitting from a value table") {
  Group G = abelian_product_group({5, 5});
  std::vector<int> all(25);
  for (int i = 0; i < 25; ++i) all[i] = i;
  AbelianStructure A = abelian_structure(G, all);

  PairingForm alt = standard_alt_55();
  PairingForm fitted = form_from_values(
      A, [&](int a, int b) { return alt.eval_members(A, a, b); });
  for (int a : A.basis.members)
    for (int b : A.basis.members)
      REQUIRE(fitted.eval_members(A, a, b) == alt.eval_members(A, a, b));

  REQUIRE_THROWS_AS(form_from_values(A,
                                     [&](int a, int b) {
                                       // quadratic in a: not bi-multiplicative
                                       auto ca = A.basis.coords_of(a);
                                       auto cb = A.basis.coords_of(b);
                                       return Cyclo::root_of_unity(5, ca[0] * ca[0] * cb[1]);
                                     }),
                    ExpectationError);
}

TEST_CASE("invariant form enumeration") {
  SECTION("Heisenberg <x,c> has exactly the four symplectic powers") {
    auto H = heisenberg_group(5);
    auto members = subgroup_closure(H.G, {H.x, H.c}, 200);
    REQUIRE(members.size() == 25);
    AbelianStructure A = abelian_structure(H.G, members);
    auto forms = enumerate_invariant_forms(A, true, true);
    REQUIRE(forms.size() == 4);
    std::set<std::string> values;
    for (const auto& f : forms) {
      auto fl = validate_form(f, A);
      REQUIRE(fl.alternating);
      REQUIRE(fl.nondegenerate);
      REQUIRE(fl.invariant);
      values.insert(f.eval_members(A, H.x, H.c).to_string());
    }
    std::set<std::string> expect;
    for (int k = 1; k <= 4; ++k) expect.insert(Cyclo::root_of_unity(5, k).to_string());
    REQUIRE(values == expect);
  }
  SECTION("elementary abelian 3x3 has two") {
    Group G = abelian_product_group({3, 3});
    std::vector<int> all(9);
    for (int i = 0; i < 9; ++i) all[i] = i;
    AbelianStructure A = abelian_structure(G, all);
    auto forms = enumerate_invariant_forms(A, true, true);
    REQUIRE(forms.size() == 2);
  }
  SECTION("cyclic group has none") {
    Group G = cyclic_group(5);
    AbelianStructure A = abelian_structure(G, {0, 1, 2, 3, 4});
    auto forms = enumerate_invariant_forms(A, true, true);
    REQUIRE(forms.empty());
  }
}

TEST_CASE("adjoint dual form") {
  Group G = abelian_product_group({5, 5});
  std::vector<int> all(25);
  for (int i = 0; i < 25; ++i) all[i] = i;
  AbelianStructure A = abelian_structure(G, all);

  PairingForm alt = standard_alt_55();
  SECTION("standard symplectic form dualizes to its inverse") {
    PairingForm b = adjoint_dual_form(A, alt);
    REQUIRE(b == alt.power(4));
  }
  SECTION("symmetric identity form is self-adjoint") {
    PairingForm id5;
    id5.divisors = {5, 5};
    id5.exponent = 5;
    id5.m = {{1, 0}, {0, 1}};
    REQUIRE(adjoint_dual_form(A, id5) == id5);
  }
  SECTION("involutive") {
    for (int k = 1; k <= 4; ++k) {
      PairingForm f = alt.power(k);
      REQUIRE(adjoint_dual_form(A, adjoint_dual_form(A, f)) == f);
    }
  }
  SECTION("degenerate form rejected") {
    PairingForm deg;
    deg.divisors = {5, 5};
    deg.exponent = 5;
    deg.m = {{1, 0}, {0, 0}};
    REQUIRE_THROWS_AS(adjoint_dual_form(A, deg), ExpectationError);
  }
  SECTION("duality solves beta(x, .) = chi") {
    DualityData d = duality_of_form(A, alt);
    for (int ci = 0; ci < 25; ++ci) {
      int x = d.elt_of_char[(size_t)ci];
      for (int b : A.basis.members)
        REQUIRE(alt.eval_members(A, x, b) == A.char_value_idx(ci, b));
    }
  }
}

TEST_CASE("orthogonal complements and lagrangians") {
  Group G = abelian_product_group({5, 5});
  std::vector<int> all(25);
  for (int i = 0; i < 25; ++i) all[i] = i;
  AbelianStructure A = abelian_structure(G, all);
  PairingForm alt = standard_alt_55();

  std::vector<int> line = subgroup_closure(G, {G.generators()[0]}, 100);
  REQUIRE(line.size() == 5);
  REQUIRE(orthogonal_complement(A, alt, line) == line);
  REQUIRE(is_isotropic(A, alt, line));
  REQUIRE(is_lagrangian(A, alt, line));
  REQUIRE(orthogonal_complement(A, alt, {G.id()}) == all);
  REQUIRE_FALSE(is_lagrangian(A, alt, {G.id()}));

  auto dec = lagrangian_decomposition(A, alt);
  REQUIRE(dec.orders == std::vector<int>{5});
  REQUIRE(dec.B.size() == 5);
  REQUIRE(is_lagrangian(A, alt, dec.B));
  // hyperbolic pairing has full order
  REQUIRE(alt.eval_members(A, dec.b_side[0], dec.dual_side[0]).order_as_root() == 5);
}

TEST_CASE("lagrangian structure of the 25x25 square") {
  Group G = abelian_product_group({25, 25});
  std::vector<int> all(625);
  for (int i = 0; i < 625; ++i) all[i] = i;
  AbelianStructure A = abelian_structure(G, all);
  PairingForm f;
  f.divisors = {25, 25};
  f.exponent = 25;
  f.m = {{0, 1}, {24, 0}};
  REQUIRE(validate_form(f, A).nondegenerate);

  SECTION("decomposition finds a cyclic lagrangian") {
    auto dec = lagrangian_decomposition(A, f);
    REQUIRE(dec.orders == std::vector<int>{25});
    REQUIRE(dec.B.size() == 25);
    REQUIRE(is_lagrangian(A, f, dec.B));
    // that lagrangian splits: a homomorphic section exists
    REQUIRE(lagrangian_split_exists(A, f, dec.B));
    // greedy section on a split lagrangian still satisfies the cocycle identity
    auto sec = section_with_cocycle(A, f, dec.B);
    REQUIRE(sec.section[0] == G.id());
  }
  SECTION("the 5-torsion lagrangian does not split") {
    std::vector<int> B;
    for (int a1 = 0; a1 < 25; a1 += 5)
      for (int a2 = 0; a2 < 25; a2 += 5) B.push_back(a1 * 25 + a2);
    std::sort(B.begin(), B.end());
    REQUIRE(B.size() == 25);
    REQUIRE(is_lagrangian(A, f, B));
    REQUIRE_FALSE(lagrangian_split_exists(A, f, B));
    auto sec = section_with_cocycle(A, f, B);
    // a non-split extension forces a nontrivial cocycle for every section
    bool nontrivial = false;
    for (const auto& row : sec.gamma)
      for (int g : row)
        if (g != G.id()) nontrivial = true;
    REQUIRE(nontrivial);
  }
}

TEST_CASE("greedy section on a split lagrangian of the 5x5 square") {
  Group G = abelian_product_group({5, 5});
  std::vector<int> all(25);
  for (int i = 0; i < 25; ++i) all[i] = i;
  AbelianStructure A = abelian_structure(G, all);
  PairingForm alt = standard_alt_55();
  std::vector<int> B = subgroup_closure(G, {G.generators()[0]}, 100);
  auto sec = section_with_cocycle(A, alt, B);
  REQUIRE(sec.section[0] == G.id());
  for (const auto& row : sec.gamma)
    for (int g : row) REQUIRE(g == G.id());
  // section property: beta(s(chi), x) = chi(x) on B
  for (int ci = 0; ci < (int)B.size(); ++ci)
    for (int x : B)
      REQUIRE(alt.eval_members(A, sec.section[(size_t)ci], x) ==
              sec.Bstr.char_value_idx(ci, x));
}

TEST_CASE("character conjugation action") {
  auto H = heisenberg_group(5);
  auto members = subgroup_closure(H.G, {H.x, H.c}, 200);
  AbelianStructure A = abelian_structure(H.G, members);
  for (int g : {H.y, H.G.mul(H.x, H.y)}) {
    for (int ci = 0; ci < 25; ++ci) {
      auto moved = A.char_conj(g, A.char_vec(ci));
      int gi = H.G.inv(g);
      for (int a : A.basis.members)
        REQUIRE(A.char_value(moved, a) == A.char_value_idx(ci, H.G.mul(gi, H.G.mul(a, g))));
    }
  }
}

TEST_CASE("symmetric cocycle trivialization") {
  SECTION("coboundary input recovers a solution without enlargement") {
    std::vector<int> divisors{5, 5};
    SplitMix64 rng{0x5eed};
    std::vector<Cyclo> v(25);
    v[0] = Cyclo::one();
    for (int i = 1; i < 25; ++i) v[(size_t)i] = Cyclo::root_of_unity(5, (long long)rng.below(5));
    auto mul_idx = [&](int a, int b) {
      int a1 = a / 5, a2 = a % 5, b1 = b / 5, b2 = b % 5;
      return ((a1 + b1) % 5) * 5 + (a2 + b2) % 5;
    };
    auto e = [&](int a, int b) {
      return v[(size_t)mul_idx(a, b)] * v[(size_t)a].inverted() * v[(size_t)b].inverted();
    };
    auto sol = trivialize_symmetric_cocycle(divisors, e);
    REQUIRE_FALSE(sol.enlarged_conductor);
    REQUIRE(sol.u[0] == Cyclo::one());
    for (int a = 0; a < 25; ++a)
      for (int b = 0; b < 25; ++b)
        REQUIRE(sol.u[(size_t)mul_idx(a, b)] == e(a, b) * sol.u[(size_t)a] * sol.u[(size_t)b]);
  }
  SECTION("sign cocycle on the Klein group needs a fourth root") {
    std::vector<int> divisors{2, 2};
    auto e = [&](int a, int b) {
      int a1 = a / 2, b1 = b / 2;
      return Cyclo::root_of_unity(2, a1 * b1);
    };
    auto sol = trivialize_symmetric_cocycle(divisors, e);
    REQUIRE(sol.enlarged_conductor);
    REQUIRE(sol.u[2] == Cyclo::root_of_unity(4, 1));  // u(h1) = i
    REQUIRE_THROWS_AS(trivialize_symmetric_cocycle(divisors, e, false), ExpectationError);
  }
  SECTION("non-symmetric input rejected") {
    std::vector<int> divisors{3};
    auto e = [&](int a, int b) { return Cyclo::root_of_unity(3, a * b * b); };
    REQUIRE_THROWS_AS(trivialize_symmetric_cocycle(divisors, e), ExpectationError);
  }
  SECTION("trivial group") {
    auto sol = trivialize_symmetric_cocycle({}, [](int, int) { return Cyclo::one(); });
    REQUIRE(sol.u.size() == 1);
    REQUIRE(sol.u[0] == Cyclo::one());
  }
}
