#include <random>
#include <set>

#include "doctest.h"
#include "formclass/orders.hpp"

using namespace formclass;

namespace {

QuadElem E(long u, long v) { return {Rat(u), Rat(v)}; }

// (u, v) coordinates with |u|, |v| <= bound.
std::vector<QuadElem> box(long bound) {
  std::vector<QuadElem> out;
  for (long u = -bound; u <= bound; ++u)
    for (long v = -bound; v <= bound; ++v)
      if (u != 0 || v != 0) out.push_back(E(u, v));
  return out;
}

bool congruent_one(const QuadElem& x, long n) {
  return mod(x.u.get_num() - 1, n) == 0 && mod(x.v.get_num(), n) == 0;
}

// Definition of P_{1,N}: I = (nu1/nu2) O with nu_i = 1 mod NO, searching
// nu1, nu2 in a coordinate box.
struct P1NBox {
  std::vector<QuadElem> nus;
  std::set<std::string> principal;  // nu1 O

  P1NBox(const ImagQuadOrder& O, long n, long bound) {
    for (const auto& x : box(bound))
      if (congruent_one(x, n)) {
        nus.push_back(x);
        principal.insert(to_string(OIdealLat::principal(O, x)));
      }
  }

  bool contains(const OIdealLat& I) const {
    for (const auto& nu2 : nus)
      if (principal.contains(to_string(mul(I, OIdealLat::principal(I.order(), nu2))))) return true;
    return false;
  }
};

OIdealLat random_ideal(const ImagQuadOrder& O, std::mt19937_64& rng, long max_a) {
  auto all = primitive_ideals(O, max_a);
  std::uniform_int_distribution<long> scale(1, 4);
  return scaled(all[rng() % all.size()], Rat(scale(rng), scale(rng)));
}

}  // namespace

TEST_CASE("order_from_disc") {
  auto O = order_from_disc(-20);
  CHECK(O.fundamental_disc() == -20);
  CHECK(O.conductor() == 1);
  O = order_from_disc(-60);
  CHECK(O.fundamental_disc() == -15);
  CHECK(O.conductor() == 2);
  O = order_from_disc(-15);
  CHECK(O.fundamental_disc() == -15);
  CHECK(O.conductor() == 1);
  CHECK(order_from_disc(-12).fundamental_disc() == -3);
  CHECK(order_from_disc(-16).conductor() == 2);
  CHECK(order_from_disc(-63).conductor() == 3);
  CHECK_THROWS_AS(order_from_disc(-5), InvalidDiscriminant);
}

TEST_CASE("ideal_from_form") {
  auto O20 = order_from_disc(-20);
  CHECK(ideal_from_form(O20, QuadForm(1, 0, 5)) == OIdealLat(O20));
  auto I = ideal_from_form(O20, QuadForm(2, 2, 3));
  CHECK(I.scale() == Rat(1, 2));
  CHECK(I.a() == 2);
  CHECK(I.b() == 2);
  auto O15 = order_from_disc(-15);
  CHECK(ideal_from_form(O15, QuadForm(1, 1, 4)) == OIdealLat(O15));
  // [omega_Q, 1] contains 1 and omega_Q = (-b + sqrt D)/2a.
  for (Int D : {Int(-15), Int(-20), Int(-23), Int(-60), Int(-63), Int(-3), Int(-4)}) {
    auto O = order_from_disc(D);
    for (const auto& r : reduced_forms(D)) {
      auto J = ideal_from_form(O, r);
      CHECK(is_proper(J));
      CHECK(J.contains(E(1, 0)));
      // sqrt D = 2 tau + b_O, so omega = (-b + b_O)/2a + tau/a.
      QuadElem w{Rat(O.b() - r.b(), 2 * r.a()), Rat(Int(1), r.a())};
      w.u.canonicalize();
      w.v.canonicalize();
      CHECK(J.contains(w));
      CHECK(norm(J) == Rat(Int(1), r.a()));
    }
  }
}

TEST_CASE("ideal multiplication examples") {
  auto O = order_from_disc(-20);
  OIdealLat p2(O, 1, 2, 2);
  CHECK(p2.contains(E(1, 1)));
  CHECK(p2.contains(E(2, 0)));
  CHECK(mul(p2, OIdealLat(O)) == p2);
  CHECK(mul(p2, p2) == scaled(OIdealLat(O), 2));
  CHECK(mul(scaled(OIdealLat(O), 3), scaled(OIdealLat(O), 5)) == scaled(OIdealLat(O), 15));
  CHECK(norm(p2) == 2);
  CHECK(conj(OIdealLat(O)) == OIdealLat(O));
  CHECK(norm(OIdealLat(O)) == 1);
  auto half = ideal_from_form(order_from_disc(-23), QuadForm(2, 1, 3));
  CHECK(norm(half) == Rat(1, 2));
  CHECK(mul(half, conj(half)) == scaled(OIdealLat(half.order()), Rat(1, 2)));
  CHECK_THROWS_AS(mul(p2, OIdealLat(order_from_disc(-15))), std::invalid_argument);
}

TEST_CASE("norm is multiplicative and I conj(I) = N(I) O") {
  std::mt19937_64 rng(5);
  const std::vector<Int> discs{-15, -20, -23, -24, -40, -56, -60, -63, -3, -4, -12, -27};
  for (int trial = 0; trial < 500; ++trial) {
    auto O = order_from_disc(discs[trial % discs.size()]);
    auto I = random_ideal(O, rng, 12);
    auto J = random_ideal(O, rng, 12);
    CHECK(norm(mul(I, J)) == norm(I) * norm(J));
    CHECK(mul(I, conj(I)) == scaled(OIdealLat(O), norm(I)));
    CHECK(mul(I, J) == mul(J, I));
    CHECK(is_proper(mul(I, J)));
    CHECK(mul(I, inverse(I)) == OIdealLat(O));
    auto [x, y] = I.basis();
    CHECK(OIdealLat::principal(O, x) == scaled(OIdealLat(O), x.u));
    CHECK(mul(I, J).contains(elem_mul(O, x, J.basis().second)));
  }
}

TEST_CASE("proper ideals are exactly the primitive forms") {
  for (Int D : {Int(-12), Int(-16), Int(-60), Int(-63), Int(-36), Int(-27)}) {
    auto O = order_from_disc(D);
    for (Int a = 1; a <= 20; ++a)
      for (Int b = -a + 1; b <= a; ++b) {
        if ((b * b - D) % (4 * a) != 0) continue;
        OIdealLat I(O, 1, a, b);
        CHECK(is_proper(I) == (gcd(gcd(a, b), I.c()) == 1));
      }
  }
}

TEST_CASE("prime_to") {
  auto O = order_from_disc(-20);
  CHECK(prime_to(OIdealLat(O), 6));
  CHECK_FALSE(prime_to(OIdealLat(O, 1, 2, 2), 2));
  CHECK(prime_to(scaled(OIdealLat(O), 3), 2));
  CHECK_FALSE(prime_to(scaled(OIdealLat(O), Rat(1, 3)), 3));
}

TEST_CASE("principal generators") {
  auto O = order_from_disc(-20);
  CHECK(principal_generators(OIdealLat(O)) == units(O));
  CHECK(units(O).size() == 2);
  CHECK(principal_generators(OIdealLat(O, 1, 2, 2)).empty());
  auto three = principal_generators(scaled(OIdealLat(O), 3));
  CHECK(std::set<std::string>{to_string(three[0]), to_string(three[1])} ==
        std::set<std::string>{to_string(E(3, 0)), to_string(E(-3, 0))});
  CHECK(units(order_from_disc(-4)).size() == 4);
  CHECK(units(order_from_disc(-3)).size() == 6);
  CHECK(units(order_from_disc(-12)).size() == 2);

  // Every generator has the right norm and generates the ideal.
  std::mt19937_64 rng(9);
  for (Int D : {Int(-3), Int(-4), Int(-15), Int(-23), Int(-60)}) {
    auto O2 = order_from_disc(D);
    for (const auto& x : box(4)) {
      auto I = OIdealLat::principal(O2, x);
      auto gens = principal_generators(I);
      CHECK(gens.size() == units(O2).size());
      CHECK(std::find(gens.begin(), gens.end(), x) != gens.end());
      for (const auto& g : gens) CHECK(OIdealLat::principal(O2, g) == I);
    }
  }
}

TEST_CASE("in_P1N examples") {
  auto O = order_from_disc(-20);
  CHECK(in_P1N(scaled(OIdealLat(O), 3), 2));
  CHECK_FALSE(in_P1N(OIdealLat::principal(O, E(1, 1)), 7));
  for (long n = 1; n <= 6; ++n) CHECK(in_P1N(OIdealLat(O), n));
  CHECK_THROWS_AS(in_P1N(OIdealLat(O, 1, 2, 2), 2), NotPrimeToModulus);
}

TEST_CASE("in_P1N matches the definition on a box") {
  for (Int D : {Int(-3), Int(-4), Int(-15), Int(-20), Int(-24), Int(-36), Int(-40)}) {
    auto O = order_from_disc(D);
    for (long n = 1; n <= 4; ++n) {
      P1NBox expect(O, n, 12);
      for (const auto& alpha : box(2)) {
        for (long m = 1; m <= 3; ++m) {
          auto I = OIdealLat::principal(O, QuadElem{alpha.u / m, alpha.v / m});
          if (!prime_to(I, n)) continue;
          CHECK(in_P1N(I, n) == expect.contains(I));
        }
      }
      // Non-principal ideals are never in P_{1,N}.
      for (const auto& I : primitive_ideals(O, 10))
        if (prime_to(I, n) && principal_generators(I).empty()) CHECK_FALSE(in_P1N(I, n));
    }
  }
}

TEST_CASE("class_equal is an equivalence compatible with multiplication") {
  std::mt19937_64 rng(13);
  const std::vector<Int> discs{-15, -20, -23, -56, -60, -3};
  for (int trial = 0; trial < 150; ++trial) {
    auto O = order_from_disc(discs[trial % discs.size()]);
    long n = 1 + static_cast<long>(rng() % 5);
    std::vector<OIdealLat> sample;
    while (sample.size() < 3) {
      auto I = random_ideal(O, rng, 8);
      if (prime_to(I, n)) sample.push_back(I);
    }
    const auto &I = sample[0], &J = sample[1], &L = sample[2];
    CHECK(class_equal(I, I, n));
    CHECK(class_equal(I, J, n) == class_equal(J, I, n));
    if (class_equal(I, J, n) && class_equal(J, L, n)) CHECK(class_equal(I, L, n));
    if (class_equal(I, J, n)) CHECK(class_equal(mul(I, L), mul(J, L), n));
    // Equal at level N implies equal at every divisor.
    for (Modulus d : divisors(n))
      if (class_equal(I, J, n)) CHECK(class_equal(I, J, d));
  }
  auto O = order_from_disc(-20);
  CHECK_FALSE(class_equal(OIdealLat(O, 1, 2, 2), OIdealLat(O), 1));
  CHECK(class_equal(scaled(OIdealLat(O), 3), scaled(OIdealLat(O), 5), 2));
}

TEST_CASE("residue unit counts") {
  CHECK(residue_unit_count(order_from_disc(-15), 2) == 1);
  CHECK(residue_unit_count(order_from_disc(-20), 3) == 4);
  CHECK(residue_unit_count(order_from_disc(-23), 1) == 1);
  // |(O/NO)^x| = N^2 prod (1 - 1/p)(1 - (D/p)/p)
  for (Int D : {Int(-15), Int(-20), Int(-23), Int(-24), Int(-60), Int(-3)}) {
    auto O = order_from_disc(D);
    for (Modulus n = 1; n <= 12; ++n) {
      Rat expect(static_cast<long>(n * n));
      for (Modulus p : prime_factors(n)) {
        expect *= Rat(p - 1, p) * Rat(p - kronecker(D, p), p);
      }
      CHECK(Rat(static_cast<long>(residue_unit_count(O, n))) == expect);
    }
  }
  CHECK(unit_image_size(order_from_disc(-20), 3) == 2);
  CHECK(unit_image_size(order_from_disc(-20), 2) == 1);
  CHECK(unit_image_size(order_from_disc(-3), 7) == 6);
}

TEST_CASE("ray class oracle") {
  auto O15 = order_from_disc(-15);
  CHECK(ray_class_oracle(O15, 1, 3).table.size() == 2);
  CHECK(ray_class_oracle(O15, 2, 5).table.size() == 2);
  CHECK(ray_class_oracle(order_from_disc(-20), 3, 5).table.size() == 4);

  for (Int D : {Int(-15), Int(-20), Int(-23), Int(-24), Int(-40), Int(-60), Int(-3), Int(-4)}) {
    auto O = order_from_disc(D);
    for (Modulus n = 1; n <= 4; ++n) {
      auto g = ray_class_oracle(O, n);
      CHECK(g.table.size() == ray_class_number(O, n));
      CHECK(g.table.axiom_violations().empty());
      CHECK(g.table.is_abelian());
      CHECK(g.reps.front() == OIdealLat(O));
      for (const auto& r : g.reps) CHECK(prime_to(r, n));
      for (std::size_t i = 0; i < g.reps.size(); ++i)
        for (std::size_t j = i + 1; j < g.reps.size(); ++j)
          CHECK_FALSE(class_equal(g.reps[i], g.reps[j], n));
    }
  }
}

TEST_CASE("ray class oracle reports a short bound") {
  // h(-56) = 4 with classes of norm 1, 2, 3, 3; norm <= 1 cannot reach them.
  auto O = order_from_disc(-56);
  CHECK_THROWS_AS(ray_class_oracle(O, 1, 1), NotClosed);
  // At D = -40, N = 2 no ideal of odd norm <= 4 lies in the class of (2, 0, 5).
  auto O40 = order_from_disc(-40);
  CHECK_THROWS_AS(ray_class_oracle(O40, 2, default_oracle_bound(O40, 2)), NotClosed);
  CHECK(ray_class_oracle(O40, 2).table.size() == ray_class_number(O40, 2));
}

TEST_CASE("contraction") {
  auto OK = order_from_disc(-15);
  auto O = order_from_disc(-60);
  CHECK(contract(OIdealLat(OK), O) == OIdealLat(O));
  CHECK(contract(scaled(OIdealLat(OK), 3), O) == scaled(OIdealLat(O), 3));
  // 17 splits in Q(sqrt -15); 7 is inert.
  CHECK(kronecker(-15, 17) == 1);
  CHECK(kronecker(-15, 7) == -1);
  for (const auto& P : primitive_ideals(OK, 17)) {
    if (P.a() != 17) continue;
    auto c = contract(P, O, 7);
    CHECK(norm(c) == 17);
    CHECK(is_proper(c));
    CHECK(prime_to(c, 14));
  }
  auto seven = contract(scaled(OIdealLat(OK), 7), O, 1);
  CHECK(seven == scaled(OIdealLat(O), 7));
  CHECK_THROWS_AS(contract(OIdealLat(OK, 1, 2, 1), O), NotPrimeToModulus);
}

TEST_CASE("contraction is multiplicative and matches the class groups") {
  for (Int D : {Int(-60), Int(-63), Int(-12), Int(-36), Int(-80), Int(-99)}) {
    auto O = order_from_disc(D);
    auto OK = order_from_disc(O.fundamental_disc());
    const Int ell = O.conductor();
    for (long n = 1; n <= 3; ++n) {
      std::vector<OIdealLat> ideals;
      for (const auto& A : primitive_ideals(OK, 30))
        if (prime_to(A, ell * n)) ideals.push_back(A);
      for (long m : {1L, 2L, 5L})
        if (gcd(Int(m), ell * n) == 1) ideals.push_back(scaled(OIdealLat(OK), m));
      for (const auto& A : ideals) {
        auto cA = contract(A, O, n);
        CHECK(is_proper(cA));
        CHECK(norm(cA) == norm(A));
        for (const auto& B : ideals) {
          auto cB = contract(B, O, n);
          CHECK(contract(mul(A, B), O, n) == mul(cA, cB));
          bool same_K = in_P1N_relative(mul(A, inverse(B)), n, ell * n);
          CHECK(same_K == class_equal(cA, cB, n));
        }
      }
    }
  }
}

TEST_CASE("sampled contraction report") {
  for (Int D : {Int(-60), Int(-63)})
    for (Modulus n = 1; n <= 6; ++n) {
      auto r = contraction_check(D, n, 20, 7 + n);
      CHECK(r.samples == 20);
      CHECK(r.ok());
    }
}
