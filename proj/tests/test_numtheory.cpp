#include <algorithm>
#include <random>

#include "doctest.h"
#include "formclass/numtheory.hpp"

using namespace formclass;

namespace {

Modulus power_mod(Modulus base, Modulus e, Modulus m) {
  Modulus r = 1 % m;
  base = mod(base, m);
  while (e > 0) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

int euler_symbol(Modulus a, Modulus p) {
  Modulus v = power_mod(a, (p - 1) / 2, p);
  if (v == 0) return 0;
  return v == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("kronecker symbol values") {
  CHECK(kronecker(-15, 2) == 1);
  CHECK(kronecker(-20, 2) == 0);
  CHECK(kronecker(-20, 11) == -1);
  CHECK(kronecker(-3, 2) == -1);
  CHECK(kronecker(-7, 2) == 1);
  CHECK_THROWS_AS(kronecker(-15, 1), NotPrime);
  CHECK_THROWS_AS(kronecker(-15, 9), NotPrime);
}

TEST_CASE("kronecker agrees with Euler's criterion and is multiplicative") {
  for (Modulus p = 3; p < 100; p += 2) {
    if (!is_prime(p)) continue;
    for (Modulus D = -60; D <= 60; ++D) {
      CHECK(kronecker(D, p) == euler_symbol(D, p));
    }
    for (Modulus d1 = -20; d1 <= 20; ++d1)
      for (Modulus d2 = -20; d2 <= 20; ++d2) {
        if (mod(d1 * d2, p) == 0) continue;
        CHECK(kronecker(d1 * d2, p) == kronecker(d1, p) * kronecker(d2, p));
      }
  }
}

TEST_CASE("sqrt_mod examples") {
  CHECK(sqrt_mod(1, 3) == 1);
  CHECK_FALSE(sqrt_mod(2, 5).has_value());
  // 13 mod 28: 13 is a non-residue mod 7, so no root exists.
  CHECK_FALSE(sqrt_mod(-15, 28).has_value());
  CHECK(sqrt_mod(-15, 8) == 1);
}

TEST_CASE("sqrt_mod matches exhaustive scan") {
  for (Modulus m = 1; m <= 50; ++m)
    for (Modulus a = -60; a <= 60; ++a) {
      std::optional<Modulus> expect;
      for (Modulus x = 0; x < m; ++x)
        if (mod(x * x - a, m) == 0) {
          expect = x;
          break;
        }
      CHECK(sqrt_mod(a, m) == expect);
    }
}

TEST_CASE("hnf2 examples") {
  std::vector<Vec2> id{{1, 0}, {0, 1}};
  auto l = hnf2(id);
  CHECK(l.first() == Vec2{1, 0});
  CHECK(l.second() == Vec2{0, 1});

  std::vector<Vec2> parity{{2, 0}, {1, 1}, {0, 2}};
  l = hnf2(parity);
  CHECK(l.first() == Vec2{1, 1});
  CHECK(l.second() == Vec2{0, 2});

  std::vector<Vec2> g{{4, 0}, {0, 4}, {2, 2}};
  l = hnf2(g);
  CHECK(l.first() == Vec2{2, 2});
  CHECK(l.second() == Vec2{0, 4});

  std::vector<Vec2> line{{1, 2}, {2, 4}};
  CHECK_THROWS_AS(hnf2(line), DegenerateLattice);
}

TEST_CASE("hnf2 is canonical under reordering and recombination") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> entry(-12, 12);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Vec2> gens;
    for (int i = 0; i < 3; ++i) gens.push_back({entry(rng), entry(rng)});
    Int det = gens[0].x * gens[1].y - gens[0].y * gens[1].x;
    Int det2 = gens[0].x * gens[2].y - gens[0].y * gens[2].x;
    Int det3 = gens[1].x * gens[2].y - gens[1].y * gens[2].x;
    if (det == 0 && det2 == 0 && det3 == 0) continue;
    Lattice2 base = hnf2(gens);
    std::vector<Vec2> basis{base.first(), base.second()};
    CHECK(hnf2(basis) == base);

    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(hnf2(shuffled) == base);

    // Add an integer multiple of one generator to another.
    auto mixed = gens;
    int k = coef(rng);
    mixed[1] = {mixed[1].x + k * mixed[0].x, mixed[1].y + k * mixed[0].y};
    mixed[2] = {mixed[2].x - mixed[1].x, mixed[2].y - mixed[1].y};
    CHECK(hnf2(mixed) == base);

    for (const Vec2& v : gens) CHECK(base.contains(v));
    CHECK(base.first().x > 0);
    CHECK(base.second().y > 0);
    CHECK(base.first().y >= 0);
    CHECK(base.first().y < base.second().y);
  }
}

TEST_CASE("small helpers") {
  CHECK(divisors(12) == std::vector<Modulus>{1, 2, 3, 4, 6, 12});
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(1) == 1);
  CHECK(is_square_free(30));
  CHECK_FALSE(is_square_free(12));
  CHECK(prime_factors(Modulus{60}) == std::vector<Modulus>{2, 3, 5});
  CHECK(inverse_mod(3, 7) == 5);
  CHECK_FALSE(inverse_mod(2, 4).has_value());
  Residue r(5, 7);
  CHECK((r * r.inverse()).value() == 1);
  CHECK((-r).value() == 2);
  auto e = ext_gcd(240, 46);
  CHECK(e.g == 2);
  CHECK(240 * e.x + 46 * e.y == 2);
}
