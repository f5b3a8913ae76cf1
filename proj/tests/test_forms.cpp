#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "doctest.h"
#include "formclass/congruence.hpp"
#include "formclass/forms.hpp"

using namespace formclass;

namespace {

IntMatrix random_sl2(std::mt19937_64& rng, int steps) {
  std::uniform_int_distribution<int> k(-3, 3);
  IntMatrix m = IntMatrix::identity();
  for (int i = 0; i < steps; ++i) {
    m = m * IntMatrix::translation(k(rng));
    if (rng() & 1) m = m * IntMatrix::inversion();
  }
  return m;
}

std::vector<IntMatrix> small_sl2(int bound) {
  std::vector<IntMatrix> out;
  for (int q = -bound; q <= bound; ++q)
    for (int r = -bound; r <= bound; ++r)
      for (int s = -bound; s <= bound; ++s)
        for (int t = -bound; t <= bound; ++t)
          if (q * t - r * s == 1) out.push_back({q, r, s, t});
  return out;
}

// Orbit closure of the reduced forms mod N under the generators T and S.
std::set<ResidueForm> residue_orbit_oracle(const Int& D, Modulus n) {
  const ResidueMatrix T(IntMatrix::translation(1), n);
  const ResidueMatrix S(IntMatrix::inversion(), n);
  std::set<ResidueForm> seen;
  std::deque<ResidueForm> todo;
  for (const QuadForm& r : reduced_forms(D)) {
    auto f = reduce_mod(r, n);
    if (seen.insert(f).second) todo.push_back(f);
  }
  while (!todo.empty()) {
    auto f = todo.front();
    todo.pop_front();
    for (const auto& g : {T, S}) {
      auto h = act_mod(f, g);
      if (seen.insert(h).second) todo.push_back(h);
    }
  }
  std::set<ResidueForm> out;
  for (const auto& f : seen)
    if (gcd(f.a, n) == 1) out.insert(f);
  return out;
}

}  // namespace

TEST_CASE("discriminant and principal form") {
  CHECK(discriminant(QuadForm(1, 1, 4)) == -15);
  CHECK(discriminant(QuadForm(1, 0, 5)) == -20);
  CHECK(discriminant(QuadForm(2, 1, 3)) == -23);
  CHECK(principal_form(-15) == QuadForm(1, 1, 4));
  CHECK(principal_form(-20) == QuadForm(1, 0, 5));
  CHECK(principal_form(-4) == QuadForm(1, 0, 1));
  CHECK_THROWS_AS(principal_form(-5), InvalidDiscriminant);
  CHECK_THROWS_AS(principal_form(8), InvalidDiscriminant);
  CHECK_THROWS_AS(QuadForm(2, 2, 2), InvalidForm);
  CHECK_THROWS_AS(QuadForm(-1, 1, 4), InvalidForm);
  CHECK_THROWS_AS(QuadForm(1, 3, 1), InvalidForm);
}

TEST_CASE("omega") {
  auto w = omega(QuadForm(1, 1, 4));
  CHECK(w.r == Rat(-1, 2));
  CHECK(w.s == Rat(1, 2));
  CHECK(w.D == -15);
  w = omega(QuadForm(1, 0, 5));
  CHECK(w.r == 0);
  CHECK(w.s == Rat(1, 2));
  CHECK(w.D == -20);
  w = omega(QuadForm(2, 1, 3));
  CHECK(w.r == Rat(-1, 4));
  CHECK(w.s == Rat(1, 4));
}

TEST_CASE("act examples") {
  CHECK(act(QuadForm(1, 1, 4), IntMatrix::translation(1)) == QuadForm(1, 3, 6));
  CHECK(act(QuadForm(1, 0, 5), IntMatrix::identity()) == QuadForm(1, 0, 5));
  CHECK(act(QuadForm(1, 0, 5), IntMatrix::inversion()) == QuadForm(5, 0, 1));
  CHECK_THROWS_AS(act(QuadForm(1, 0, 5), IntMatrix{2, 0, 0, 1}), std::invalid_argument);
  CHECK(coeff_x2(QuadForm(1, 1, 4), IntMatrix::inversion()) == 4);
  CHECK(coeff_x2(QuadForm(1, 0, 5), IntMatrix{1, 0, 2, 1}) == 21);
}

TEST_CASE("act is a right action preserving the discriminant") {
  std::mt19937_64 rng(7);
  const std::vector<Int> discs{-3, -4, -15, -20, -23, -56, -63, -231};
  for (int trial = 0; trial < 1000; ++trial) {
    const Int& D = discs[trial % discs.size()];
    auto forms = reduced_forms(D);
    QuadForm f = act(forms[rng() % forms.size()], random_sl2(rng, 3));
    IntMatrix g = random_sl2(rng, 3);
    IntMatrix h = random_sl2(rng, 3);
    CHECK(act(act(f, g), h) == act(f, g * h));
    CHECK(act(f, g).discriminant() == D);
    CHECK(coeff_x2(f, g) == act(f, g).a());
  }
}

TEST_CASE("reduce examples") {
  auto r = reduce(QuadForm(1, 3, 6));
  CHECK(r.form == QuadForm(1, 1, 4));
  CHECK(r.witness == IntMatrix{1, -1, 0, 1});
  r = reduce(QuadForm(1, 1, 4));
  CHECK(r.form == QuadForm(1, 1, 4));
  CHECK(r.witness == IntMatrix::identity());
  r = reduce(QuadForm(5, 0, 1));
  CHECK(r.form == QuadForm(1, 0, 5));
  CHECK(act(QuadForm(5, 0, 1), r.witness) == r.form);
}

TEST_CASE("reduce agrees with brute-force equivalence") {
  const auto mats = small_sl2(5);
  for (Int D : {Int(-15), Int(-20), Int(-23), Int(-56), Int(-4), Int(-3)}) {
    auto reps = reduced_forms(D);
    for (const auto& r : reps) CHECK(is_reduced(r));
    std::vector<QuadForm> sample;
    std::mt19937_64 rng(static_cast<unsigned>(Int(-D).get_si()));
    for (const auto& r : reps)
      for (int i = 0; i < 4; ++i) sample.push_back(act(r, random_sl2(rng, 2)));
    for (const auto& f : sample) {
      auto red = reduce(f);
      CHECK(is_reduced(red.form));
      CHECK(act(f, red.witness) == red.form);
      CHECK(std::find(reps.begin(), reps.end(), red.form) != reps.end());
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = 0; j < reps.size(); ++j) {
        bool found = false;
        for (const auto& g : mats)
          if (act(reps[i], g) == reps[j]) found = true;
        CHECK(found == (i == j));
      }
  }
}

TEST_CASE("reduced form counts are class numbers") {
  CHECK(reduced_forms(-15).size() == 2);
  CHECK(reduced_forms(-20).size() == 2);
  CHECK(reduced_forms(-23).size() == 3);
  CHECK(reduced_forms(-56).size() == 4);
  CHECK(reduced_forms(-3).size() == 1);
  CHECK(reduced_forms(-4).size() == 1);
  CHECK(reduced_forms(-12).size() == 1);
  CHECK(reduced_forms(-63).size() == 4);
}

TEST_CASE("automorphs match exhaustive scan") {
  const auto mats = small_sl2(1);
  for (Int D : {Int(-3), Int(-4), Int(-15), Int(-20), Int(-23), Int(-12), Int(-16)}) {
    for (const auto& r : reduced_forms(D)) {
      auto aut = automorphs(r);
      CHECK(aut.front() == IntMatrix::identity());
      std::set<IntMatrix> scan;
      for (const auto& g : mats)
        if (act(r, g) == r) scan.insert(g);
      CHECK(std::set<IntMatrix>(aut.begin(), aut.end()) == scan);
      std::size_t expected = D == -3 ? 6 : D == -4 ? 4 : 2;
      CHECK(aut.size() == expected);
      for (const auto& g : aut)
        for (const auto& h : aut) CHECK(std::find(aut.begin(), aut.end(), g * h) != aut.end());
    }
  }
  CHECK(automorphs(QuadForm(1, 1, 4)).size() == 2);
}

TEST_CASE("represent matches rectangle scan") {
  using P = std::pair<Int, Int>;
  CHECK(represent(QuadForm(1, 0, 1), 2) == std::vector<P>{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
  CHECK(represent(QuadForm(1, 0, 5), 2).empty());
  CHECK(represent(QuadForm(1, 0, 5), 5) == std::vector<P>{{0, -1}, {0, 1}});
  CHECK_THROWS(represent(QuadForm(1, 0, 5), 0));
  for (Int D : {Int(-3), Int(-15), Int(-20), Int(-23), Int(-56)}) {
    for (const auto& r : reduced_forms(D)) {
      for (long m = 1; m <= 40; ++m) {
        std::vector<P> scan;
        for (long x = -15; x <= 15; ++x)
          for (long y = -15; y <= 15; ++y)
            if (r(x, y) == m) scan.emplace_back(x, y);
        CHECK(represent(r, m) == scan);
      }
    }
  }
}

TEST_CASE("residue_forms examples") {
  CHECK(residue_forms(-15, 2) == std::vector<ResidueForm>{{1, 1, 0}});
  CHECK(residue_forms(-15, 1) == std::vector<ResidueForm>{{0, 0, 0}});
  CHECK(residue_forms(-20, 2) == std::vector<ResidueForm>{{1, 0, 0}, {1, 0, 1}});
}

TEST_CASE("residue_forms equals orbit closure oracle") {
  for (Int D : {Int(-15), Int(-20), Int(-23), Int(-24), Int(-40), Int(-3), Int(-4)}) {
    for (Modulus n = 1; n <= 8; ++n) {
      auto got = residue_forms(D, n);
      auto expect = residue_orbit_oracle(D, n);
      CHECK(std::set<ResidueForm>(got.begin(), got.end()) == expect);
      for (const auto& [f, src] : residue_form_sources(D, n)) {
        CHECK(reduce_mod(act(src.reduced, lift(src.g)), n) == f);
      }
    }
  }
}
