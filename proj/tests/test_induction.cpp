#include <map>
#include <set>

#include "doctest.h"
#include "formclass/induction.hpp"

using namespace formclass;

namespace {

std::vector<CongruenceGroup> family(Modulus N) {
  std::vector<CongruenceGroup> out{gamma1(N), sl2(N)};
  for (Modulus d : divisors(N)) out.push_back(gamma0_image(d, N));
  for (const auto& G : unit_subgroups(N)) out.push_back(gammaG(G, N));
  if (N == 4) out.push_back(parse_group("gens:4:[[1,0,2,1]]"));
  if (N == 6) out.push_back(parse_group("gens:6:[[1,0,3,1]]"));
  if (N == 5) out.push_back(parse_group("gens:5:[[0,-1,1,0]]"));
  return out;
}

// Every element of the image against every residue triple.
bool acts_by_full_image(const CongruenceGroup& g, const Int& D) {
  const Modulus n = g.level();
  const auto triples = residue_forms(D, n);
  for (const ResidueMatrix& x : g.image().elements())
    for (const ResidueForm& f : triples)
      if (gcd(act_mod(f, x).a, n) != 1) return false;
  return true;
}

std::set<std::size_t> closure(const ClassGroupTable& t, std::vector<std::size_t> gens) {
  std::set<std::size_t> out{t.identity()};
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t x : std::vector<std::size_t>(out.begin(), out.end()))
      for (std::size_t g : gens)
        if (out.insert(t.mul(x, g)).second) grew = true;
  }
  return out;
}

// Searches subgroups P of the level-one kernel (generated by at most three
// elements) for one making [Q]_Gamma -> Q-class mod P a well-defined bijection.
bool induces_by_search(const CongruenceGroup& g, const Int& D) {
  const auto G = group_table(D, g.level());
  const auto& t = G->table;
  const std::size_t n = t.size();
  std::vector<std::size_t> kernel;
  for (std::size_t i = 0; i < n; ++i)
    if (!principal_generators(G->ideals[i]).empty()) kernel.push_back(i);
  // Gamma-classes by brute pairwise comparison.
  std::vector<std::size_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) {
    cls[i] = i;
    for (std::size_t j = 0; j < i; ++j)
      if (gamma_equivalent(G->classes.reps[j], G->classes.reps[i], g)) {
        cls[i] = cls[j];
        break;
      }
  }
  std::set<std::set<std::size_t>> tried;
  const std::size_t k = kernel.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b)
      for (std::size_t c = b; c < k; ++c) {
        auto P = closure(t, {kernel[a], kernel[b], kernel[c]});
        if (!tried.insert(P).second) continue;
        // coset id of each class: least element of x P
        auto coset = [&](std::size_t x) {
          std::size_t m = n;
          for (std::size_t p : P) m = std::min(m, t.mul(x, p));
          return m;
        };
        std::map<std::size_t, std::size_t> gamma_to_coset;
        std::map<std::size_t, std::size_t> coset_to_gamma;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
          auto [it1, new1] = gamma_to_coset.try_emplace(cls[i], coset(i));
          auto [it2, new2] = coset_to_gamma.try_emplace(coset(i), cls[i]);
          ok = it1->second == coset(i) && it2->second == cls[i];
        }
        if (ok) return true;
      }
  return false;
}

}  // namespace

TEST_CASE("M value") {
  CHECK(M_value(-15, 2) == 2);
  CHECK(M_value(-20, 11) == 1);
  CHECK(M_value(-23, 1) == 1);
  CHECK(M_value(-20, 3) == 3);
  CHECK(M_value(-15, 30) == 30);
  CHECK(M_value(-23, 6) == 6);  // -23 = 1 mod 8 and (-23/3) = 1
  CHECK(M_value(-20, 6) == 6);
  CHECK(M_value(-7, 15) == 1);
}

TEST_CASE("acts examples") {
  auto v = acts(sl2(2), -15);
  CHECK_FALSE(v.acts);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->Q == QuadForm{1, 1, 4});
  CHECK(v.counterexample->gamma == IntMatrix::inversion());
  CHECK(v.counterexample->new_a == 4);
  CHECK(acts(gamma0_image(2, 2), -15).acts);
  CHECK(acts(sl2(1), -23).acts);
  CHECK(acts_criterion(gamma1(2), -15));
  CHECK_FALSE(acts_criterion(sl2(2), -15));
  CHECK(acts_criterion(gamma1(11), -20));
  CHECK(acts_criterion(sl2(11), -20));
}

TEST_CASE("acts agrees with the criterion and the full-image scan") {
  for (Int D : {Int(-3), Int(-4), Int(-7), Int(-15), Int(-20), Int(-23), Int(-24), Int(-40), Int(-63)})
    for (Modulus N = 1; N <= 6; ++N)
      for (const CongruenceGroup& g : family(N)) {
        CAPTURE(D);
        CAPTURE(g.label());
        const auto v = acts(g, D);
        CHECK(v.acts == acts_by_full_image(g, D));
        CHECK(v.acts == acts_criterion(g, D));
        if (v.acts) {
          CHECK_THROWS_AS(case_analysis_witness(g, D), NoWitness);
          continue;
        }
        REQUIRE(v.counterexample);
        CHECK(verify_counterexample(g, v.counterexample->Q, v.counterexample->gamma,
                                    v.counterexample->new_a));
        auto w = case_analysis_witness(g, D);
        CHECK(verify_counterexample(g, w.Q, w.gamma, w.new_a));
        CHECK(w.new_a % w.prime == 0);
        CHECK(M_value(D, N) % w.prime == 0);
        CHECK(w.Q.discriminant() == D);
      }
}

TEST_CASE("every witness case occurs") {
  std::set<WitnessCase> seen;
  for (Int D : {Int(-15), Int(-20), Int(-23), Int(-24), Int(-35), Int(-36), Int(-39), Int(-12)})
    for (Modulus N : {2, 3, 5, 6, 7})
      if (!acts_criterion(sl2(N), D)) seen.insert(case_analysis_witness(sl2(N), D).kind);
  CHECK(seen.size() == 6);
  CHECK(to_string(WitnessCase::odd_split_prime) == "odd-split-prime");
}

TEST_CASE("induces examples") {
  auto one = induces(gamma1(3), -20);
  CHECK(one.induces);
  CHECK(one.H.size() == 1);
  auto full = induces(sl2(3), -20);
  CHECK(full.induces);
  // H is the kernel to level one.
  const auto G = group_table(-20, 3);
  std::vector<std::size_t> kernel;
  for (std::size_t i = 0; i < G->classes.reps.size(); ++i)
    if (reduce(G->classes.reps[i]).form == principal_form(-20)) kernel.push_back(i);
  CHECK(full.H == kernel);
  CHECK(full.gamma_classes == 2);
  CHECK(induces(gamma0_image(2, 2), -15).induces);
  CHECK(induces(sl2(4), -4).special_disc);
}

TEST_CASE("induces agrees with a search over subgroups") {
  for (Int D : {Int(-4), Int(-15), Int(-20), Int(-23), Int(-24), Int(-56)})
    for (Modulus N = 1; N <= 6; ++N)
      for (const CongruenceGroup& g : family(N)) {
        CAPTURE(D);
        CAPTURE(g.label());
        auto v = induces(g, D);
        CHECK(v.induces == induces_by_search(g, D));
        CHECK(v.induces == v.obstruction.empty());
        if (g.label() == gamma1(N).label()) CHECK(v.H.size() == 1);
        if (g.label() == sl2(N).label()) CHECK(v.induces);
      }
}
