#include "formclass/induction.hpp"

#include <algorithm>
#include <set>

namespace formclass {

Modulus M_value(const Int& D, Modulus N) {
  check_discriminant(D);
  Modulus m = 1;
  for (Modulus p : prime_factors(N))
    if (kronecker(D, Int(static_cast<long>(p))) != -1) m *= p;
  return m;
}

ActsVerdict acts(const CongruenceGroup& g, const Int& D) {
  const Modulus n = g.level();
  const auto sources = residue_form_sources(D, n);
  for (const auto& [triple, source] : sources) {
    for (const IntMatrix& gamma : g.generators()) {
      const ResidueForm moved = act_mod(triple, ResidueMatrix(gamma, n));
      if (gcd(moved.a, n) == 1) continue;
      QuadForm Q = act(source.reduced, lift(source.g));
      if (reduce_mod(Q, n) != triple) throw std::logic_error("residue source does not lift");
      return {false, ActsCounterexample{Q, gamma, coeff_x2(Q, gamma)}};
    }
  }
  return {true, std::nullopt};
}

bool acts_criterion(const CongruenceGroup& g, const Int& D) {
  return contained_in_gamma0(g, M_value(D, g.level()));
}

std::string to_string(WitnessCase c) {
  switch (c) {
    case WitnessCase::odd_prime_dividing_odd_disc: return "odd-prime-dividing-odd-disc";
    case WitnessCase::odd_prime_dividing_even_disc: return "odd-prime-dividing-even-disc";
    case WitnessCase::two_with_disc_0_mod_8: return "two-with-disc-0-mod-8";
    case WitnessCase::two_with_disc_4_mod_8: return "two-with-disc-4-mod-8";
    case WitnessCase::odd_split_prime: return "odd-split-prime";
    case WitnessCase::two_with_disc_1_mod_8: return "two-with-disc-1-mod-8";
  }
  return "unknown";
}

CaseWitness case_analysis_witness(const CongruenceGroup& g, const Int& D) {
  check_discriminant(D);
  const Modulus M = M_value(D, g.level());
  if (contained_in_gamma0(g, M)) {
    throw NoWitness("group " + g.label() + " lies in Gamma0(" + std::to_string(M) + ")");
  }
  const ShiftWitness shift = unipotent_shift_witness(g, M);
  const Modulus p = shift.prime;
  const Int P(static_cast<long>(p));
  const Modulus d8 = mod(D, 8);

  auto witness = [&](WitnessCase kind, const Int& b) {
    QuadForm Q(1, b, (b * b - D) / 4);
    Int new_a = coeff_x2(Q, shift.matrix);
    if (new_a % P != 0) {
      throw std::logic_error("case witness " + to_string(Q) + " fails at p = " + std::to_string(p));
    }
    return CaseWitness{kind, p, std::move(Q), shift.matrix, std::move(new_a)};
  };

  if (D % P == 0) {
    if (p != 2) {
      return mod(D, 4) == 1 ? witness(WitnessCase::odd_prime_dividing_odd_disc, P)
                            : witness(WitnessCase::odd_prime_dividing_even_disc, 2 * P);
    }
    return d8 == 0 ? witness(WitnessCase::two_with_disc_0_mod_8, 0)
                   : witness(WitnessCase::two_with_disc_4_mod_8, 2);
  }
  if (p != 2) {
    const auto b0 = sqrt_mod(D, 4 * p);
    if (!b0) throw std::logic_error("no square root of D mod 4p at a split prime");
    return witness(WitnessCase::odd_split_prime, Int(static_cast<long>(*b0)));
  }
  if (d8 != 1) throw std::logic_error("p = 2 divides M but D is not 0 or 1 mod 8");
  return witness(WitnessCase::two_with_disc_1_mod_8, 1);
}

bool verify_counterexample(const CongruenceGroup& g, const QuadForm& Q, const IntMatrix& gamma,
                           const Int& new_a) {
  const Modulus n = g.level();
  return gcd(mod(Q.a(), n), n) == 1 && member(g, gamma) && coeff_x2(Q, gamma) == new_a &&
         act(Q, gamma).a() == new_a && gcd(mod(new_a, n), n) > 1;
}

InduceVerdict induces(const CongruenceGroup& g, const Int& D) {
  InduceVerdict out;
  out.special_disc = D == -3 || D == -4;
  const auto G = group_table(D, g.level());
  const ClassGroupTable& table = G->table;
  const auto& reps = G->classes.reps;

  std::vector<std::size_t> heads;
  for (const QuadForm& f : reps) {
    std::size_t k = 0;
    while (k < heads.size() && !gamma_equivalent(reps[heads[k]], f, g)) ++k;
    if (k == heads.size()) heads.push_back(out.fiber_of.size());
    out.fiber_of.push_back(k);
  }
  out.gamma_classes = heads.size();
  std::vector<std::vector<std::size_t>> fibers(heads.size());
  for (std::size_t i = 0; i < reps.size(); ++i) fibers[out.fiber_of[i]].push_back(i);

  out.H = fibers[out.fiber_of[table.identity()]];
  const std::set<std::size_t> H(out.H.begin(), out.H.end());

  for (std::size_t x : out.H)
    for (std::size_t y : out.H)
      if (!H.contains(table.mul(x, y))) {
        out.obstruction = "identity fiber is not a subgroup: " + table.label(x) + " * " +
                          table.label(y) + " = " + table.label(table.mul(x, y));
        return out;
      }
  for (const auto& fiber : fibers) {
    std::set<std::size_t> coset;
    for (std::size_t h : out.H) coset.insert(table.mul(fiber.front(), h));
    if (coset != std::set<std::size_t>(fiber.begin(), fiber.end())) {
      out.obstruction = "fiber of " + table.label(fiber.front()) + " (" + std::to_string(fiber.size()) +
                        " classes) is not its coset of the identity fiber";
      return out;
    }
  }
  for (std::size_t h : out.H)
    if (principal_generators(G->ideals[h]).empty()) {
      out.obstruction = "class " + table.label(h) + " in the identity fiber is not principal at level one";
      return out;
    }
  out.induces = true;
  return out;
}

}  // namespace formclass
