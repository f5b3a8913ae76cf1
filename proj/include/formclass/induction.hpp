#pragma once

#include <optional>
#include <string>
#include <vector>

#include "formclass/classlevel.hpp"
#include "formclass/congruence.hpp"
#include "formclass/forms.hpp"

namespace formclass {

/// Product of the primes p | N with (D / p) != -1.
Modulus M_value(const Int& D, Modulus N);

/// Q in Q(D, N) and gamma in Gamma with gcd(coeff_x2(Q, gamma), N) > 1.
struct ActsCounterexample {
  QuadForm Q;
  IntMatrix gamma;
  Int new_a;
};

struct ActsVerdict {
  bool acts;
  std::optional<ActsCounterexample> counterexample;
};

/// Decides whether Gamma preserves Q(D, N) by pushing every residue triple of
/// Q(D, N) through every generator of Gamma's image. The counterexample is the
/// first failure, lifted to integers.
ActsVerdict acts(const CongruenceGroup& g, const Int& D);

/// Gamma <= Gamma0(M_value(D, N)).
bool acts_criterion(const CongruenceGroup& g, const Int& D);

enum class WitnessCase {
  odd_prime_dividing_odd_disc,   ///< Q = x^2 + p xy + (p^2 - D)/4 y^2
  odd_prime_dividing_even_disc,  ///< Q = x^2 + 2p xy + (4p^2 - D)/4 y^2
  two_with_disc_0_mod_8,         ///< Q = x^2 - D/4 y^2
  two_with_disc_4_mod_8,         ///< Q = x^2 + 2 xy + (4 - D)/4 y^2
  odd_split_prime,               ///< Q = x^2 + b0 xy + (b0^2 - D)/4 y^2, b0^2 = D mod 4p
  two_with_disc_1_mod_8,         ///< the principal form
};

std::string to_string(WitnessCase c);

/// A counterexample to Gamma acting, built from a shift witness gamma (p | q,
/// p not dividing s) and a form with leading coefficient 1 whose
/// coefficients make Q(q, s) divisible by p.
struct CaseWitness {
  WitnessCase kind;
  Modulus prime;
  QuadForm Q;
  IntMatrix gamma;
  Int new_a;
};

/// Throws NoWitness when Gamma <= Gamma0(M_value(D, N)).
CaseWitness case_analysis_witness(const CongruenceGroup& g, const Int& D);

/// Checks Q in Q(D, N), gamma in Gamma, new_a = coeff_x2 and gcd(new_a, N) > 1.
bool verify_counterexample(const CongruenceGroup& g, const QuadForm& Q, const IntMatrix& gamma,
                           const Int& new_a);

struct InduceVerdict {
  bool induces = false;
  /// Level-N class indices (into group_table(D, N)) of the identity fiber.
  std::vector<std::size_t> H;
  /// Gamma-class of each level-N class, numbered by first appearance.
  std::vector<std::size_t> fiber_of;
  std::size_t gamma_classes = 0;
  /// Empty when induces; otherwise a description of the first failure.
  std::string obstruction;
  /// D = -3 or -4, outside the hypotheses of the adelic comparison.
  bool special_disc = false;
};

/// Fibers of C_{Gamma1(N)}(D, N) -> C_Gamma(D, N). Gamma induces a form class
/// group iff the identity fiber H is a subgroup, every fiber is a coset of H,
/// and H maps to principal ideals at level one.
InduceVerdict induces(const CongruenceGroup& g, const Int& D);

}  // namespace formclass
