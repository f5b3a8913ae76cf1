#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "formclass/congruence.hpp"
#include "formclass/forms.hpp"
#include "formclass/group_table.hpp"
#include "formclass/orders.hpp"

namespace formclass {

/// Representatives of Q(D, N) modulo Gamma-equivalence, lexicographically
/// sorted, each the least candidate of its class.
struct LevelClassList {
  Int D;
  Modulus N;
  std::string group;
  std::vector<QuadForm> reps;
};

/// Candidates are act(R, x^-1) for R reduced and x over coset_reps(gamma1(N));
/// the inverses run over left cosets x^-1 Gamma1(N), which is what reaches
/// every Gamma1(N)-class under a right action.
LevelClassList enumerate_classes(const Int& D, const CongruenceGroup& g);

/// Some gamma in Gamma with act(Q, gamma) = Q', or nothing.
std::optional<IntMatrix> gamma_equivalent(const QuadForm& Q, const QuadForm& Q2,
                                          const CongruenceGroup& g);

/// Index of the rep equivalent to Q; throws std::logic_error if none is.
std::size_t class_index(const LevelClassList& classes, const QuadForm& Q, const CongruenceGroup& g);

/// C_{Gamma1(N)}(D, N) with the group law carried over from C(O, N).
struct LevelClassGroup {
  LevelClassList classes;
  std::vector<OIdealLat> ideals;  ///< ideal_from_form of each rep
  ClassGroupTable table;

  /// Index of the class whose ideal is class_equal to I at level N.
  std::size_t locate(const OIdealLat& I) const;
};

/// Cached per (D, N); throws std::logic_error when a product matches no rep.
std::shared_ptr<const LevelClassGroup> group_table(const Int& D, Modulus N);

/// The reduced form of each rep.
std::vector<QuadForm> surject_level1(const LevelClassList& classes);

struct LevelOneReport {
  bool forms_match_ideals = true;  ///< reduce(rep) and the level-1 ideal class agree
  bool surjective = true;
  bool multiplicative = true;
  std::vector<std::string> failures;
  bool ok() const { return forms_match_ideals && surjective && multiplicative; }
};

/// The square C_{Gamma1(N)} -> C(D) on forms versus C(O, N) -> C(O) on ideals.
LevelOneReport level_one_check(const Int& D, Modulus N);

struct ASubgroupReport {
  UnitSubgroup subgroup;  ///< leading coefficients of Q(D, N) mod N
  bool closed;
  bool dK_divides_N;
  /// Full group when dK does not divide N, else the kernel of a -> (dK / a).
  std::vector<Modulus> expected;
  bool matches_expected;
  bool ok() const {
    return closed && matches_expected && (subgroup.index == 1 || subgroup.index == 2) &&
           (subgroup.index == 2) == dK_divides_N;
  }
};

ASubgroupReport a_subgroup(const Int& D, Modulus N);

struct MinusOneReport {
  bool minus_one_is_square;
  Modulus index;
  bool holds() const { return !minus_one_is_square || index == 1; }
};

MinusOneReport minus_one_check(const Int& D, Modulus N);

struct RhoReport {
  std::size_t classes = 0;
  std::size_t oracle_order = 0;
  Int formula;
  bool injective = true;
  bool surjective = true;
  bool well_defined = true;
  std::vector<std::string> failures;
  bool ok() const {
    return injective && surjective && well_defined && classes == oracle_order && Int(classes) == formula;
  }
};

/// Compares reps against the ideal-side oracle and pushes `samples` random
/// Gamma1(N)-translates of each rep through rho. Without a bound the oracle
/// grows its own; with one it may throw NotClosed.
RhoReport rho_bijection_check(const Int& D, Modulus N, int samples, std::uint64_t seed,
                              const std::optional<Int>& oracle_bound = std::nullopt);

}  // namespace formclass
