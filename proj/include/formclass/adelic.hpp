#pragma once

#include <optional>
#include <string>
#include <vector>

#include "formclass/classlevel.hpp"
#include "formclass/congruence.hpp"

namespace formclass {

/// The reduction mod N of the open subgroup W of GL2 over the finite adeles
/// generated by diag(1, a) gamma for a in the leading-coefficient subgroup and
/// gamma in Gamma. W contains every matrix = I mod N (take a = 1, gamma = I),
/// so W is the full preimage of Wbar and everything below is decided mod N.
struct AdelicShadow {
  Modulus N;
  FiniteMatrixGroup Wbar;
  UnitSubgroup Avals;
  FiniteMatrixGroup Gammabar;
};

AdelicShadow build_W(const Int& D, const CongruenceGroup& g);

/// The literal products diag(1, a) gamma, sorted by key, without closure.
std::vector<MatrixKey> W_tilde_set(const Int& D, const CongruenceGroup& g);

/// acts, induces, D not in {-3, -4} and -I in Gamma.
struct SetComparisonHypotheses {
  bool acts;
  bool induces;
  bool generic_disc;
  bool has_minus_identity;
  bool all() const { return acts && induces && generic_disc && has_minus_identity; }
};

SetComparisonHypotheses set_comparison_hypotheses(const Int& D, const CongruenceGroup& g);

struct SetComparison {
  SetComparisonHypotheses hypotheses;
  std::size_t closure_size;
  std::size_t literal_size;
  bool equal;
};

/// Wbar against the literal product set.
SetComparison compare_W_sets(const Int& D, const CongruenceGroup& g);

struct BottomRowCheck {
  SetComparisonHypotheses hypotheses;
  bool holds;
  std::optional<ResidueMatrix> violation;  ///< alpha in SL2(Z/N) outside Gamma
};

/// Every alpha in SL2(Z/NZ) whose bottom row is (a s, t) for some a in Avals
/// and some [[q, r], [s, t]] in Gammabar lies in Gammabar.
BottomRowCheck bottom_row_check(const Int& D, const CongruenceGroup& g);

struct SL2PartReport {
  FiniteMatrixGroup part;  ///< {u in SL2(Z/N) : u or -u in Wbar}
  bool equals_gamma_pm;    ///< part = <Gammabar, -I>
};

SL2PartReport sl2_part(const AdelicShadow& shadow, const CongruenceGroup& g);

/// The SL2(Z) part as a congruence group.
CongruenceGroup sl2_part_group(const AdelicShadow& shadow, const std::string& label);

struct DeterminantReport {
  std::vector<Modulus> determinants;  ///< det(Wbar), sorted
  std::vector<Modulus> avals;
  bool holds;  ///< det(Wbar) contains Avals
};

/// The field fixed by det(Wbar) lies in the field fixed by Avals.
DeterminantReport determinant_condition(const AdelicShadow& shadow);

/// diag(1, u) or -diag(1, u) lies in Wbar for every u in det(Wbar).
bool diagonal_condition(const AdelicShadow& shadow);

struct EquivalenceReport {
  bool acts;
  bool generic_disc;
  bool applicable() const { return acts && generic_disc; }
  bool induces;
  bool sl2_part_ok;
  bool determinant_ok;
  bool diagonal_ok;
  bool right() const { return sl2_part_ok && determinant_ok && diagonal_ok; }
  /// Both sides agree, or the hypotheses fail.
  bool consistent() const { return !applicable() || induces == right(); }
};

/// Gamma induces a form class group iff the canonical S = Q^x W satisfies the
/// three conditions; asserted only when Gamma acts and D is not -3 or -4.
EquivalenceReport canonical_model_check(const Int& D, const CongruenceGroup& g);

}  // namespace formclass
