#include "formclass/adelic.hpp"

#include <algorithm>
#include <set>

#include "formclass/induction.hpp"

namespace formclass {

namespace {

std::vector<ResidueMatrix> image_generators(const CongruenceGroup& g) {
  std::vector<ResidueMatrix> out;
  for (const IntMatrix& m : g.generators()) out.emplace_back(m, g.level());
  return out;
}

std::vector<ResidueMatrix> signed_sl2_elements(const AdelicShadow& shadow) {
  std::vector<ResidueMatrix> out;
  for (const ResidueMatrix& u : sl2_elements(shadow.N))
    if (shadow.Wbar.contains(u) || shadow.Wbar.contains(-u)) out.push_back(u);
  return out;
}

}  // namespace

AdelicShadow build_W(const Int& D, const CongruenceGroup& g) {
  const Modulus n = g.level();
  UnitSubgroup avals = a_subgroup(D, n).subgroup;
  std::vector<ResidueMatrix> gens = image_generators(g);
  for (Modulus a : avals.elements)
    if (a != mod(1, n)) gens.push_back(ResidueMatrix::diagonal(n, 1, a));
  return {n, FiniteMatrixGroup::generate(n, std::move(gens)), std::move(avals), g.image()};
}

std::vector<MatrixKey> W_tilde_set(const Int& D, const CongruenceGroup& g) {
  const Modulus n = g.level();
  std::set<MatrixKey> keys;
  const auto elements = g.image().elements();
  for (Modulus a : a_subgroup(D, n).subgroup.elements) {
    const ResidueMatrix d = ResidueMatrix::diagonal(n, 1, a);
    for (const ResidueMatrix& x : elements) keys.insert((d * x).key());
  }
  return {keys.begin(), keys.end()};
}

SetComparisonHypotheses set_comparison_hypotheses(const Int& D, const CongruenceGroup& g) {
  return {acts(g, D).acts, induces(g, D).induces, D != -3 && D != -4, g.contains_minus_identity()};
}

SetComparison compare_W_sets(const Int& D, const CongruenceGroup& g) {
  const AdelicShadow shadow = build_W(D, g);
  const auto literal = W_tilde_set(D, g);
  return {set_comparison_hypotheses(D, g), shadow.Wbar.order(), literal.size(),
          shadow.Wbar.keys() == literal};
}

BottomRowCheck bottom_row_check(const Int& D, const CongruenceGroup& g) {
  const Modulus n = g.level();
  BottomRowCheck out{set_comparison_hypotheses(D, g), true, std::nullopt};
  std::set<std::pair<Modulus, Modulus>> rows;
  const auto elements = g.image().elements();
  for (Modulus a : a_subgroup(D, n).subgroup.elements)
    for (const ResidueMatrix& x : elements) rows.emplace(mod(a * x.s(), n), x.t());
  for (const ResidueMatrix& alpha : sl2_elements(n)) {
    if (!rows.contains({alpha.s(), alpha.t()})) continue;
    if (!g.contains(alpha)) {
      out.holds = false;
      out.violation = alpha;
      break;
    }
  }
  return out;
}

SL2PartReport sl2_part(const AdelicShadow& shadow, const CongruenceGroup& g) {
  FiniteMatrixGroup group =
      FiniteMatrixGroup::from_elements(shadow.N, signed_sl2_elements(shadow), image_generators(g));
  const bool equal = group == with_minus_identity(g).image();
  return {std::move(group), equal};
}

CongruenceGroup sl2_part_group(const AdelicShadow& shadow, const std::string& label) {
  std::vector<ResidueMatrix> seed{ResidueMatrix(IntMatrix::translation(1), shadow.N)};
  return CongruenceGroup::from_image(
      FiniteMatrixGroup::from_elements(shadow.N, signed_sl2_elements(shadow), seed), label);
}

DeterminantReport determinant_condition(const AdelicShadow& shadow) {
  DeterminantReport out{shadow.Wbar.determinants(), shadow.Avals.elements, false};
  out.holds = std::includes(out.determinants.begin(), out.determinants.end(), out.avals.begin(),
                            out.avals.end());
  return out;
}

bool diagonal_condition(const AdelicShadow& shadow) {
  for (Modulus u : shadow.Wbar.determinants()) {
    const ResidueMatrix d = ResidueMatrix::diagonal(shadow.N, 1, u);
    if (!shadow.Wbar.contains(d) && !shadow.Wbar.contains(-d)) return false;
  }
  return true;
}

EquivalenceReport canonical_model_check(const Int& D, const CongruenceGroup& g) {
  const AdelicShadow shadow = build_W(D, g);
  EquivalenceReport out;
  out.acts = acts(g, D).acts;
  out.generic_disc = D != -3 && D != -4;
  out.induces = induces(g, D).induces;
  out.sl2_part_ok = sl2_part(shadow, g).equals_gamma_pm;
  out.determinant_ok = determinant_condition(shadow).holds;
  out.diagonal_ok = diagonal_condition(shadow);
  return out;
}

}  // namespace formclass
