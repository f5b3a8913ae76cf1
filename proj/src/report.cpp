#include "formclass/report.hpp"

#include <set>

#include "formclass/adelic.hpp"
#include "formclass/classlevel.hpp"
#include "formclass/induction.hpp"

namespace formclass {

Json int_json(const Int& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

Json form_json(const QuadForm& f) { return Json::array({int_json(f.a()), int_json(f.b()), int_json(f.c())}); }

Json matrix_json(const IntMatrix& m) {
  return Json::array({int_json(m.q), int_json(m.r), int_json(m.s), int_json(m.t)});
}

Json matrix_json(const ResidueMatrix& m) { return Json::array({m.q(), m.r(), m.s(), m.t()}); }

Json ideal_json(const OIdealLat& I) {
  return {{"scale", Json::array({int_json(I.scale().get_num()), int_json(I.scale().get_den())})},
          {"a", int_json(I.a())},
          {"b", int_json(I.b())},
          {"disc", int_json(I.order().disc())}};
}

namespace {

Json header(const Int& D, Modulus N) { return {{"disc", int_json(D)}, {"level", N}}; }

Json header(const Int& D, const CongruenceGroup& g) {
  Json j = header(D, g.level());
  j["group"] = g.label();
  return j;
}

Json forms_array(const std::vector<QuadForm>& forms) {
  Json out = Json::array();
  for (const QuadForm& f : forms) out.push_back(form_json(f));
  return out;
}

Json units_json(const std::vector<Modulus>& v) { return Json(v); }

}  // namespace

Report forms_report(const Int& D, Modulus N) {
  Report r{header(D, N)};
  const auto reduced = reduced_forms(D);
  r.body["reduced_forms"] = forms_array(reduced);
  r.body["class_number"] = reduced.size();
  Json residues = Json::array();
  for (const ResidueForm& f : residue_forms(D, N)) residues.push_back(Json::array({f.a, f.b, f.c}));
  r.body["residue_form_count"] = residues.size();
  r.body["residue_forms"] = std::move(residues);
  r.body["principal_form"] = form_json(principal_form(D));
  return r;
}

Report classgroup_report(const Int& D, const CongruenceGroup& g) {
  Report r{header(D, g)};
  const auto G = group_table(D, g.level());
  const bool level_group = g.image() == gamma1(g.level()).image();
  const LevelClassList classes = level_group ? G->classes : enumerate_classes(D, g);
  r.body["classes"] = forms_array(classes.reps);
  r.body["class_count"] = classes.reps.size();

  // The group structure on C_Gamma exists when Gamma induces one; it is the
  // quotient of the level-N table by the identity fiber.
  const InduceVerdict verdict = induces(g, D);
  r.body["induces"] = verdict.induces;
  if (!verdict.induces) {
    r.body["table"] = nullptr;
    r.body["invariant_factors"] = nullptr;
    r.body["identity"] = nullptr;
    return r;
  }
  std::vector<std::size_t> down(G->classes.reps.size());
  for (std::size_t i = 0; i < down.size(); ++i)
    down[i] = level_group ? i : class_index(classes, G->classes.reps[i], g);
  const std::size_t n = classes.reps.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n, n));
  for (std::size_t i = 0; i < down.size(); ++i)
    for (std::size_t j = 0; j < down.size(); ++j) {
      const std::size_t k = down[G->table.mul(i, j)];
      if (table[down[i]][down[j]] != n && table[down[i]][down[j]] != k) r.violation = true;
      table[down[i]][down[j]] = k;
    }
  std::vector<std::string> labels;
  for (const QuadForm& f : classes.reps) labels.push_back(to_string(f));
  const ClassGroupTable quotient(std::move(labels), table, down[G->table.identity()]);
  if (!quotient.axiom_violations().empty()) r.violation = true;
  Json triples = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) triples.push_back(Json::array({i, j, table[i][j]}));
  r.body["table"] = std::move(triples);
  r.body["identity"] = quotient.identity();
  r.body["invariant_factors"] = quotient.invariant_factors();
  return r;
}

Report acts_report(const Int& D, const CongruenceGroup& g) {
  Report r{header(D, g)};
  const ActsVerdict verdict = acts(g, D);
  const bool criterion = acts_criterion(g, D);
  r.body["acts"] = verdict.acts;
  r.body["criterion"] = criterion;
  r.body["M"] = M_value(D, g.level());
  r.violation = verdict.acts != criterion;
  if (verdict.counterexample) {
    const auto& c = *verdict.counterexample;
    const bool ok = verify_counterexample(g, c.Q, c.gamma, c.new_a);
    r.body["counterexample"] = {
        {"form", form_json(c.Q)}, {"matrix", matrix_json(c.gamma)}, {"new_a", int_json(c.new_a)}, {"verified", ok}};
    r.violation = r.violation || !ok;
  } else {
    r.body["counterexample"] = nullptr;
  }
  if (!criterion) {
    const CaseWitness w = case_analysis_witness(g, D);
    const bool ok = verify_counterexample(g, w.Q, w.gamma, w.new_a);
    r.body["case_witness"] = {{"case", to_string(w.kind)},  {"prime", w.prime},
                              {"form", form_json(w.Q)},     {"matrix", matrix_json(w.gamma)},
                              {"new_a", int_json(w.new_a)}, {"verified", ok}};
    r.violation = r.violation || !ok;
  } else {
    r.body["case_witness"] = nullptr;
  }
  return r;
}

Report induces_report(const Int& D, const CongruenceGroup& g) {
  Report r{header(D, g)};
  const InduceVerdict v = induces(g, D);
  const auto G = group_table(D, g.level());
  std::vector<QuadForm> H;
  for (std::size_t i : v.H) H.push_back(G->classes.reps[i]);
  r.body["induces"] = v.induces;
  r.body["H"] = forms_array(H);
  r.body["level_classes"] = G->classes.reps.size();
  r.body["gamma_classes"] = v.gamma_classes;
  r.body["obstruction"] = v.obstruction.empty() ? Json(nullptr) : Json(v.obstruction);
  r.body["special_disc"] = v.special_disc;
  return r;
}

AdelicChecks parse_adelic_checks(const std::string& token) {
  if (token.empty() || token == "none") return AdelicChecks::none;
  if (token == "lemma51") return AdelicChecks::set_identity;
  if (token == "thm52") return AdelicChecks::canonical_model;
  if (token == "all") return AdelicChecks::all;
  throw std::invalid_argument("unknown check '" + token + "' (expected lemma51, thm52 or all)");
}

Report adelic_report(const Int& D, const CongruenceGroup& g, AdelicChecks checks) {
  Report r{header(D, g)};
  const AdelicShadow shadow = build_W(D, g);
  const SL2PartReport part = sl2_part(shadow, g);
  const DeterminantReport det = determinant_condition(shadow);
  const bool diagonal = diagonal_condition(shadow);
  r.body["W_order"] = shadow.Wbar.order();
  r.body["Gamma_order"] = shadow.Gammabar.order();
  r.body["avals"] = units_json(shadow.Avals.elements);
  r.body["det_W"] = units_json(det.determinants);
  r.body["sl2_part_order"] = part.part.order();
  r.body["sl2_part_equals_gamma_pm"] = part.equals_gamma_pm;
  r.body["determinant_condition"] = det.holds;
  r.body["diagonal_condition"] = diagonal;
  // These hold by construction for every shadow.
  r.violation = det.determinants != shadow.Avals.elements || !diagonal;

  if (checks == AdelicChecks::set_identity || checks == AdelicChecks::all) {
    const SetComparison sets = compare_W_sets(D, g);
    const BottomRowCheck rows = bottom_row_check(D, g);
    const auto& h = sets.hypotheses;
    r.body["lemma51"] = {
        {"hypotheses",
         {{"acts", h.acts}, {"induces", h.induces}, {"generic_disc", h.generic_disc}, {"minus_identity", h.has_minus_identity}}},
        {"applicable", h.all()},
        {"closure_size", sets.closure_size},
        {"literal_size", sets.literal_size},
        {"sets_equal", sets.equal},
        {"bottom_rows_hold", rows.holds},
        {"violation", rows.violation ? matrix_json(*rows.violation) : Json(nullptr)}};
    if (h.all() && (!sets.equal || !rows.holds)) r.violation = true;
  }
  if (checks == AdelicChecks::canonical_model || checks == AdelicChecks::all) {
    const EquivalenceReport e = canonical_model_check(D, g);
    r.body["thm52"] = {{"acts", e.acts},
                       {"generic_disc", e.generic_disc},
                       {"applicable", e.applicable()},
                       {"induces", e.induces},
                       {"sl2_part", e.sl2_part_ok},
                       {"determinant", e.determinant_ok},
                       {"diagonal", e.diagonal_ok},
                       {"conditions", e.right()},
                       {"consistent", e.consistent()}};
    if (!e.consistent()) r.violation = true;
  }
  return r;
}

std::string reproduce_command(const std::string& op, const Int& D, Modulus N, const std::string& group) {
  std::string cmd = "formclass " + op + " --disc " + D.get_str() + " --level " + std::to_string(N);
  if (!group.empty()) cmd += " --group '" + group + "'";
  return cmd;
}

}  // namespace formclass
