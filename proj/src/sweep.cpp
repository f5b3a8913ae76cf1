#include "formclass/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "formclass/adelic.hpp"
#include "formclass/cache.hpp"
#include "formclass/classlevel.hpp"
#include "formclass/induction.hpp"

namespace formclass {

// ---------------------------------------------------------------------------
// Configuration

SweepConfig SweepConfig::defaults() {
  SweepConfig c;
  for (long d : {-15, -20, -23, -24, -40, -52, -56, -60, -63}) c.discriminants.emplace_back(d);
  c.levels = {1, 2, 3, 4, 5, 6};
  c.groups = {"gamma1", "gamma0", "gammaG", "sl2", "gens:4:[[1,0,2,1]]", "gens:6:[[1,0,3,1]]"};
  return c;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);)
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

long long parse_number(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw ConfigError("bad number '" + text + "' for " + key);
  return v;
}

}  // namespace

SweepConfig SweepConfig::parse(std::istream& in) {
  SweepConfig c = defaults();
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "discriminants") {
      c.discriminants.clear();
      for (const auto& d : split(value, ',')) {
        Int D(static_cast<long>(parse_number(d, key)));
        try {
          check_discriminant(D);
        } catch (const InvalidDiscriminant& e) {
          throw ConfigError(e.what());
        }
        c.discriminants.push_back(D);
      }
    } else if (key == "levels") {
      c.levels.clear();
      for (const auto& item : split(value, ',')) {
        const auto dash = item.find('-', 1);
        const long long lo = parse_number(trim(item.substr(0, dash)), key);
        const long long hi = dash == std::string::npos ? lo : parse_number(trim(item.substr(dash + 1)), key);
        if (lo < 1 || hi < lo || hi > kMaxEnumerationLevel) throw ConfigError("bad level range '" + item + "'");
        for (long long n = lo; n <= hi; ++n) c.levels.push_back(static_cast<Modulus>(n));
      }
    } else if (key == "groups") {
      std::istringstream words(value);
      c.groups.clear();
      for (std::string w; words >> w;) c.groups.push_back(w);
    } else if (key == "oracle_bound") {
      if (value == "auto") {
        c.oracle_bound.reset();
      } else {
        const long long b = parse_number(value, key);
        if (b < 1) throw ConfigError("oracle_bound must be positive");
        c.oracle_bound = Int(static_cast<long>(b));
      }
    } else if (key == "samples") {
      c.samples = static_cast<int>(parse_number(value, key));
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_number(value, key));
    } else if (key == "jobs") {
      const long long j = parse_number(value, key);
      if (j < 1) throw ConfigError("jobs must be positive");
      c.jobs = static_cast<unsigned>(j);
    } else if (key == "output") {
      c.output = value;
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  std::sort(c.levels.begin(), c.levels.end());
  c.levels.erase(std::unique(c.levels.begin(), c.levels.end()), c.levels.end());
  return c;
}

SweepConfig SweepConfig::load(const std::string& name_or_path) {
  if (name_or_path == "default") return defaults();
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("cannot read config file " + name_or_path);
  return parse(in);
}

std::string SweepConfig::canonical() const {
  std::ostringstream out;
  out << "discriminants=";
  for (const Int& d : discriminants) out << d.get_str() << ',';
  out << "\nlevels=";
  for (Modulus n : levels) out << n << ',';
  out << "\ngroups=";
  for (const auto& g : groups) out << g << ' ';
  out << "\noracle_bound=" << (oracle_bound ? oracle_bound->get_str() : "auto");
  out << "\nsamples=" << samples << "\nseed=" << seed << '\n';
  return out.str();
}

std::string SweepConfig::hash() const { return sha256_hex(canonical()); }

std::vector<std::string> expand_groups(const std::vector<std::string>& templates, Modulus N) {
  std::vector<std::string> out;
  const std::string n = std::to_string(N);
  for (const std::string& t : templates) {
    if (t == "gamma1" || t == "sl2") {
      out.push_back(t + ":" + n);
    } else if (t == "gamma0") {
      for (Modulus d : divisors(N)) out.push_back("gamma0:" + std::to_string(d) + "@" + n);
    } else if (t == "gammaG") {
      for (const auto& G : unit_subgroups(N)) {
        std::string spec = "gammaG:" + n + ":";
        for (std::size_t i = 0; i < G.size(); ++i) spec += (i ? "," : "") + std::to_string(G[i]);
        out.push_back(spec);
      }
    } else {
      if (parse_group(t).level() == N) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::fail: return "fail";
    case CaseStatus::not_applicable: return "not-applicable";
    case CaseStatus::oracle_bound_insufficient: return "oracle-bound-insufficient";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Checks

namespace {

CaseStatus pass_if(bool ok) { return ok ? CaseStatus::pass : CaseStatus::fail; }

using Emit = std::function<void(std::string check, CaseStatus status, Json details)>;

IntMatrix random_word(std::mt19937_64& rng, int length) {
  static const std::vector<IntMatrix> steps{IntMatrix::translation(1), IntMatrix::translation(-1),
                                            IntMatrix::inversion(), {1, 0, 1, 1}, {1, 0, -1, 1}};
  std::uniform_int_distribution<std::size_t> pick(0, steps.size() - 1);
  IntMatrix g = IntMatrix::identity();
  for (int i = 0; i < length; ++i) g = g * steps[pick(rng)];
  return g;
}

void level_checks(const Int& D, Modulus N, const SweepConfig& config, const Emit& emit) {
  const std::uint64_t seed = config.seed * 1000003 + static_cast<std::uint64_t>(N);

  try {
    const RhoReport rho = rho_bijection_check(D, N, 3, seed, config.oracle_bound);
    emit("rho-bijection", pass_if(rho.ok()),
         {{"classes", rho.classes},
          {"oracle_order", rho.oracle_order},
          {"formula", int_json(rho.formula)},
          {"injective", rho.injective},
          {"surjective", rho.surjective},
          {"well_defined", rho.well_defined},
          {"failures", rho.failures}});
  } catch (const NotClosed& e) {
    emit("rho-bijection", CaseStatus::oracle_bound_insufficient, {{"message", e.what()}});
  }

  const LevelOneReport one = level_one_check(D, N);
  emit("level-one-square", pass_if(one.ok()),
       {{"forms_match_ideals", one.forms_match_ideals},
        {"surjective", one.surjective},
        {"multiplicative", one.multiplicative},
        {"failures", one.failures}});

  const ASubgroupReport a = a_subgroup(D, N);
  emit("leading-coefficient-subgroup", pass_if(a.ok()),
       {{"subgroup", a.subgroup.elements},
        {"index", a.subgroup.index},
        {"closed", a.closed},
        {"dK_divides_N", a.dK_divides_N},
        {"expected", a.expected}});

  const MinusOneReport m = minus_one_check(D, N);
  emit("minus-one", m.minus_one_is_square ? pass_if(m.holds()) : CaseStatus::not_applicable,
       {{"minus_one_is_square", m.minus_one_is_square}, {"index", m.index}});

  std::mt19937_64 rng(seed);
  const auto reduced = reduced_forms(D);
  bool identity_ok = true;
  for (int k = 0; k < config.samples; ++k) {
    const QuadForm Q = act(reduced[rng() % reduced.size()], random_word(rng, 6));
    const IntMatrix gamma = random_word(rng, 6);
    identity_ok = identity_ok && coeff_x2(Q, gamma) == act(Q, gamma).a();
  }
  emit("leading-coefficient-identity", pass_if(identity_ok), {{"samples", config.samples}});

  const ImagQuadOrder O(D);
  if (O.is_maximal()) {
    emit("contraction", CaseStatus::not_applicable, {{"conductor", 1}});
  } else {
    const ContractionReport c = contraction_check(D, N, config.samples, seed);
    emit("contraction", pass_if(c.ok()),
         {{"conductor", int_json(O.conductor())},
          {"samples", c.samples},
          {"multiplicative", c.multiplicative},
          {"bijective", c.bijective}});
  }
}

void group_checks(const Int& D, const CongruenceGroup& g, const Emit& emit) {
  const Modulus N = g.level();

  // Shift witnesses for every square-free M | N that Gamma escapes.
  Json shifts = Json::array();
  bool shifts_ok = true;
  for (Modulus M : divisors(N)) {
    if (M < 2 || !is_square_free(M) || contained_in_gamma0(g, M)) continue;
    const ShiftWitness w = unipotent_shift_witness(g, M);
    const Int P(static_cast<long>(w.prime));
    const bool ok = M % w.prime == 0 && w.matrix.q % P == 0 && w.matrix.s % P != 0 && member(g, w.matrix);
    shifts_ok = shifts_ok && ok;
    shifts.push_back({{"M", M}, {"prime", w.prime}, {"matrix", matrix_json(w.matrix)}, {"verified", ok}});
  }
  emit("unipotent-shift", shifts.empty() ? CaseStatus::not_applicable : pass_if(shifts_ok),
       {{"witnesses", shifts}});

  const Report acts = acts_report(D, g);
  emit("acts-criterion", pass_if(!acts.violation), acts.body);

  const InduceVerdict v = induces(g, D);
  const auto G = group_table(D, N);
  bool induce_ok = v.induces == v.obstruction.empty();
  std::string expectation = "none";
  if (g.image() == gamma1(N).image()) {
    expectation = "trivial identity fiber";
    induce_ok = induce_ok && v.induces && v.H.size() == 1;
  } else if (g.image() == sl2(N).image()) {
    expectation = "identity fiber is the level-one kernel";
    std::vector<std::size_t> kernel;
    for (std::size_t i = 0; i < G->classes.reps.size(); ++i)
      if (reduce(G->classes.reps[i]).form == principal_form(D)) kernel.push_back(i);
    induce_ok = induce_ok && v.induces && v.H == kernel;
  }
  emit("induces", pass_if(induce_ok),
       {{"induces", v.induces},
        {"H_size", v.H.size()},
        {"gamma_classes", v.gamma_classes},
        {"level_classes", G->classes.reps.size()},
        {"expectation", expectation},
        {"obstruction", v.obstruction.empty() ? Json(nullptr) : Json(v.obstruction)},
        {"special_disc", v.special_disc}});

  const AdelicShadow shadow = build_W(D, g);
  const DeterminantReport det = determinant_condition(shadow);
  const SL2PartReport part = sl2_part(shadow, g);
  const bool diagonal = diagonal_condition(shadow);
  const bool part_induces = induces(sl2_part_group(shadow, "sl2-part:" + g.label()), D).induces;
  const bool construction_ok = det.determinants == shadow.Avals.elements && diagonal &&
                               (!v.induces || part.equals_gamma_pm) && part_induces;
  emit("W-construction", pass_if(construction_ok),
       {{"W_order", shadow.Wbar.order()},
        {"det_W", det.determinants},
        {"avals", shadow.Avals.elements},
        {"diagonal_condition", diagonal},
        {"sl2_part_order", part.part.order()},
        {"sl2_part_equals_gamma_pm", part.equals_gamma_pm},
        {"sl2_part_induces", part_induces}});

  const SetComparison sets = compare_W_sets(D, g);
  const auto& h = sets.hypotheses;
  Json set_details = {{"acts", h.acts},
                      {"induces", h.induces},
                      {"generic_disc", h.generic_disc},
                      {"minus_identity", h.has_minus_identity},
                      {"closure_size", sets.closure_size},
                      {"literal_size", sets.literal_size},
                      {"sets_equal", sets.equal}};
  if (h.all()) {
    const BottomRowCheck rows = bottom_row_check(D, g);
    set_details["bottom_rows_hold"] = rows.holds;
    set_details["violation"] = rows.violation ? matrix_json(*rows.violation) : Json(nullptr);
    emit("set-identity", pass_if(sets.equal && rows.holds), set_details);
  } else {
    emit("set-identity", CaseStatus::not_applicable, set_details);
  }

  const EquivalenceReport e = canonical_model_check(D, g);
  emit("canonical-model", e.applicable() ? pass_if(e.consistent()) : CaseStatus::not_applicable,
       {{"acts", e.acts},
        {"generic_disc", e.generic_disc},
        {"induces", e.induces},
        {"sl2_part", e.sl2_part_ok},
        {"determinant", e.determinant_ok},
        {"diagonal", e.diagonal_ok},
        {"conditions", e.right()}});
}

struct Task {
  Int D;
  Modulus N;
  std::string group;  ///< empty for level checks
};

std::vector<Task> make_tasks(const SweepConfig& config, bool with_level_tasks) {
  std::vector<Task> tasks;
  for (const Int& D : config.discriminants)
    for (Modulus N : config.levels) {
      if (with_level_tasks) tasks.push_back({D, N, ""});
      for (const auto& spec : expand_groups(config.groups, N)) tasks.push_back({D, N, spec});
    }
  return tasks;
}

template <typename Result, typename Fn>
std::vector<Result> run_parallel(const std::vector<Task>& tasks, unsigned jobs, Fn fn) {
  std::vector<Result> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = fn(tasks[i]);
  };
  std::vector<std::thread> threads;
  for (unsigned j = 1; j < std::max(1u, jobs); ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  return results;
}

}  // namespace

VerificationReport verify_all(const SweepConfig& config) {
  const auto tasks = make_tasks(config, true);
  auto per_task = run_parallel<std::vector<CaseRecord>>(tasks, config.jobs, [&](const Task& task) {
    std::vector<CaseRecord> records;
    auto start = std::chrono::steady_clock::now();
    const std::string op = task.group.empty() ? "classgroup" : "adelic";
    Emit emit = [&](std::string check, CaseStatus status, Json details) {
      const auto now = std::chrono::steady_clock::now();
      records.push_back({task.D, task.N, task.group, std::move(check), status, std::move(details),
                         reproduce_command(op, task.D, task.N, task.group.empty() ? "gamma1:" + std::to_string(task.N) : task.group),
                         std::chrono::duration<double>(now - start).count()});
      start = now;
    };
    try {
      if (task.group.empty()) {
        level_checks(task.D, task.N, config, emit);
      } else {
        group_checks(task.D, parse_group(task.group), emit);
      }
    } catch (const NotClosed& e) {
      emit("oracle", CaseStatus::oracle_bound_insufficient, {{"message", e.what()}});
    } catch (const std::exception& e) {
      emit("internal", CaseStatus::fail, {{"message", e.what()}});
    }
    return records;
  });

  VerificationReport report{config.hash(), {}};
  for (auto& records : per_task)
    for (auto& r : records) report.cases.push_back(std::move(r));
  std::stable_sort(report.cases.begin(), report.cases.end(), [](const CaseRecord& a, const CaseRecord& b) {
    if (a.D != b.D) return a.D < b.D;
    if (a.N != b.N) return a.N < b.N;
    if (a.group != b.group) return a.group < b.group;
    return a.check < b.check;
  });
  return report;
}

std::size_t VerificationReport::count(CaseStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [s](const CaseRecord& c) { return c.status == s; }));
}

Json VerificationReport::to_json() const {
  Json list = Json::array();
  for (const CaseRecord& c : cases) {
    Json entry = {{"disc", int_json(c.D)},
                  {"level", c.N},
                  {"group", c.group.empty() ? Json(nullptr) : Json(c.group)},
                  {"check", c.check},
                  {"status", to_string(c.status)},
                  {"details", c.details}};
    if (c.status == CaseStatus::fail || c.status == CaseStatus::oracle_bound_insufficient) {
      entry["reproduce"] = c.reproduce;
    }
    list.push_back(std::move(entry));
  }
  return {{"tool_version", kToolVersion},
          {"schema_version", kSchemaVersion},
          {"config_hash", config_hash},
          {"summary",
           {{"cases", cases.size()},
            {"pass", count(CaseStatus::pass)},
            {"fail", count(CaseStatus::fail)},
            {"not_applicable", count(CaseStatus::not_applicable)},
            {"oracle_bound_insufficient", count(CaseStatus::oracle_bound_insufficient)}}},
          {"cases", std::move(list)}};
}

std::string VerificationReport::markdown() const {
  std::ostringstream out;
  out << "# formclass verification report\n\n";
  out << "tool version " << kToolVersion << ", config " << config_hash.substr(0, 12) << "\n\n";
  out << "| status | count |\n|---|---|\n";
  for (CaseStatus s : {CaseStatus::pass, CaseStatus::fail, CaseStatus::not_applicable,
                       CaseStatus::oracle_bound_insufficient})
    out << "| " << to_string(s) << " | " << count(s) << " |\n";

  struct Totals {
    std::size_t pass = 0, fail = 0, na = 0, other = 0;
    double seconds = 0;
  };
  std::map<std::string, Totals> by_check;
  for (const CaseRecord& c : cases) {
    Totals& t = by_check[c.check];
    t.seconds += c.seconds;
    switch (c.status) {
      case CaseStatus::pass: ++t.pass; break;
      case CaseStatus::fail: ++t.fail; break;
      case CaseStatus::not_applicable: ++t.na; break;
      default: ++t.other; break;
    }
  }
  out << "\n| check | pass | fail | n/a | bound | seconds |\n|---|---|---|---|---|---|\n";
  for (const auto& [check, t] : by_check) {
    out << "| " << check << " | " << t.pass << " | " << t.fail << " | " << t.na << " | " << t.other
        << " | " << std::fixed << std::setprecision(2) << t.seconds << " |\n";
  }
  bool header = false;
  for (const CaseRecord& c : cases) {
    if (c.status != CaseStatus::fail && c.status != CaseStatus::oracle_bound_insufficient) continue;
    if (!header) {
      out << "\n## Failures\n\n";
      header = true;
    }
    out << "- " << c.check << " at D = " << c.D.get_str() << ", N = " << c.N
        << (c.group.empty() ? "" : ", " + c.group) << ": `" << c.reproduce << "`\n";
  }
  return out.str();
}

int VerificationReport::exit_code() const {
  if (count(CaseStatus::fail) > 0) return 2;
  if (count(CaseStatus::oracle_bound_insufficient) > 0) return 3;
  return 0;
}

Json sweep(const SweepConfig& config) {
  const auto tasks = make_tasks(config, false);
  auto rows = run_parallel<Json>(tasks, config.jobs, [](const Task& task) {
    const CongruenceGroup g = parse_group(task.group);
    const ActsVerdict a = acts(g, task.D);
    const InduceVerdict v = induces(g, task.D);
    return Json{{"disc", int_json(task.D)},
                {"level", task.N},
                {"group", task.group},
                {"acts", a.acts},
                {"criterion", acts_criterion(g, task.D)},
                {"induces", v.induces},
                {"H_size", v.H.size()},
                {"gamma_classes", v.gamma_classes},
                {"obstruction", v.obstruction.empty() ? Json(nullptr) : Json(v.obstruction)}};
  });
  std::size_t not_inducing = 0;
  for (const Json& r : rows) not_inducing += r["induces"].get<bool>() ? 0 : 1;
  return {{"tool_version", kToolVersion},
          {"schema_version", kSchemaVersion},
          {"config_hash", config.hash()},
          {"cases", rows},
          {"summary", {{"cases", rows.size()}, {"not_inducing", not_inducing}}}};
}

}  // namespace formclass
