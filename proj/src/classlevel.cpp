#include "formclass/classlevel.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <set>

namespace formclass {

namespace {

// Shift b into (-a, a] with a translation, which lies in every Gamma1(N).
QuadForm normalize_b(const QuadForm& f) {
  const Int two_a = 2 * f.a();
  Int k;
  // b + 2ak in (-a, a]  <=>  k = ceil((-a - b + 1) / 2a)
  Int num = -f.a() - f.b() + 1;
  mpz_cdiv_q(k.get_mpz_t(), num.get_mpz_t(), two_a.get_mpz_t());
  return act(f, IntMatrix::translation(k));
}

}  // namespace

std::optional<IntMatrix> gamma_equivalent(const QuadForm& Q, const QuadForm& Q2,
                                          const CongruenceGroup& g) {
  if (Q.discriminant() != Q2.discriminant()) return std::nullopt;
  const Reduction r1 = reduce(Q), r2 = reduce(Q2);
  if (r1.form != r2.form) return std::nullopt;
  const IntMatrix back = r2.witness.inverse();
  for (const IntMatrix& sigma : automorphs(r1.form)) {
    IntMatrix gamma = r1.witness * sigma * back;
    if (member(g, gamma)) return gamma;
  }
  return std::nullopt;
}

LevelClassList enumerate_classes(const Int& D, const CongruenceGroup& g) {
  check_discriminant(D);
  const Modulus n = g.level();
  std::vector<QuadForm> candidates;
  const auto cosets = coset_reps(gamma1(n));
  for (const QuadForm& R : reduced_forms(D)) {
    for (const IntMatrix& x : cosets) {
      QuadForm f = act(R, x.inverse());
      if (gcd(mod(f.a(), n), n) != 1) continue;
      candidates.push_back(normalize_b(f));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  LevelClassList out{D, n, g.label(), {}};
  // Reps found so far, grouped by their reduced form.
  std::map<QuadForm, std::vector<std::size_t>> by_reduced;
  for (const QuadForm& f : candidates) {
    auto& bucket = by_reduced[reduce(f).form];
    bool seen = false;
    for (std::size_t i : bucket) {
      if (gamma_equivalent(out.reps[i], f, g)) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    bucket.push_back(out.reps.size());
    out.reps.push_back(f);
  }
  return out;
}

std::size_t class_index(const LevelClassList& classes, const QuadForm& Q, const CongruenceGroup& g) {
  const QuadForm target = reduce(Q).form;
  for (std::size_t i = 0; i < classes.reps.size(); ++i) {
    if (reduce(classes.reps[i]).form != target) continue;
    if (gamma_equivalent(classes.reps[i], Q, g)) return i;
  }
  throw std::logic_error("form " + to_string(Q) + " matches no class of " + classes.group);
}

std::size_t LevelClassGroup::locate(const OIdealLat& I) const {
  const QuadForm level1 = reduce(form_of_ideal(I)).form;
  const Int N(static_cast<long>(classes.N));
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    if (reduce(classes.reps[i]).form != level1) continue;
    if (class_equal(I, ideals[i], N)) return i;
  }
  throw std::logic_error("ideal " + to_string(I) + " matches no class at level " +
                         std::to_string(classes.N));
}

namespace {

LevelClassGroup build_group_table(const Int& D, Modulus N) {
  LevelClassGroup out{enumerate_classes(D, gamma1(N)), {}, {}};
  const ImagQuadOrder O(D);
  const Int bigN(static_cast<long>(N));
  std::vector<QuadForm> level1;
  std::vector<OIdealLat> inverses;
  for (const QuadForm& f : out.classes.reps) {
    out.ideals.push_back(ideal_from_form(O, f));
    inverses.push_back(inverse(out.ideals.back()));
    level1.push_back(reduce(f).form);
  }
  const std::size_t n = out.ideals.size();
  auto locate = [&](const OIdealLat& I) {
    const QuadForm r = reduce(form_of_ideal(I)).form;
    for (std::size_t k = 0; k < n; ++k) {
      if (level1[k] != r) continue;
      if (in_P1N(mul(I, inverses[k]), bigN)) return k;
    }
    throw std::logic_error("product " + to_string(I) + " matches no class at level " +
                           std::to_string(N) + " for discriminant " + to_string(D));
  };
  std::size_t identity = n;
  for (std::size_t k = 0; k < n && identity == n; ++k)
    if (level1[k] == principal_form(D) && in_P1N(out.ideals[k], bigN)) identity = k;
  if (identity == n) throw std::logic_error("no class contains the principal ideal");

  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      table[i][j] = locate(mul(out.ideals[i], out.ideals[j]));
      table[j][i] = table[i][j];
    }
  std::vector<std::string> labels;
  for (const QuadForm& f : out.classes.reps) labels.push_back(to_string(f));
  out.table = ClassGroupTable(std::move(labels), std::move(table), identity);
  return out;
}

}  // namespace

std::shared_ptr<const LevelClassGroup> group_table(const Int& D, Modulus N) {
  static std::mutex lock;
  static std::map<std::pair<std::string, Modulus>, std::shared_ptr<const LevelClassGroup>> cache;
  const auto key = std::pair{D.get_str(), N};
  {
    std::lock_guard guard(lock);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const LevelClassGroup>(build_group_table(D, N));
  std::lock_guard guard(lock);
  return cache.try_emplace(key, std::move(built)).first->second;
}

std::vector<QuadForm> surject_level1(const LevelClassList& classes) {
  std::vector<QuadForm> out;
  out.reserve(classes.reps.size());
  for (const QuadForm& f : classes.reps) out.push_back(reduce(f).form);
  return out;
}

LevelOneReport level_one_check(const Int& D, Modulus N) {
  LevelOneReport out;
  const auto top = group_table(D, N);
  const auto bottom = group_table(D, 1);
  const auto images = surject_level1(top->classes);

  std::vector<std::size_t> down;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::size_t by_form = class_index(bottom->classes, images[i], sl2(1));
    const std::size_t by_ideal = bottom->locate(top->ideals[i]);
    if (by_form != by_ideal) {
      out.forms_match_ideals = false;
      out.failures.push_back("class " + top->table.label(i) + " goes to " +
                             bottom->table.label(by_form) + " on forms but " +
                             bottom->table.label(by_ideal) + " on ideals");
    }
    down.push_back(by_form);
  }
  std::set<std::size_t> hit(down.begin(), down.end());
  if (hit.size() != bottom->table.size()) {
    out.surjective = false;
    out.failures.push_back("only " + std::to_string(hit.size()) + " of " +
                           std::to_string(bottom->table.size()) + " level-1 classes are hit");
  }
  for (std::size_t i = 0; i < down.size(); ++i)
    for (std::size_t j = 0; j < down.size(); ++j)
      if (down[top->table.mul(i, j)] != bottom->table.mul(down[i], down[j])) {
        out.multiplicative = false;
        out.failures.push_back("product of " + top->table.label(i) + " and " + top->table.label(j) +
                               " does not map to the product of images");
      }
  return out;
}

ASubgroupReport a_subgroup(const Int& D, Modulus N) {
  check_discriminant(D);
  std::set<Modulus> leading;
  for (const ResidueForm& f : residue_forms(D, N)) leading.insert(mod(f.a, N));
  std::vector<Modulus> values(leading.begin(), leading.end());
  ASubgroupReport out{units_subgroup_closure(values, N), false, false, {}, false};
  out.closed = out.subgroup.was_closed;

  const ImagQuadOrder O(D);
  const Int& dK = O.fundamental_disc();
  out.dK_divides_N = Int(static_cast<long>(N)) % dK == 0;
  for (Modulus a = 1; a <= N; ++a) {
    if (gcd(a, N) != 1) continue;
    if (out.dK_divides_N && kronecker_symbol(dK, Int(static_cast<long>(a))) != 1) continue;
    out.expected.push_back(mod(a, N));
  }
  std::sort(out.expected.begin(), out.expected.end());
  out.matches_expected = out.expected == out.subgroup.elements;
  return out;
}

MinusOneReport minus_one_check(const Int& D, Modulus N) {
  return {sqrt_mod(Int(-1), N).has_value(), a_subgroup(D, N).subgroup.index};
}

RhoReport rho_bijection_check(const Int& D, Modulus N, int samples, std::uint64_t seed,
                              const std::optional<Int>& oracle_bound) {
  RhoReport out;
  const auto G = group_table(D, N);
  const ImagQuadOrder O(D);
  const Int bigN(static_cast<long>(N));
  const auto oracle = oracle_bound ? ray_class_oracle(O, N, *oracle_bound) : ray_class_oracle(O, N);
  out.classes = G->ideals.size();
  out.oracle_order = oracle.reps.size();
  out.formula = ray_class_number(O, N);

  for (std::size_t i = 0; i < G->ideals.size(); ++i)
    for (std::size_t j = i + 1; j < G->ideals.size(); ++j)
      if (class_equal(G->ideals[i], G->ideals[j], bigN)) {
        out.injective = false;
        out.failures.push_back("reps " + G->table.label(i) + " and " + G->table.label(j) +
                               " have equal ideal classes");
      }
  for (const OIdealLat& I : oracle.reps) {
    const bool found = std::any_of(G->ideals.begin(), G->ideals.end(),
                                   [&](const OIdealLat& J) { return class_equal(I, J, bigN); });
    if (!found) {
      out.surjective = false;
      out.failures.push_back("oracle class " + to_string(I) + " is not hit");
    }
  }

  // Words in elements of Gamma1(N).
  const std::vector<IntMatrix> steps{
      IntMatrix::translation(1), IntMatrix::translation(-1), {1, 0, bigN, 1}, {1, 0, -bigN, 1},
      {1 - bigN, bigN, -bigN, 1 + bigN}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, steps.size() - 1);
  for (std::size_t i = 0; i < G->classes.reps.size(); ++i) {
    for (int k = 0; k < samples; ++k) {
      IntMatrix gamma = IntMatrix::identity();
      for (int len = 0; len < 6; ++len) gamma = gamma * steps[pick(rng)];
      const QuadForm moved = act(G->classes.reps[i], gamma);
      if (!class_equal(ideal_from_form(O, moved), G->ideals[i], bigN)) {
        out.well_defined = false;
        out.failures.push_back("translate " + to_string(moved) + " of " + G->table.label(i) +
                               " lands in another ideal class");
      }
    }
  }
  return out;
}

}  // namespace formclass
