#include "formclass/congruence.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "json.hpp"

namespace formclass {

namespace {

std::vector<MatrixKey> closure_keys(Modulus n, const std::vector<ResidueMatrix>& gens) {
  std::unordered_set<MatrixKey> seen;
  std::deque<ResidueMatrix> frontier;
  const ResidueMatrix id = ResidueMatrix::identity(n);
  seen.insert(id.key());
  frontier.push_back(id);
  while (!frontier.empty()) {
    ResidueMatrix x = frontier.front();
    frontier.pop_front();
    for (const ResidueMatrix& g : gens) {
      ResidueMatrix y = x * g;
      if (seen.insert(y.key()).second) frontier.push_back(y);
    }
  }
  std::vector<MatrixKey> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool sorted_contains(const std::vector<MatrixKey>& keys, MatrixKey k) {
  return std::binary_search(keys.begin(), keys.end(), k);
}

void check_group_level(Modulus n) {
  if (n < 1 || n > kMaxEnumerationLevel) {
    throw std::invalid_argument("group level out of range: " + std::to_string(n));
  }
}

std::string gens_label(Modulus n, const std::vector<IntMatrix>& gens) {
  std::string out = "gens:" + std::to_string(n) + ":[";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const ResidueMatrix m(gens[i], n);
    if (i) out += ",";
    out += "[" + std::to_string(m.q()) + "," + std::to_string(m.r()) + "," +
           std::to_string(m.s()) + "," + std::to_string(m.t()) + "]";
  }
  return out + "]";
}

Int symmetric(Modulus x, Modulus n) { return Int(static_cast<long>(2 * x > n ? x - n : x)); }

Modulus parse_modulus(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw GroupSpecError("bad integer '" + text + "' in group spec '" + spec + "'");
  }
  if (used != text.size()) {
    throw GroupSpecError("bad integer '" + text + "' in group spec '" + spec + "'");
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

FiniteMatrixGroup FiniteMatrixGroup::generate(Modulus n, std::vector<ResidueMatrix> generators) {
  FiniteMatrixGroup g;
  g.n_ = n;
  for (const ResidueMatrix& m : generators) {
    if (m.modulus() != n) throw std::invalid_argument("generator modulus differs from group");
    if (!m.is_invertible()) throw std::invalid_argument("generator " + to_string(m) + " is singular");
  }
  g.keys_ = closure_keys(n, generators);
  g.generators_ = std::move(generators);
  return g;
}

FiniteMatrixGroup FiniteMatrixGroup::from_elements(Modulus n,
                                                   const std::vector<ResidueMatrix>& elements,
                                                   const std::vector<ResidueMatrix>& seed) {
  std::vector<MatrixKey> target;
  target.reserve(elements.size());
  for (const ResidueMatrix& m : elements) target.push_back(m.key());
  std::sort(target.begin(), target.end());
  target.erase(std::unique(target.begin(), target.end()), target.end());

  std::vector<ResidueMatrix> gens = seed;
  std::vector<MatrixKey> have = closure_keys(n, gens);
  for (MatrixKey k : target) {
    if (sorted_contains(have, k)) continue;
    gens.push_back(ResidueMatrix::from_key(k, n));
    have = closure_keys(n, gens);
  }
  if (have != target) throw std::invalid_argument("element set is not a group");
  FiniteMatrixGroup g;
  g.n_ = n;
  g.generators_ = std::move(gens);
  g.keys_ = std::move(have);
  return g;
}

std::vector<ResidueMatrix> FiniteMatrixGroup::elements() const {
  std::vector<ResidueMatrix> out;
  out.reserve(keys_.size());
  for (MatrixKey k : keys_) out.push_back(ResidueMatrix::from_key(k, n_));
  return out;
}

bool FiniteMatrixGroup::contains(const ResidueMatrix& m) const {
  return m.modulus() == n_ && sorted_contains(keys_, m.key());
}

bool FiniteMatrixGroup::is_subgroup_of(const FiniteMatrixGroup& other) const {
  if (other.n_ != n_) return false;
  return std::includes(other.keys_.begin(), other.keys_.end(), keys_.begin(), keys_.end());
}

std::vector<Modulus> FiniteMatrixGroup::determinants() const {
  std::set<Modulus> dets;
  for (MatrixKey k : keys_) dets.insert(ResidueMatrix::from_key(k, n_).det());
  return {dets.begin(), dets.end()};
}

// ---------------------------------------------------------------------------

CongruenceGroup CongruenceGroup::from_generators(Modulus n, std::vector<IntMatrix> generators,
                                                 std::string label) {
  check_group_level(n);
  std::vector<IntMatrix> gens{IntMatrix::translation(1)};
  for (IntMatrix& m : generators) {
    if (!m.is_unimodular()) throw std::invalid_argument("generator " + to_string(m) + " has det != 1");
    gens.push_back(std::move(m));
  }
  std::vector<ResidueMatrix> residues;
  for (const IntMatrix& m : gens) residues.emplace_back(m, n);
  CongruenceGroup g;
  g.image_ = FiniteMatrixGroup::generate(n, std::move(residues));
  g.generators_ = std::move(gens);
  g.label_ = std::move(label);
  return g;
}

CongruenceGroup CongruenceGroup::from_image(FiniteMatrixGroup image, std::string label) {
  const Modulus n = image.modulus();
  check_group_level(n);
  if (!image.contains(ResidueMatrix(IntMatrix::translation(1), n))) {
    throw std::invalid_argument("image does not contain the unipotent generator");
  }
  for (Modulus d : image.determinants()) {
    if (d != mod(1, n)) throw std::invalid_argument("image is not inside SL2");
  }
  CongruenceGroup g;
  for (const ResidueMatrix& m : image.generators()) g.generators_.push_back(lift(m));
  g.image_ = std::move(image);
  g.label_ = std::move(label);
  return g;
}

bool CongruenceGroup::contains_minus_identity() const {
  return contains(-ResidueMatrix::identity(level()));
}

CongruenceGroup sl2(Modulus n) {
  return CongruenceGroup::from_generators(n, {IntMatrix::inversion()}, "sl2:" + std::to_string(n));
}

CongruenceGroup gamma1(Modulus n) {
  return CongruenceGroup::from_generators(n, {}, "gamma1:" + std::to_string(n));
}

CongruenceGroup gamma0_image(Modulus m, Modulus n) {
  check_group_level(n);
  if (m < 1 || n % m != 0) {
    throw std::invalid_argument("gamma0: " + std::to_string(m) + " does not divide " +
                                std::to_string(n));
  }
  std::vector<ResidueMatrix> keep;
  for (const ResidueMatrix& x : sl2_elements(n))
    if (x.s() % m == 0) keep.push_back(x);
  auto image = FiniteMatrixGroup::from_elements(
      n, keep, {ResidueMatrix(IntMatrix::translation(1), n)});
  return CongruenceGroup::from_image(std::move(image),
                                     "gamma0:" + std::to_string(m) + "@" + std::to_string(n));
}

CongruenceGroup gammaG(const std::vector<Modulus>& subgroup, Modulus n) {
  check_group_level(n);
  UnitSubgroup closed = units_subgroup_closure(subgroup, n);
  if (!closed.was_closed) throw std::invalid_argument("gammaG: unit set is not a subgroup");
  std::vector<ResidueMatrix> keep;
  for (const ResidueMatrix& x : sl2_elements(n)) {
    if (x.s() != 0) continue;
    if (std::binary_search(closed.elements.begin(), closed.elements.end(), x.q())) keep.push_back(x);
  }
  auto image = FiniteMatrixGroup::from_elements(
      n, keep, {ResidueMatrix(IntMatrix::translation(1), n)});
  std::string label = "gammaG:" + std::to_string(n) + ":";
  for (std::size_t i = 0; i < closed.elements.size(); ++i) {
    if (i) label += ",";
    label += std::to_string(closed.elements[i]);
  }
  return CongruenceGroup::from_image(std::move(image), std::move(label));
}

CongruenceGroup with_minus_identity(const CongruenceGroup& g) {
  std::vector<IntMatrix> gens(g.generators().begin() + 1, g.generators().end());
  if (!g.contains_minus_identity()) gens.push_back(-IntMatrix::identity());
  const Modulus n = g.level();
  std::vector<IntMatrix> all{IntMatrix::translation(1)};
  all.insert(all.end(), gens.begin(), gens.end());
  return CongruenceGroup::from_generators(n, std::move(gens), gens_label(n, all));
}

CongruenceGroup parse_group(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw GroupSpecError("group spec '" + spec + "' has no ':'");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  auto level = [&](const std::string& text) {
    Modulus n = parse_modulus(text, spec);
    if (n < 1 || n > kMaxEnumerationLevel) {
      throw GroupSpecError("level out of range in group spec '" + spec + "'");
    }
    return n;
  };
  try {
    if (kind == "sl2") return sl2(level(rest));
    if (kind == "gamma1") return gamma1(level(rest));
    if (kind == "gamma0") {
      auto at = rest.find('@');
      if (at == std::string::npos) throw GroupSpecError("gamma0 spec needs M@N: '" + spec + "'");
      Modulus m = parse_modulus(rest.substr(0, at), spec);
      return gamma0_image(m, level(rest.substr(at + 1)));
    }
    auto second = rest.find(':');
    if (second == std::string::npos) throw GroupSpecError("group spec '" + spec + "' is incomplete");
    const Modulus n = level(rest.substr(0, second));
    const std::string body = rest.substr(second + 1);
    if (kind == "gammaG") {
      std::vector<Modulus> units;
      std::size_t start = 0;
      while (start <= body.size()) {
        auto comma = body.find(',', start);
        if (comma == std::string::npos) comma = body.size();
        units.push_back(parse_modulus(body.substr(start, comma - start), spec));
        start = comma + 1;
      }
      return gammaG(units, n);
    }
    if (kind == "gens") {
      nlohmann::json parsed;
      try {
        parsed = nlohmann::json::parse(body);
      } catch (const nlohmann::json::exception&) {
        throw GroupSpecError("bad generator list in group spec '" + spec + "'");
      }
      if (!parsed.is_array()) throw GroupSpecError("generator list must be an array: '" + spec + "'");
      std::vector<IntMatrix> gens;
      for (const auto& entry : parsed) {
        if (!entry.is_array() || entry.size() != 4) {
          throw GroupSpecError("each generator needs four entries: '" + spec + "'");
        }
        std::array<Modulus, 4> e{};
        for (std::size_t i = 0; i < 4; ++i) {
          if (!entry[i].is_number_integer()) {
            throw GroupSpecError("generator entries must be integers: '" + spec + "'");
          }
          e[i] = entry[i].get<Modulus>();
        }
        ResidueMatrix m(n, e[0], e[1], e[2], e[3]);
        if (m.det() != mod(1, n)) {
          throw GroupSpecError("generator has det != 1 mod N in '" + spec + "'");
        }
        gens.push_back(lift(m));
      }
      return CongruenceGroup::from_generators(n, std::move(gens), spec);
    }
  } catch (const GroupSpecError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw GroupSpecError(std::string(e.what()) + " (in '" + spec + "')");
  }
  throw GroupSpecError("unknown group kind '" + kind + "'");
}

bool member(const CongruenceGroup& g, const IntMatrix& m) {
  if (!m.is_unimodular()) throw std::invalid_argument("member: matrix has det != 1");
  return g.contains(ResidueMatrix(m, g.level()));
}

IntMatrix lift(const ResidueMatrix& m) {
  const Modulus n = m.modulus();
  if (m.det() != mod(1, n)) throw std::invalid_argument("lift: " + to_string(m) + " has det != 1");
  if (n == 1) return IntMatrix::identity();

  IntMatrix direct{symmetric(m.q(), n), symmetric(m.r(), n), symmetric(m.s(), n),
                   symmetric(m.t(), n)};
  if (direct.is_unimodular()) return direct;

  // Make the bottom row a coprime pair, then solve for the top row.
  Int d = direct.t == 0 ? Int(static_cast<long>(n)) : direct.t;
  Int c = direct.s;
  for (long j = 0;; j = j > 0 ? -j : -j + 1) {
    Int cand = direct.s + j * Int(static_cast<long>(n));
    if (gcd(cand, d) == 1) {
      c = cand;
      break;
    }
  }
  ExtGcd e = ext_gcd(d, c);  // d x + c y = 1
  Int x = e.x;
  Int y = -e.y;  // x d - y c = 1
  // k c = q - x and k d = r - y modulo N, using u c + v d = 1.
  Int u = e.y;
  Int v = e.x;
  Int k = (direct.q - x) * u + (direct.r - y) * v;
  k = symmetric(mod(k, n), n);
  IntMatrix out{x + k * c, y + k * d, c, d};
  if (!out.is_unimodular() || ResidueMatrix(out, n) != m) {
    throw std::logic_error("lift failed for " + to_string(m));
  }
  return out;
}

std::vector<IntMatrix> coset_reps(const CongruenceGroup& g) {
  const Modulus n = g.level();
  auto all = sl2_elements(n);
  auto id = std::find(all.begin(), all.end(), ResidueMatrix::identity(n));
  std::rotate(all.begin(), id, id + 1);
  const auto image = g.image().elements();
  std::unordered_set<MatrixKey> covered;
  std::vector<IntMatrix> out;
  for (const ResidueMatrix& x : all) {
    if (covered.contains(x.key())) continue;
    out.push_back(lift(x));
    for (const ResidueMatrix& h : image) covered.insert((h * x).key());
  }
  return out;
}

bool contained_in_gamma0(const CongruenceGroup& g, Modulus m) {
  if (m < 1) throw std::invalid_argument("gamma0 modulus must be positive");
  if (m == 1) return true;
  // Gamma contains [[1, 0], [N, 1]], which lies in Gamma0(M) only if M | N.
  if (g.level() % m != 0) return false;
  for (MatrixKey k : g.image().keys()) {
    if (ResidueMatrix::from_key(k, g.level()).s() % m != 0) return false;
  }
  return true;
}

ShiftWitness unipotent_shift_witness(const CongruenceGroup& g, Modulus m) {
  if (m < 2 || !is_square_free(m)) {
    throw std::invalid_argument("witness modulus must be square-free and >= 2");
  }
  if (contained_in_gamma0(g, m)) {
    throw NoWitness("group " + g.label() + " lies in Gamma0(" + std::to_string(m) + ")");
  }
  const Modulus n = g.level();
  std::vector<IntMatrix> candidates = g.generators();
  for (const ResidueMatrix& x : g.image().elements()) candidates.push_back(lift(x));
  candidates.push_back(IntMatrix{1, 0, static_cast<long>(n), 1});

  for (const IntMatrix& g0 : candidates) {
    if (mod(g0.s, m) == 0) continue;
    for (Modulus p : prime_factors(m)) {
      const Modulus s0 = mod(g0.s, p);
      if (s0 == 0) continue;
      const Modulus k = mod(-mod(g0.q, p) * *inverse_mod(s0, p), p);
      IntMatrix w = IntMatrix::translation(k) * g0;
      if (mod(w.q, p) != 0 || mod(w.s, p) == 0 || !member(g, w)) {
        throw std::logic_error("shift witness failed verification");
      }
      return {p, w};
    }
  }
  throw std::logic_error("no shift witness found although Gamma is not in Gamma0(M)");
}

// ---------------------------------------------------------------------------

UnitSubgroup units_subgroup_closure(const std::vector<Modulus>& units, Modulus n) {
  if (n < 1 || n > kMaxModulus) throw std::invalid_argument("unit modulus out of range");
  std::set<Modulus> input;
  for (Modulus u : units) {
    Modulus r = mod(u, n);
    if (gcd(r, n) != 1) {
      throw std::invalid_argument(std::to_string(u) + " is not a unit mod " + std::to_string(n));
    }
    input.insert(r);
  }
  std::set<Modulus> closed{mod(1, n)};
  std::deque<Modulus> frontier{mod(1, n)};
  while (!frontier.empty()) {
    Modulus x = frontier.front();
    frontier.pop_front();
    for (Modulus u : input) {
      Modulus y = mod(x * u, n);
      if (closed.insert(y).second) frontier.push_back(y);
    }
  }
  UnitSubgroup out;
  out.modulus = n;
  out.elements.assign(closed.begin(), closed.end());
  out.index = euler_phi(n) / static_cast<Modulus>(closed.size());
  out.was_closed = input == closed;
  return out;
}

std::vector<std::vector<Modulus>> unit_subgroups(Modulus n) {
  std::vector<Modulus> units;
  for (Modulus u = 0; u < n; ++u)
    if (gcd(u, n) == 1) units.push_back(u);
  std::set<std::vector<Modulus>> found{units_subgroup_closure({}, n).elements};
  std::deque<std::vector<Modulus>> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    auto h = frontier.front();
    frontier.pop_front();
    for (Modulus u : units) {
      if (std::binary_search(h.begin(), h.end(), u)) continue;
      auto gens = h;
      gens.push_back(u);
      auto bigger = units_subgroup_closure(gens, n).elements;
      if (found.insert(bigger).second) frontier.push_back(bigger);
    }
  }
  std::vector<std::vector<Modulus>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });
  return out;
}

}  // namespace formclass
