#include "formclass/forms.hpp"

#include <algorithm>

namespace formclass {

void check_discriminant(const Int& D) {
  Int r = D % 4;
  if (r < 0) r += 4;
  if (D >= 0 || (r != 0 && r != 1)) {
    throw InvalidDiscriminant("invalid negative discriminant: " + D.get_str());
  }
}

QuadForm::QuadForm(Int a, Int b, Int c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_ <= 0) throw InvalidForm("form " + to_string(*this) + " has a <= 0");
  if (discriminant() >= 0) throw InvalidForm("form " + to_string(*this) + " is not definite");
  Int g = gcd(gcd(a_, b_), c_);
  if (g != 1) throw InvalidForm("form " + to_string(*this) + " is not primitive");
}

std::strong_ordering QuadForm::operator<=>(const QuadForm& o) const {
  for (auto [x, y] : {std::pair{&a_, &o.a_}, {&b_, &o.b_}, {&c_, &o.c_}}) {
    int c = cmp(*x, *y);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const QuadForm& f) {
  return "(" + f.a().get_str() + "," + f.b().get_str() + "," + f.c().get_str() + ")";
}

Int discriminant(const QuadForm& f) { return f.discriminant(); }

QuadForm principal_form(const Int& D) {
  check_discriminant(D);
  if (D % 2 != 0) return {1, 1, (1 - D) / 4};
  return {1, 0, -D / 4};
}

QuadPoint omega(const QuadForm& f) {
  Rat two_a(2 * f.a());
  Rat r = Rat(-f.b()) / two_a;
  Rat s = Rat(1) / two_a;
  r.canonicalize();
  s.canonicalize();
  return {r, s, f.discriminant()};
}

QuadForm act(const QuadForm& f, const IntMatrix& g) {
  if (!g.is_unimodular()) {
    throw std::invalid_argument("act: matrix " + to_string(g) + " is not in SL2(Z)");
  }
  const Int& a = f.a();
  const Int& b = f.b();
  const Int& c = f.c();
  return {f(g.q, g.s), 2 * a * g.q * g.r + b * (g.q * g.t + g.r * g.s) + 2 * c * g.s * g.t,
          f(g.r, g.t)};
}

Int coeff_x2(const QuadForm& f, const IntMatrix& g) { return f(g.q, g.s); }

bool is_reduced(const QuadForm& f) {
  const Int& a = f.a();
  const Int& b = f.b();
  const Int& c = f.c();
  if (abs(b) > a || a > c) return false;
  if ((abs(b) == a || a == c) && b < 0) return false;
  return true;
}

Reduction reduce(const QuadForm& f) {
  QuadForm cur = f;
  IntMatrix w = IntMatrix::identity();
  for (;;) {
    // Translate b into (-a, a].
    Int two_a = 2 * cur.a();
    Int k;
    Int num = cur.a() - cur.b();
    mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), two_a.get_mpz_t());
    if (k != 0) {
      IntMatrix step = IntMatrix::translation(k);
      cur = act(cur, step);
      w = w * step;
    }
    if (cur.a() > cur.c() || (cur.a() == cur.c() && cur.b() < 0)) {
      IntMatrix step = IntMatrix::inversion();
      cur = act(cur, step);
      w = w * step;
      continue;
    }
    return {cur, w};
  }
}

std::vector<QuadForm> reduced_forms(const Int& D) {
  check_discriminant(D);
  std::vector<QuadForm> out;
  for (Int a = 1; 3 * a * a <= -D; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      Int num = b * b - D;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (gcd(gcd(a, b), c) != 1) continue;
      out.emplace_back(a, b, c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntMatrix> automorphs(const QuadForm& f) {
  std::vector<IntMatrix> out;
  auto first_columns = represent(f, f.a());
  auto second_columns = represent(f, f.c());
  for (const auto& [q, s] : first_columns) {
    for (const auto& [r, t] : second_columns) {
      IntMatrix g{q, r, s, t};
      if (g.det() == 1 && act(f, g) == f) out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  auto id = std::find(out.begin(), out.end(), IntMatrix::identity());
  std::rotate(out.begin(), id, id + 1);
  return out;
}

std::vector<std::pair<Int, Int>> represent(const Int& a, const Int& b, const Int& c,
                                           const Int& m) {
  if (m < 1) throw std::invalid_argument("represent: target must be positive");
  const Int D = b * b - 4 * a * c;
  if (a <= 0 || D >= 0) throw std::invalid_argument("represent: form is not positive definite");
  // 4a f(x, y) = (2ax + by)^2 - D y^2, so -D y^2 <= 4am.
  Int bound = sqrt(Int(4 * a * m / -D));
  std::vector<std::pair<Int, Int>> out;
  for (Int y = -bound; y <= bound; ++y) {
    // a x^2 + (b y) x + (c y^2 - m) = 0
    Int disc = D * y * y + 4 * a * m;
    if (disc < 0) continue;
    Int root = sqrt(disc);
    if (root * root != disc) continue;
    for (int sign : {-1, 1}) {
      Int num = -b * y + sign * root;
      if (num % (2 * a) != 0) continue;
      Int x = num / (2 * a);
      if (out.empty() || out.back() != std::pair{x, y}) out.emplace_back(x, y);
      if (root == 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<Int, Int>> represent(const QuadForm& f, const Int& m) {
  return represent(f.a(), f.b(), f.c(), m);
}

// ---------------------------------------------------------------------------

std::string to_string(const ResidueForm& f) {
  return "(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + ")";
}

ResidueForm reduce_mod(const QuadForm& f, Modulus n) {
  return {mod(f.a(), n), mod(f.b(), n), mod(f.c(), n)};
}

ResidueForm act_mod(const ResidueForm& f, const ResidueMatrix& g) {
  const Modulus n = g.modulus();
  auto value = [&](Modulus x, Modulus y) { return mod(f.a * x % n * x + f.b * x % n * y + f.c * y % n * y, n); };
  Modulus b = mod(2 * f.a * g.q() % n * g.r() + f.b * mod(g.q() * g.t() + g.r() * g.s(), n) +
                      2 * f.c * g.s() % n * g.t(),
                  n);
  return {value(g.q(), g.s()), b, value(g.r(), g.t())};
}

std::map<ResidueForm, ResidueSource> residue_form_sources(const Int& D, Modulus n) {
  auto group = sl2_elements(n);
  auto id = std::find(group.begin(), group.end(), ResidueMatrix::identity(n));
  std::rotate(group.begin(), id, id + 1);

  std::map<ResidueForm, ResidueSource> out;
  for (const QuadForm& r : reduced_forms(D)) {
    const ResidueForm base = reduce_mod(r, n);
    for (const ResidueMatrix& g : group) {
      ResidueForm image = act_mod(base, g);
      if (gcd(image.a, n) != 1) continue;
      out.try_emplace(image, ResidueSource{r, g});
    }
  }
  return out;
}

std::vector<ResidueForm> residue_forms(const Int& D, Modulus n) {
  std::vector<ResidueForm> out;
  for (const auto& [form, source] : residue_form_sources(D, n)) out.push_back(form);
  return out;
}

}  // namespace formclass
