#include "formclass/orders.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace formclass {

namespace {

Int floor_mod(const Int& x, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

Int lcm_den(const QuadElem& x) {
  Int l;
  mpz_lcm(l.get_mpz_t(), x.u.get_den_mpz_t(), x.v.get_den_mpz_t());
  return l;
}

Vec2 coords(const QuadElem& x) { return {x.v.get_num(), x.u.get_num()}; }

QuadElem scale_elem(const QuadElem& x, const Rat& s) {
  QuadElem out{x.u * s, x.v * s};
  out.u.canonicalize();
  out.v.canonicalize();
  return out;
}

}  // namespace

ImagQuadOrder::ImagQuadOrder(const Int& D) : D_(D) {
  check_discriminant(D);
  Int n = -D;
  Int f = sqrt(n);
  for (; f >= 1; --f) {
    Int f2 = f * f;
    if (n % f2 != 0) continue;
    Int d = D / f2;
    Int r = floor_mod(d, 4);
    if (r == 0 || r == 1) break;
  }
  ell_ = f;
  dK_ = D / (f * f);
  b_ = floor_mod(D, 2);
  c_ = (b_ * b_ - D) / 4;
}

ImagQuadOrder order_from_disc(const Int& D) { return ImagQuadOrder(D); }

QuadElem elem_mul(const ImagQuadOrder& O, const QuadElem& x, const QuadElem& y) {
  QuadElem out{x.u * y.u - Rat(O.c()) * x.v * y.v,
               x.u * y.v + y.u * x.v - Rat(O.b()) * x.v * y.v};
  out.u.canonicalize();
  out.v.canonicalize();
  return out;
}

QuadElem elem_conj(const ImagQuadOrder& O, const QuadElem& x) {
  QuadElem out{x.u - Rat(O.b()) * x.v, -x.v};
  out.u.canonicalize();
  return out;
}

Rat elem_norm(const ImagQuadOrder& O, const QuadElem& x) {
  Rat n = x.u * x.u - Rat(O.b()) * x.u * x.v + Rat(O.c()) * x.v * x.v;
  n.canonicalize();
  return n;
}

bool elem_is_integral(const QuadElem& x) { return is_integer(x.u) && is_integer(x.v); }

std::string to_string(const QuadElem& x) { return x.u.get_str() + "+" + x.v.get_str() + "*tau"; }

// ---------------------------------------------------------------------------

OIdealLat::OIdealLat(const ImagQuadOrder& O) : O_(O), scale_(1), a_(1), b_(O.b()) {}

OIdealLat::OIdealLat(const ImagQuadOrder& O, Rat scale, Int a, Int b)
    : O_(O), scale_(std::move(scale)), a_(std::move(a)), b_(std::move(b)) {
  scale_.canonicalize();
  if (scale_ <= 0) throw std::invalid_argument("ideal scale must be positive");
  if (a_ <= 0) throw std::invalid_argument("ideal norm a must be positive");
  Int two_a = 2 * a_;
  b_ = floor_mod(b_, two_a);
  if (b_ > a_) b_ -= two_a;
  if ((b_ * b_ - O_.disc()) % (4 * a_) != 0) {
    throw std::invalid_argument("(" + a_.get_str() + "," + b_.get_str() +
                                ") is not an ideal of discriminant " + O_.disc().get_str());
  }
}

OIdealLat OIdealLat::from_lattice(const ImagQuadOrder& O, Rat scale, const Lattice2& lattice) {
  const Int& g = lattice.first().x;
  const Int& k = lattice.first().y;
  const Int& A = lattice.second().y;
  if (k % g != 0 || A % g != 0) throw std::invalid_argument("lattice is not an O-ideal");
  Int a = A / g;
  Int b = O.b() - 2 * (k / g);
  return {O, scale * Rat(g), a, b};
}

OIdealLat OIdealLat::principal(const ImagQuadOrder& O, const QuadElem& x) {
  if (x.u == 0 && x.v == 0) throw std::invalid_argument("principal ideal of zero");
  Int d = lcm_den(x);
  QuadElem y = scale_elem(x, Rat(d));
  QuadElem yt = elem_mul(O, y, QuadElem{0, 1});
  std::vector<Vec2> gens{coords(y), coords(yt)};
  return from_lattice(O, Rat(1) / Rat(d), hnf2(gens));
}

Int OIdealLat::c() const { return (b_ * b_ - O_.disc()) / (4 * a_); }

std::pair<QuadElem, QuadElem> OIdealLat::basis() const {
  return {QuadElem{scale_ * Rat(a_), 0}, QuadElem{scale_ * Rat((O_.b() - b_) / 2), scale_}};
}

Lattice2 OIdealLat::primitive_lattice() const {
  std::vector<Vec2> gens{{0, a_}, {1, (O_.b() - b_) / 2}};
  return hnf2(gens);
}

bool OIdealLat::contains(const QuadElem& x) const {
  QuadElem y = scale_elem(x, 1 / scale_);
  if (!elem_is_integral(y)) return false;
  return primitive_lattice().contains(coords(y));
}

bool OIdealLat::is_integral() const { return is_integer(scale_); }

std::string to_string(const OIdealLat& I) {
  std::string prim = "(" + I.a().get_str() + "," + I.b().get_str() + ")";
  if (I.scale() == 1) return prim;
  return I.scale().get_str() + "*" + prim;
}

OIdealLat ideal_from_form(const ImagQuadOrder& O, const QuadForm& Q) {
  if (Q.discriminant() != O.disc()) {
    throw std::invalid_argument("form " + to_string(Q) + " has the wrong discriminant");
  }
  return {O, Rat(1) / Rat(Q.a()), Q.a(), Q.b()};
}

QuadForm form_of_ideal(const OIdealLat& I) { return {I.a(), I.b(), I.c()}; }

OIdealLat mul(const OIdealLat& I, const OIdealLat& J) {
  if (!(I.order() == J.order())) throw std::invalid_argument("ideals of different orders");
  const ImagQuadOrder& O = I.order();
  auto prim_basis = [&](const OIdealLat& X) {
    return std::pair{QuadElem{Rat(X.a()), 0}, QuadElem{Rat((O.b() - X.b()) / 2), 1}};
  };
  auto [i1, i2] = prim_basis(I);
  auto [j1, j2] = prim_basis(J);
  std::vector<Vec2> gens;
  for (const QuadElem& x : {i1, i2})
    for (const QuadElem& y : {j1, j2}) gens.push_back(coords(elem_mul(O, x, y)));
  return OIdealLat::from_lattice(O, I.scale() * J.scale(), hnf2(gens));
}

OIdealLat conj(const OIdealLat& I) { return {I.order(), I.scale(), I.a(), -I.b()}; }

Rat norm(const OIdealLat& I) {
  Rat n = I.scale() * I.scale() * Rat(I.a());
  n.canonicalize();
  return n;
}

OIdealLat scaled(const OIdealLat& I, const Rat& factor) {
  return {I.order(), I.scale() * factor, I.a(), I.b()};
}

OIdealLat inverse(const OIdealLat& I) { return scaled(conj(I), 1 / norm(I)); }

bool prime_to(const OIdealLat& I, const Int& N) {
  if (N < 1) throw std::invalid_argument("modulus must be positive");
  return gcd(I.a(), N) == 1 && gcd(I.scale().get_num(), N) == 1 &&
         gcd(I.scale().get_den(), N) == 1;
}

bool is_proper(const OIdealLat& I) {
  const ImagQuadOrder& O = I.order();
  const OIdealLat prim(O, 1, I.a(), I.b());
  const QuadElem e1{Rat(I.a()), 0};
  const QuadElem e2{Rat((O.b() - I.b()) / 2), 1};
  // The orders strictly containing O are Z[tau_f] for f | ell, f > 1, with
  // tau_f = (-b_f + sqrt(D/f^2))/2 = (b_O/f - b_f)/2 + tau/f.
  const Int& ell = O.conductor();
  for (Int f = 2; f <= ell; ++f) {
    if (ell % f != 0) continue;
    Int Df = O.disc() / (f * f);
    Int bf = floor_mod(Df, 2);
    QuadElem tf{(Rat(O.b()) / Rat(f) - Rat(bf)) / 2, Rat(1) / Rat(f)};
    tf.u.canonicalize();
    tf.v.canonicalize();
    if (prim.contains(elem_mul(O, tf, e1)) && prim.contains(elem_mul(O, tf, e2))) return false;
  }
  return true;
}

std::vector<QuadElem> principal_generators(const OIdealLat& I) {
  const ImagQuadOrder& O = I.order();
  std::vector<QuadElem> out;
  // x a + y (-b + sqrt D)/2 has norm a (a x^2 - b x y + c y^2).
  for (const auto& [x, y] : represent(I.a(), -I.b(), I.c(), 1)) {
    QuadElem g{Rat(x * I.a() + y * ((O.b() - I.b()) / 2)), Rat(y)};
    out.push_back(scale_elem(g, I.scale()));
  }
  return out;
}

std::vector<QuadElem> units(const ImagQuadOrder& O) {
  std::vector<QuadElem> out;
  for (const auto& [u, v] : represent(1, -O.b(), O.c(), 1)) out.push_back({Rat(u), Rat(v)});
  return out;
}

bool in_P1N(const OIdealLat& I, const Int& N) { return in_P1N_relative(I, N, N); }

bool in_P1N_relative(const OIdealLat& I, const Int& N, const Int& M) {
  if (N < 1 || M % N != 0) throw std::invalid_argument("need N | M");
  if (!prime_to(I, M)) {
    throw NotPrimeToModulus("ideal " + to_string(I) + " is not prime to " + M.get_str());
  }
  const Int p = I.scale().get_num();
  const Int m = I.scale().get_den();
  Int m_inv;
  mpz_invert(m_inv.get_mpz_t(), m.get_mpz_t(), M.get_mpz_t());
  if (M == 1) m_inv = 0;
  for (const QuadElem& g : principal_generators(OIdealLat(I.order(), 1, I.a(), I.b()))) {
    const Int u = p * g.u.get_num();
    const Int v = p * g.v.get_num();
    if (floor_mod(v, M) != 0) continue;
    Int a = floor_mod(u * m_inv, M);
    if (floor_mod(a - 1, N) == 0) return true;
  }
  return false;
}

bool class_equal(const OIdealLat& I, const OIdealLat& J, const Int& N) {
  return in_P1N(mul(I, inverse(J)), N);
}

std::vector<OIdealLat> primitive_ideals(const ImagQuadOrder& O, const Int& bound) {
  std::vector<OIdealLat> out;
  const Int& D = O.disc();
  for (Int a = 1; a <= bound; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      Int num = b * b - D;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      if (gcd(gcd(a, b), c) != 1) continue;
      out.emplace_back(O, 1, a, b);
    }
  }
  return out;
}

std::vector<QuadElem> residue_units(const ImagQuadOrder& O, Modulus n) {
  if (n < 1) throw std::invalid_argument("modulus must be positive");
  std::vector<QuadElem> out;
  const Modulus b = mod(O.b(), n);
  const Modulus c = mod(O.c(), n);
  for (Modulus u = 0; u < n; ++u)
    for (Modulus v = 0; v < n; ++v) {
      Modulus nm = mod(u * u - b * u % n * v + c * v % n * v, n);
      if (gcd(nm, n) == 1) out.push_back({Rat(static_cast<long>(u)), Rat(static_cast<long>(v))});
    }
  return out;
}

Modulus residue_unit_count(const ImagQuadOrder& O, Modulus n) {
  return static_cast<Modulus>(residue_units(O, n).size());
}

Modulus unit_image_size(const ImagQuadOrder& O, Modulus n) {
  std::set<std::pair<Modulus, Modulus>> image;
  for (const QuadElem& e : units(O)) image.emplace(mod(e.u.get_num(), n), mod(e.v.get_num(), n));
  return static_cast<Modulus>(image.size());
}

Int ray_class_number(const ImagQuadOrder& O, Modulus n) {
  Int h(static_cast<unsigned long>(reduced_forms(O.disc()).size()));
  return h * residue_unit_count(O, n) / unit_image_size(O, n);
}

Int default_oracle_bound(const ImagQuadOrder& O, Modulus n) {
  Int b = sqrt(Int(-O.disc() / 3));
  while (3 * b * b < -O.disc()) ++b;
  return std::max(b, Int(static_cast<long>(n * n)));
}

RayClassGroup ray_class_oracle(const ImagQuadOrder& O, Modulus n, const Int& bound) {
  const Int N(static_cast<long>(n));
  struct Elem {
    OIdealLat ideal;
    QuadForm level1;
  };
  auto make = [](OIdealLat I) {
    QuadForm f = reduce(form_of_ideal(I)).form;
    return Elem{std::move(I), std::move(f)};
  };
  std::vector<Elem> candidates;
  for (const OIdealLat& I : primitive_ideals(O, bound))
    if (prime_to(I, N)) candidates.push_back(make(I));
  for (Modulus m = 1; m <= n; ++m)
    if (gcd(m, n) == 1) candidates.push_back(make(scaled(OIdealLat(O), Rat(static_cast<long>(m)))));
  for (QuadElem nu : residue_units(O, n)) {
    if (nu.u == 0 && nu.v == 0) nu.u = Rat(static_cast<long>(n));
    candidates.push_back(make(OIdealLat::principal(O, nu)));
  }

  auto closure = close_group(
      make(OIdealLat(O)), candidates,
      [](const Elem& x, const Elem& y) {
        return Elem{mul(x.ideal, y.ideal), reduce(form_of_ideal(mul(x.ideal, y.ideal))).form};
      },
      [&](const Elem& x, const Elem& y) {
        return x.level1 == y.level1 && class_equal(x.ideal, y.ideal, N);
      },
      [](const Elem& x) { return to_string(x.ideal); }, 1u << 16);

  // Every level-one class has a reduced representative; each must be hit.
  for (const QuadForm& r : reduced_forms(O.disc())) {
    OIdealLat J(O, 1, r.a(), r.b());
    bool hit = std::any_of(closure.elements.begin(), closure.elements.end(),
                           [&](const Elem& x) { return class_equal(J, x.ideal, 1); });
    if (!hit) {
      throw NotClosed("ideals of norm <= " + bound.get_str() + " miss the class of " +
                      to_string(r));
    }
  }
  RayClassGroup out;
  for (Elem& e : closure.elements) out.reps.push_back(std::move(e.ideal));
  out.table = std::move(closure.table);
  return out;
}

RayClassGroup ray_class_oracle(const ImagQuadOrder& O, Modulus n) {
  Int bound = default_oracle_bound(O, n);
  for (int attempt = 0;; ++attempt) {
    try {
      return ray_class_oracle(O, n, bound);
    } catch (const NotClosed&) {
      if (attempt >= 8) throw;
      bound *= 2;
    }
  }
}

OIdealLat contract(const OIdealLat& A, const ImagQuadOrder& O, const Int& N) {
  const ImagQuadOrder& OK = A.order();
  if (!OK.is_maximal() || OK.fundamental_disc() != O.fundamental_disc()) {
    throw std::invalid_argument("contract needs an ideal of the maximal order of the same field");
  }
  if (!A.is_integral()) throw std::invalid_argument("contract needs an integral ideal");
  const Int& ell = O.conductor();
  if (!prime_to(A, ell * N)) {
    throw NotPrimeToModulus("ideal " + to_string(A) + " is not prime to " + Int(ell * N).get_str());
  }
  const Int s = A.scale().get_num();
  const Int g = s;
  const Int k = s * floor_mod((OK.b() - A.b()) / 2, A.a());
  const Int top = s * A.a();
  // O = {u + v tau_K : ell | v} and tau_O = ell tau_K + delta.
  const Int t = ell / gcd(ell, g);
  const Int delta = (ell * OK.b() - O.b()) / 2;
  auto to_O = [&](const Int& v, const Int& u) {
    Int w = v / ell;
    return Vec2{w, u - w * delta};
  };
  std::vector<Vec2> gens{to_O(t * g, t * k), to_O(0, top)};
  return OIdealLat::from_lattice(O, 1, hnf2(gens));
}

ContractionReport contraction_check(const Int& D, Modulus n, int samples, std::uint64_t seed) {
  const ImagQuadOrder O(D);
  const ImagQuadOrder OK(O.fundamental_disc());
  const Int N(static_cast<long>(n));
  const Int& ell = O.conductor();
  std::vector<OIdealLat> pool;
  for (Int bound = 40; pool.size() < static_cast<std::size_t>(samples) && bound <= 5000; bound *= 2) {
    pool.clear();
    for (const OIdealLat& A : primitive_ideals(OK, bound))
      if (prime_to(A, ell * N)) pool.push_back(A);
    for (long m = 1; m <= 7; ++m)
      if (gcd(Int(m), ell * N) == 1) pool.push_back(scaled(OIdealLat(OK), m));
  }
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > static_cast<std::size_t>(samples)) pool.erase(pool.begin() + samples, pool.end());

  ContractionReport out;
  out.samples = pool.size();
  std::vector<OIdealLat> image;
  for (const OIdealLat& A : pool) image.push_back(contract(A, O, N));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!is_proper(image[i]) || norm(image[i]) != norm(pool[i])) out.multiplicative = false;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (contract(mul(pool[i], pool[j]), O, N) != mul(image[i], image[j])) out.multiplicative = false;
      const bool same_upstairs = in_P1N_relative(mul(pool[i], inverse(pool[j])), N, ell * N);
      if (same_upstairs != class_equal(image[i], image[j], N)) out.bijective = false;
    }
  }
  return out;
}

}  // namespace formclass
