#include "formclass/numtheory.hpp"

#include <algorithm>
#include <numeric>

namespace formclass {

Modulus mod(Modulus value, Modulus m) {
  Modulus r = value % m;
  return r < 0 ? r + m : r;
}

Modulus mod(const Int& value, Modulus m) {
  Int r = value % Int(static_cast<long>(m));
  if (r < 0) r += static_cast<long>(m);
  return r.get_si();
}

Modulus gcd(Modulus a, Modulus b) { return std::gcd(a, b); }

std::optional<Modulus> inverse_mod(Modulus a, Modulus m) {
  if (m == 1) return 0;
  ExtGcd e = ext_gcd(Int(static_cast<long>(mod(a, m))), Int(static_cast<long>(m)));
  if (e.g != 1) return std::nullopt;
  return mod(e.x, m);
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Int d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<Int> prime_factors(const Int& n) {
  std::vector<Int> out;
  Int m = abs(n);
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

std::vector<Modulus> prime_factors(Modulus n) {
  std::vector<Modulus> out;
  for (const Int& p : prime_factors(Int(static_cast<long>(n)))) out.push_back(p.get_si());
  return out;
}

bool is_square_free(Modulus n) {
  if (n < 1) return false;
  for (Modulus p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

std::vector<Modulus> divisors(Modulus n) {
  std::vector<Modulus> out;
  for (Modulus d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

Modulus euler_phi(Modulus n) {
  Modulus phi = n;
  for (Modulus p : prime_factors(n)) phi = phi / p * (p - 1);
  return phi;
}

ExtGcd ext_gcd(const Int& a, const Int& b) {
  ExtGcd e;
  mpz_gcdext(e.g.get_mpz_t(), e.x.get_mpz_t(), e.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return e;
}

// ---------------------------------------------------------------------------

Residue::Residue(Modulus value, Modulus modulus) : modulus_(modulus) {
  if (modulus < 1 || modulus > kMaxModulus) {
    throw std::invalid_argument("residue modulus out of range: " + std::to_string(modulus));
  }
  value_ = mod(value, modulus);
}

Residue::Residue(const Int& value, Modulus modulus) : Residue(Modulus{0}, modulus) {
  value_ = mod(value, modulus);
}

Residue Residue::inverse() const {
  auto inv = inverse_mod(value_, modulus_);
  if (!inv) throw std::domain_error("residue is not a unit");
  return {*inv, modulus_};
}

Residue Residue::operator+(const Residue& o) const {
  return {value_ + o.value_, modulus_};
}
Residue Residue::operator-(const Residue& o) const {
  return {value_ - o.value_, modulus_};
}
Residue Residue::operator*(const Residue& o) const {
  return {value_ * o.value_, modulus_};
}
Residue Residue::operator-() const { return {-value_, modulus_}; }

// ---------------------------------------------------------------------------

int kronecker(const Int& D, const Int& p) {
  if (!is_prime(p)) throw NotPrime("kronecker: modulus " + p.get_str() + " is not prime");
  if (p == 2) {
    if (D % 2 == 0) return 0;
    Int r = D % 8;
    if (r < 0) r += 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  Int r = D % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  // Euler's criterion.
  Int e = (p - 1) / 2, out;
  mpz_powm(out.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return out == 1 ? 1 : -1;
}

int kronecker_symbol(const Int& D, const Int& n) {
  if (n < 1) throw std::invalid_argument("kronecker_symbol: n must be positive");
  int out = 1;
  Int m = n;
  for (const Int& p : prime_factors(n)) {
    const int k = kronecker(D, p);
    while (m % p == 0) {
      out *= k;
      m /= p;
    }
  }
  return out;
}

std::optional<Modulus> sqrt_mod(const Int& a, Modulus m) {
  if (m < 1) throw std::invalid_argument("sqrt_mod: modulus must be positive");
  const Modulus target = mod(a, m);
  for (Modulus x = 0; x < m; ++x) {
    if (mod(x * x, m) == target) return x;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

bool Lattice2::contains(const Vec2& v) const {
  if (v.x % first_.x != 0) return false;
  Int k = v.x / first_.x;
  Int rest = v.y - k * first_.y;
  return rest % second_.y == 0;
}

static Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Lattice2 hnf2(std::span<const Vec2> generators) {
  std::vector<Vec2> rows(generators.begin(), generators.end());
  auto pivot_it = std::find_if(rows.begin(), rows.end(), [](const Vec2& v) { return v.x != 0; });
  if (pivot_it == rows.end()) throw DegenerateLattice("hnf2: generators have rank < 2");
  Vec2 pivot = *pivot_it;
  rows.erase(pivot_it);

  Int second = 0;
  for (Vec2 r : rows) {
    while (r.x != 0) {
      Int q = floor_div(pivot.x, r.x);
      pivot.x -= q * r.x;
      pivot.y -= q * r.y;
      std::swap(pivot, r);
    }
    mpz_gcd(second.get_mpz_t(), second.get_mpz_t(), r.y.get_mpz_t());
  }
  if (second == 0) throw DegenerateLattice("hnf2: generators have rank < 2");
  if (pivot.x < 0) {
    pivot.x = -pivot.x;
    pivot.y = -pivot.y;
  }
  Int y;
  mpz_fdiv_r(y.get_mpz_t(), pivot.y.get_mpz_t(), second.get_mpz_t());

  Lattice2 out;
  out.first_ = {pivot.x, y};
  out.second_ = {0, second};
  return out;
}

std::string to_string(const Int& v) { return v.get_str(); }

}  // namespace formclass
