#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace formclass {

using Int = mpz_class;
using Rat = mpq_class;

/// Residue moduli are bounded machine integers; products of two reduced
/// values must fit in 64 bits.
using Modulus = std::int64_t;
inline constexpr Modulus kMaxModulus = Modulus{1} << 30;

struct DegenerateLattice : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotPrime : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Small integer helpers

Modulus mod(Modulus value, Modulus m);
Modulus mod(const Int& value, Modulus m);
Modulus gcd(Modulus a, Modulus b);
/// Inverse of a modulo m, or nullopt if gcd(a, m) != 1.
std::optional<Modulus> inverse_mod(Modulus a, Modulus m);

bool is_prime(const Int& n);
/// Distinct prime factors in increasing order (trial division).
std::vector<Int> prime_factors(const Int& n);
std::vector<Modulus> prime_factors(Modulus n);
bool is_square_free(Modulus n);
std::vector<Modulus> divisors(Modulus n);
Modulus euler_phi(Modulus n);

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
struct ExtGcd {
  Int g, x, y;
};
ExtGcd ext_gcd(const Int& a, const Int& b);

// ---------------------------------------------------------------------------
// Residue classes

class Residue {
 public:
  Residue(Modulus value, Modulus modulus);
  Residue(const Int& value, Modulus modulus);

  Modulus value() const { return value_; }
  Modulus modulus() const { return modulus_; }
  bool is_unit() const { return gcd(value_, modulus_) == 1; }
  Residue inverse() const;

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  bool operator==(const Residue& o) const = default;
  auto operator<=>(const Residue& o) const = default;

 private:
  Modulus value_;
  Modulus modulus_;
};

// ---------------------------------------------------------------------------
// Quadratic symbols and square roots

/// Kronecker symbol (D/p) for a prime p. Legendre symbol for odd p; at
/// p = 2: 0 for even D, +1 for D = +-1 mod 8, -1 for D = +-3 mod 8.
int kronecker(const Int& D, const Int& p);
/// Kronecker symbol (D/n) for n >= 1, multiplicative in n.
int kronecker_symbol(const Int& D, const Int& n);

/// Smallest x in [0, m) with x^2 = a mod m, if any.
std::optional<Modulus> sqrt_mod(const Int& a, Modulus m);

// ---------------------------------------------------------------------------
// Rank-2 lattices

struct Vec2 {
  Int x, y;
  bool operator==(const Vec2&) const = default;
};

/// A full-rank sublattice of Z^2 with basis rows
///   (first.x, first.y), (0, second.y)
/// in Hermite normal form: first.x > 0, second.y > 0, 0 <= first.y < second.y.
class Lattice2 {
 public:
  const Vec2& first() const { return first_; }
  const Vec2& second() const { return second_; }
  Int index() const { return first_.x * second_.y; }
  bool contains(const Vec2& v) const;

  bool operator==(const Lattice2&) const = default;

 private:
  friend Lattice2 hnf2(std::span<const Vec2> generators);
  Vec2 first_, second_;
};

/// Unique HNF basis of the lattice spanned by the generators. Throws
/// DegenerateLattice when the span has rank < 2.
Lattice2 hnf2(std::span<const Vec2> generators);

std::string to_string(const Int& v);

}  // namespace formclass
