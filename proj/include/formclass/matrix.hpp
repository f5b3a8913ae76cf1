#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "formclass/numtheory.hpp"

namespace formclass {

/// Integer 2x2 matrix [[q, r], [s, t]]; the columns are (q, s) and (r, t).
struct IntMatrix {
  Int q, r, s, t;

  static IntMatrix identity() { return {1, 0, 0, 1}; }
  /// [[1, k], [0, 1]]
  static IntMatrix translation(const Int& k) { return {1, k, 0, 1}; }
  /// [[0, -1], [1, 0]]
  static IntMatrix inversion() { return {0, -1, 1, 0}; }

  Int det() const { return q * t - r * s; }
  bool is_unimodular() const { return det() == 1; }
  /// Inverse of a determinant-one matrix.
  IntMatrix inverse() const { return {t, -r, -s, q}; }
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator-() const { return {-q, -r, -s, -t}; }

  bool operator==(const IntMatrix& o) const = default;
  std::strong_ordering operator<=>(const IntMatrix& o) const;
};

std::string to_string(const IntMatrix& m);

using MatrixKey = std::uint64_t;

/// A 2x2 matrix over Z/NZ with entries stored in [0, N).
class ResidueMatrix {
 public:
  ResidueMatrix(Modulus n, Modulus q, Modulus r, Modulus s, Modulus t);
  ResidueMatrix(const IntMatrix& m, Modulus n);

  static ResidueMatrix identity(Modulus n) { return {n, 1, 0, 0, 1}; }
  static ResidueMatrix diagonal(Modulus n, Modulus top, Modulus bottom) {
    return {n, top, 0, 0, bottom};
  }
  static ResidueMatrix from_key(MatrixKey key, Modulus n);

  Modulus modulus() const { return n_; }
  Modulus q() const { return e_[0]; }
  Modulus r() const { return e_[1]; }
  Modulus s() const { return e_[2]; }
  Modulus t() const { return e_[3]; }

  Modulus det() const;
  bool is_invertible() const { return gcd(det(), n_) == 1; }
  ResidueMatrix inverse() const;
  ResidueMatrix operator*(const ResidueMatrix& o) const;
  ResidueMatrix operator-() const;

  /// Injective encoding of the entries; order-compatible with lexicographic
  /// order on (q, r, s, t).
  MatrixKey key() const;

  bool operator==(const ResidueMatrix& o) const = default;
  auto operator<=>(const ResidueMatrix& o) const = default;

 private:
  Modulus n_;
  std::array<Modulus, 4> e_;
};

std::string to_string(const ResidueMatrix& m);

/// Largest modulus for ResidueMatrix (keys must fit in 64 bits).
inline constexpr Modulus kMaxMatrixModulus = 1 << 15;
/// Largest level for which SL2/GL2 over Z/NZ are enumerated.
inline constexpr Modulus kMaxEnumerationLevel = 64;

/// All elements of SL2(Z/NZ) in increasing key order.
std::vector<ResidueMatrix> sl2_elements(Modulus n);
/// All elements of GL2(Z/NZ) in increasing key order.
std::vector<ResidueMatrix> gl2_elements(Modulus n);

}  // namespace formclass
