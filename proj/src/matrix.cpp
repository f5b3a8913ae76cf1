#include "formclass/matrix.hpp"

#include <stdexcept>

namespace formclass {

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  return {q * o.q + r * o.s, q * o.r + r * o.t, s * o.q + t * o.s, s * o.r + t * o.t};
}

std::strong_ordering IntMatrix::operator<=>(const IntMatrix& o) const {
  for (auto [x, y] : {std::pair{&q, &o.q}, {&r, &o.r}, {&s, &o.s}, {&t, &o.t}}) {
    int c = cmp(*x, *y);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const IntMatrix& m) {
  return "[[" + m.q.get_str() + "," + m.r.get_str() + "],[" + m.s.get_str() + "," +
         m.t.get_str() + "]]";
}

// ---------------------------------------------------------------------------

static void check_level(Modulus n) {
  if (n < 1 || n > kMaxMatrixModulus) {
    throw std::invalid_argument("matrix level out of range: " + std::to_string(n));
  }
}

ResidueMatrix::ResidueMatrix(Modulus n, Modulus q, Modulus r, Modulus s, Modulus t) : n_(n) {
  check_level(n);
  e_ = {mod(q, n), mod(r, n), mod(s, n), mod(t, n)};
}

ResidueMatrix::ResidueMatrix(const IntMatrix& m, Modulus n) : n_(n) {
  check_level(n);
  e_ = {mod(m.q, n), mod(m.r, n), mod(m.s, n), mod(m.t, n)};
}

ResidueMatrix ResidueMatrix::from_key(MatrixKey key, Modulus n) {
  const auto un = static_cast<MatrixKey>(n);
  Modulus t = static_cast<Modulus>(key % un);
  key /= un;
  Modulus s = static_cast<Modulus>(key % un);
  key /= un;
  Modulus r = static_cast<Modulus>(key % un);
  key /= un;
  return {n, static_cast<Modulus>(key), r, s, t};
}

Modulus ResidueMatrix::det() const { return mod(e_[0] * e_[3] - e_[1] * e_[2], n_); }

ResidueMatrix ResidueMatrix::inverse() const {
  auto inv = inverse_mod(det(), n_);
  if (!inv) throw std::domain_error("matrix is not invertible mod " + std::to_string(n_));
  const Modulus d = *inv;
  return {n_, mod(d * e_[3], n_), mod(-d * e_[1], n_), mod(-d * e_[2], n_),
          mod(d * e_[0], n_)};
}

ResidueMatrix ResidueMatrix::operator*(const ResidueMatrix& o) const {
  if (o.n_ != n_) throw std::invalid_argument("matrix moduli differ");
  return {n_, e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
          e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]};
}

ResidueMatrix ResidueMatrix::operator-() const {
  return {n_, -e_[0], -e_[1], -e_[2], -e_[3]};
}

MatrixKey ResidueMatrix::key() const {
  const auto un = static_cast<MatrixKey>(n_);
  MatrixKey k = 0;
  for (Modulus v : e_) k = k * un + static_cast<MatrixKey>(v);
  return k;
}

std::string to_string(const ResidueMatrix& m) {
  return "[[" + std::to_string(m.q()) + "," + std::to_string(m.r()) + "],[" +
         std::to_string(m.s()) + "," + std::to_string(m.t()) + "]] mod " +
         std::to_string(m.modulus());
}

// ---------------------------------------------------------------------------

template <typename Keep>
static std::vector<ResidueMatrix> enumerate(Modulus n, Keep keep) {
  if (n < 1 || n > kMaxEnumerationLevel) {
    throw std::invalid_argument("level too large to enumerate: " + std::to_string(n));
  }
  std::vector<ResidueMatrix> out;
  for (Modulus q = 0; q < n; ++q)
    for (Modulus r = 0; r < n; ++r)
      for (Modulus s = 0; s < n; ++s)
        for (Modulus t = 0; t < n; ++t) {
          Modulus d = mod(q * t - r * s, n);
          if (keep(d)) out.emplace_back(n, q, r, s, t);
        }
  return out;
}

std::vector<ResidueMatrix> sl2_elements(Modulus n) {
  return enumerate(n, [n](Modulus d) { return d == mod(1, n); });
}

std::vector<ResidueMatrix> gl2_elements(Modulus n) {
  return enumerate(n, [n](Modulus d) { return gcd(d, n) == 1; });
}

}  // namespace formclass
