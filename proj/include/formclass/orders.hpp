#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "formclass/forms.hpp"
#include "formclass/group_table.hpp"
#include "formclass/numtheory.hpp"

namespace formclass {

struct NotPrimeToModulus : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotClosed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The order of discriminant D in an imaginary quadratic field, with Z-basis
/// [1, tau], tau = (-b_O + sqrt(D)) / 2, b_O = D mod 2, c_O = (b_O^2 - D) / 4.
class ImagQuadOrder {
 public:
  /// Throws InvalidDiscriminant.
  explicit ImagQuadOrder(const Int& D);

  const Int& disc() const { return D_; }
  const Int& fundamental_disc() const { return dK_; }
  const Int& conductor() const { return ell_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  bool is_maximal() const { return ell_ == 1; }

  bool operator==(const ImagQuadOrder& o) const { return D_ == o.D_; }

 private:
  Int D_, dK_, ell_, b_, c_;
};

ImagQuadOrder order_from_disc(const Int& D);

/// u + v * tau for the order's tau.
struct QuadElem {
  Rat u, v;
  bool operator==(const QuadElem&) const = default;
};

QuadElem elem_mul(const ImagQuadOrder& O, const QuadElem& x, const QuadElem& y);
QuadElem elem_conj(const ImagQuadOrder& O, const QuadElem& x);
/// u^2 - b_O uv + c_O v^2
Rat elem_norm(const ImagQuadOrder& O, const QuadElem& x);
bool elem_is_integral(const QuadElem& x);
std::string to_string(const QuadElem& x);

/// The fractional ideal scale * (a Z + (-b + sqrt(D))/2 Z) with a > 0,
/// b in (-a, a] and b^2 = D mod 4a.
class OIdealLat {
 public:
  /// The order itself.
  explicit OIdealLat(const ImagQuadOrder& O);
  /// Throws std::invalid_argument unless (a, b) describes an O-ideal.
  OIdealLat(const ImagQuadOrder& O, Rat scale, Int a, Int b);

  /// Normalizes an integral lattice given in (v, u) coordinates of u + v tau.
  static OIdealLat from_lattice(const ImagQuadOrder& O, Rat scale, const Lattice2& lattice);
  /// The principal ideal x O (x != 0).
  static OIdealLat principal(const ImagQuadOrder& O, const QuadElem& x);

  const ImagQuadOrder& order() const { return O_; }
  const Rat& scale() const { return scale_; }
  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  /// (b^2 - D) / 4a
  Int c() const;

  /// Basis scale * a and scale * ((b_O - b)/2 + tau).
  std::pair<QuadElem, QuadElem> basis() const;
  /// The primitive part a Z + ((b_O - b)/2 + tau) Z in (v, u) coordinates.
  Lattice2 primitive_lattice() const;
  bool contains(const QuadElem& x) const;
  bool is_integral() const;

  bool operator==(const OIdealLat& o) const {
    return O_ == o.O_ && scale_ == o.scale_ && a_ == o.a_ && b_ == o.b_;
  }

 private:
  ImagQuadOrder O_;
  Rat scale_;
  Int a_, b_;
};

std::string to_string(const OIdealLat& I);

/// The ideal Z omega_Q + Z, normalized to scale 1/a and primitive part (a, b).
OIdealLat ideal_from_form(const ImagQuadOrder& O, const QuadForm& Q);
/// The form attached to the primitive part: (a, b, c).
QuadForm form_of_ideal(const OIdealLat& I);

OIdealLat mul(const OIdealLat& I, const OIdealLat& J);
OIdealLat conj(const OIdealLat& I);
Rat norm(const OIdealLat& I);
OIdealLat scaled(const OIdealLat& I, const Rat& factor);
/// conj(I) / norm(I); valid for proper ideals.
OIdealLat inverse(const OIdealLat& I);

/// The primitive part has norm prime to N and the scale's numerator and
/// denominator are prime to N.
bool prime_to(const OIdealLat& I, const Int& N);

/// True iff {x in K : x I subset I} is exactly O.
bool is_proper(const OIdealLat& I);

/// All x with x O = I, closed under units; empty iff I is not principal.
std::vector<QuadElem> principal_generators(const OIdealLat& I);

/// The unit group of O (order 2, 4 or 6).
std::vector<QuadElem> units(const ImagQuadOrder& O);

/// I in P_{1,N}(O, N): I = (nu1/nu2) O with nu1, nu2 = 1 mod NO.
///
/// Write I = (p/m) J with J primitive integral and p/m in lowest terms. If J
/// is not principal then neither is I. Otherwise J = g O and I = (alpha/m) O
/// with alpha = p g in O. If eps alpha nu2 = m nu1 with eps a unit and
/// nu1, nu2 = 1 mod NO, reducing mod NO gives eps alpha = m. Conversely if
/// eps alpha = m mod NO, take k with k m = 1 mod N; then nu1 = k eps alpha and
/// nu2 = k m are both 1 mod NO and nu1/nu2 = eps alpha / m. So the test is
/// whether some generator of p J is congruent to m mod NO.
///
/// Throws NotPrimeToModulus when I is not prime to N.
bool in_P1N(const OIdealLat& I, const Int& N);

/// Membership in the subgroup of I(O, M) generated by x O with x prime to M
/// and x = a mod M O for an integer a = 1 mod N; requires N | M. With
/// I = (alpha/m) O as above, the same reduction shows this holds iff some
/// generator of p J is congruent to a m mod M O with a = 1 mod N.
bool in_P1N_relative(const OIdealLat& I, const Int& N, const Int& M);

/// [I] = [J] in C(O, N).
bool class_equal(const OIdealLat& I, const OIdealLat& J, const Int& N);

/// Primitive proper integral ideals (a, b) with a <= bound, b in (-a, a],
/// in increasing (a, b) order.
std::vector<OIdealLat> primitive_ideals(const ImagQuadOrder& O, const Int& bound);

/// Residues u + v tau (0 <= u, v < N) of norm prime to N.
std::vector<QuadElem> residue_units(const ImagQuadOrder& O, Modulus n);
Modulus residue_unit_count(const ImagQuadOrder& O, Modulus n);
/// Number of distinct residues of units of O mod NO.
Modulus unit_image_size(const ImagQuadOrder& O, Modulus n);
/// h(O) |(O/NO)^x| / |image of O^x|, with h(O) counted by reduced forms.
Int ray_class_number(const ImagQuadOrder& O, Modulus n);

/// max(ceil(sqrt(|D| / 3)), N^2)
Int default_oracle_bound(const ImagQuadOrder& O, Modulus n);

struct RayClassGroup {
  std::vector<OIdealLat> reps;  ///< reps[0] = O
  ClassGroupTable table;
};

/// C(O, N) by closing prime-to-N ideals of norm <= bound together with the
/// principal ideals nu O for nu running over (O/NO)^x. Throws NotClosed if
/// the closure misses a level-one class, i.e. the bound was too small.
RayClassGroup ray_class_oracle(const ImagQuadOrder& O, Modulus n, const Int& bound);
/// ray_class_oracle from the default bound, doubling it after each NotClosed.
RayClassGroup ray_class_oracle(const ImagQuadOrder& O, Modulus n);

/// A cap (over O_K) intersected with O, for A integral and prime to ell * N.
OIdealLat contract(const OIdealLat& A, const ImagQuadOrder& O, const Int& N = 1);

struct ContractionReport {
  std::size_t samples = 0;
  bool multiplicative = true;
  /// Sampled A, B have equal classes in I(O_K, ell N) / P_{Z,N}(O_K, ell N)
  /// exactly when their contractions have equal classes in C(O, N).
  bool bijective = true;
  bool ok() const { return multiplicative && bijective; }
};

/// Contracts `samples` ideals of O_K prime to ell N (drawn with the seed) and
/// compares products and classes on both sides.
ContractionReport contraction_check(const Int& D, Modulus n, int samples, std::uint64_t seed);

}  // namespace formclass
