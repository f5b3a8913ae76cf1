#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "formclass/matrix.hpp"
#include "formclass/numtheory.hpp"

namespace formclass {

struct InvalidDiscriminant : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidForm : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidDiscriminant unless D < 0 and D = 0, 1 mod 4.
void check_discriminant(const Int& D);

/// Primitive positive definite binary quadratic form a x^2 + b xy + c y^2.
class QuadForm {
 public:
  /// Throws InvalidForm unless a > 0, b^2 - 4ac < 0 and gcd(a, b, c) = 1.
  QuadForm(Int a, Int b, Int c);

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }

  Int discriminant() const { return b_ * b_ - 4 * a_ * c_; }
  Int operator()(const Int& x, const Int& y) const { return a_ * x * x + b_ * x * y + c_ * y * y; }

  bool operator==(const QuadForm&) const = default;
  std::strong_ordering operator<=>(const QuadForm& o) const;

 private:
  Int a_, b_, c_;
};

std::string to_string(const QuadForm& f);

/// The point r + s * sqrt(D) of the upper half-plane (s > 0, D < 0).
struct QuadPoint {
  Rat r, s;
  Int D;
  bool operator==(const QuadPoint&) const = default;
};

Int discriminant(const QuadForm& f);

/// x^2 + xy + (1 - D)/4 y^2 for odd D, x^2 - D/4 y^2 for even D.
QuadForm principal_form(const Int& D);

/// The root (-b + sqrt(D)) / (2a) of f(x, 1) in the upper half-plane.
QuadPoint omega(const QuadForm& f);

/// f^g(x, y) = f(g (x, y)^T). Right action: act(act(f, g), h) = act(f, g h).
/// Throws std::invalid_argument when det g != 1.
QuadForm act(const QuadForm& f, const IntMatrix& g);

/// Coefficient of x^2 in act(f, g), i.e. f(q, s) for the first column (q, s).
Int coeff_x2(const QuadForm& f, const IntMatrix& g);

bool is_reduced(const QuadForm& f);

struct Reduction {
  QuadForm form;
  IntMatrix witness;  ///< act(input, witness) == form
};

/// Gauss reduction to the unique reduced form |b| <= a <= c (b >= 0 if
/// |b| = a or a = c) of the SL2(Z)-class, with a transformation witness.
Reduction reduce(const QuadForm& f);

/// All reduced primitive forms of discriminant D in increasing (a, b, c) order.
std::vector<QuadForm> reduced_forms(const Int& D);

/// The SL2(Z)-stabilizer of f, identity first.
std::vector<IntMatrix> automorphs(const QuadForm& f);

/// All (x, y) with a x^2 + b xy + c y^2 = m, sorted; requires b^2 - 4ac < 0, a > 0.
std::vector<std::pair<Int, Int>> represent(const Int& a, const Int& b, const Int& c,
                                           const Int& m);
std::vector<std::pair<Int, Int>> represent(const QuadForm& f, const Int& m);

// ---------------------------------------------------------------------------
// Forms reduced modulo N

struct ResidueForm {
  Modulus a, b, c;
  auto operator<=>(const ResidueForm&) const = default;
};

std::string to_string(const ResidueForm& f);

ResidueForm reduce_mod(const QuadForm& f, Modulus n);
ResidueForm act_mod(const ResidueForm& f, const ResidueMatrix& g);

/// One preimage of a residue triple: act(reduced, lift of g) reduces to it.
struct ResidueSource {
  QuadForm reduced;
  ResidueMatrix g;
};

/// Exactly the set {f mod N : f in Q(D, N)}, keyed by residue triple. The
/// recorded source is the first hit in (reduced form, SL2(Z/NZ) element) order.
std::map<ResidueForm, ResidueSource> residue_form_sources(const Int& D, Modulus n);

/// Sorted residue triples of residue_form_sources.
std::vector<ResidueForm> residue_forms(const Int& D, Modulus n);

}  // namespace formclass
