#pragma once

#include <string>
#include <vector>

#include "formclass/matrix.hpp"
#include "formclass/numtheory.hpp"

namespace formclass {

struct NoWitness : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupSpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A subgroup of GL2(Z/NZ) with its element set materialized by closure.
class FiniteMatrixGroup {
 public:
  /// Closure of the generators under multiplication.
  static FiniteMatrixGroup generate(Modulus n, std::vector<ResidueMatrix> generators);
  /// Wraps an element set that must already be a group; generators are
  /// chosen greedily in element order, starting from `seed`.
  static FiniteMatrixGroup from_elements(Modulus n, const std::vector<ResidueMatrix>& elements,
                                         const std::vector<ResidueMatrix>& seed = {});

  Modulus modulus() const { return n_; }
  const std::vector<ResidueMatrix>& generators() const { return generators_; }
  /// Sorted element keys.
  const std::vector<MatrixKey>& keys() const { return keys_; }
  std::vector<ResidueMatrix> elements() const;
  std::size_t order() const { return keys_.size(); }

  bool contains(const ResidueMatrix& m) const;
  bool is_subgroup_of(const FiniteMatrixGroup& other) const;
  /// Determinants of all elements, sorted.
  std::vector<Modulus> determinants() const;

  bool operator==(const FiniteMatrixGroup& o) const { return n_ == o.n_ && keys_ == o.keys_; }

 private:
  Modulus n_ = 1;
  std::vector<ResidueMatrix> generators_;
  std::vector<MatrixKey> keys_;
};

/// A group Gamma with Gamma1(N) <= Gamma <= SL2(Z), represented by its image
/// mod N. The kernel of reduction lies in Gamma1(N), so the image determines
/// Gamma and membership depends only on the reduction.
class CongruenceGroup {
 public:
  /// Generated by Gamma1(N) and the given determinant-one integer matrices.
  static CongruenceGroup from_generators(Modulus n, std::vector<IntMatrix> generators,
                                         std::string label);
  /// Wraps an image that must lie in SL2(Z/NZ) and contain [[1,1],[0,1]].
  static CongruenceGroup from_image(FiniteMatrixGroup image, std::string label);

  Modulus level() const { return image_.modulus(); }
  const FiniteMatrixGroup& image() const { return image_; }
  /// Integer matrices whose reductions generate the image.
  const std::vector<IntMatrix>& generators() const { return generators_; }
  const std::string& label() const { return label_; }

  bool contains(const ResidueMatrix& m) const { return image_.contains(m); }
  bool contains_minus_identity() const;
  bool is_subgroup_of(const CongruenceGroup& o) const { return image_.is_subgroup_of(o.image_); }

 private:
  FiniteMatrixGroup image_;
  std::vector<IntMatrix> generators_;
  std::string label_;
};

CongruenceGroup sl2(Modulus n);
CongruenceGroup gamma1(Modulus n);
/// Lower-left entry = 0 mod M; requires M | N.
CongruenceGroup gamma0_image(Modulus m, Modulus n);
/// Matrices = [[t, *], [0, *]] mod N with t in the unit subgroup G.
CongruenceGroup gammaG(const std::vector<Modulus>& subgroup, Modulus n);
/// <Gamma, -I>
CongruenceGroup with_minus_identity(const CongruenceGroup& g);

/// Parses `sl2:N`, `gamma1:N`, `gamma0:M@N`, `gammaG:N:t1,t2,...`,
/// `gens:N:[[q,r,s,t],...]`.
CongruenceGroup parse_group(const std::string& spec);

/// True iff the integer matrix (det 1) reduces into the image.
bool member(const CongruenceGroup& g, const IntMatrix& m);

/// Deterministic determinant-one integer matrix reducing to m (det m = 1 mod N).
IntMatrix lift(const ResidueMatrix& m);

/// Representatives of the right cosets Gamma x in SL2(Z), identity first.
std::vector<IntMatrix> coset_reps(const CongruenceGroup& g);

/// Gamma <= Gamma0(M) as subgroups of SL2(Z).
bool contained_in_gamma0(const CongruenceGroup& g, Modulus m);

struct ShiftWitness {
  Modulus prime;
  IntMatrix matrix;  ///< in Gamma, prime | q and prime does not divide s
};

/// For square-free M >= 2 with Gamma not inside Gamma0(M): a prime p | M and
/// [[q, r], [s, t]] in Gamma with p | q, p not dividing s, obtained as
/// T^k gamma0 from any gamma0 in Gamma whose lower-left entry is nonzero mod M.
/// Throws NoWitness when Gamma <= Gamma0(M).
ShiftWitness unipotent_shift_witness(const CongruenceGroup& g, Modulus m);

struct UnitSubgroup {
  Modulus modulus;
  std::vector<Modulus> elements;  ///< sorted
  Modulus index;                  ///< in (Z/NZ)^x
  bool was_closed;                ///< input already a subgroup
  bool operator==(const UnitSubgroup&) const = default;
};

/// Multiplicative closure of a set of units mod N.
UnitSubgroup units_subgroup_closure(const std::vector<Modulus>& units, Modulus n);

/// All subgroups of (Z/NZ)^x, ordered by (size, elements).
std::vector<std::vector<Modulus>> unit_subgroups(Modulus n);

}  // namespace formclass
