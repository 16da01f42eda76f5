#pragma once

// Residue unit groups (O/m)^x, ray class groups C_m for squarefree moduli,
// S-unit groups and units congruent to one modulo m.

#include "ahom/abgrp/group.hpp"
#include "ahom/classunit/classunit.hpp"
#include "ahom/numfield/number_field.hpp"

#include <string>
#include <vector>

namespace ahom {

/// A squarefree modulus: distinct primes, kept sorted.
class Modulus {
 public:
  Modulus() = default;
  /// Throws std::invalid_argument on a repeated prime.
  explicit Modulus(std::vector<PrimeIdeal> primes);
  /// Comma-separated prime selectors ("5,3:1"); empty string for no primes.
  static Modulus parse(const NumberField& k, const std::string& spec);

  const std::vector<PrimeIdeal>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }
  bool contains(const PrimeIdeal& p) const;
  /// Position of p, or -1.
  Index index_of(const PrimeIdeal& p) const;
  bool is_subset_of(const Modulus& other) const;
  Ideal ideal(const NumberField& k) const;
  std::string to_string() const;

  friend Modulus operator|(const Modulus& a, const Modulus& b);  // union
  friend Modulus operator&(const Modulus& a, const Modulus& b);  // intersection
  friend Modulus operator-(const Modulus& a, const Modulus& b);  // difference
  bool operator==(const Modulus& o) const { return primes_ == o.primes_; }

 private:
  std::vector<PrimeIdeal> primes_;
};

/// prod_{P | m} (O/P)^x, one cyclic factor per prime on the smallest
/// primitive residue.
struct ResidueUnitGroup {
  Modulus modulus;
  std::vector<Integer> orders;                  // N(P) - 1
  std::vector<FiniteField::Elem> generators;    // primitive residues
  AbelianGroup group;

  /// Discrete logs of an element that is a unit at every prime of m.
  IntVector dlog(const NumberField& k, const RatVector& a) const;
  /// An element of O congruent to generator i at prime i and to 1 at the others.
  IntVector lift_generator(const NumberField& k, std::size_t i) const;
};

ResidueUnitGroup residue_units(const NumberField& k, const Modulus& m);

/// Class and unit groups, computed once per field and shared.
const ClassGroup& cached_class_group(const NumberField& k);
const UnitGroup& cached_unit_group(const NumberField& k);

/// C_m(k): ideals coprime to m modulo principal ideals with a generator
/// congruent to 1 mod m.
///
/// Generators are the residue unit generators (one per prime of m) followed
/// by primes outside m whose classes generate Cl(k).
class RayClassGroup {
 public:
  RayClassGroup(NumberField k, Modulus m);

  const NumberField& field() const { return k_; }
  const Modulus& modulus() const { return m_; }
  const AbelianGroup& group() const { return group_; }
  const ResidueUnitGroup& residue() const { return residue_; }
  const std::vector<PrimeIdeal>& class_primes() const { return class_primes_; }

  /// Class of a fractional ideal coprime to m.
  IntVector class_of(const Ideal& a) const;
  IntVector class_of_prime(const PrimeIdeal& p) const;
  /// Class of (a) for an element that is a unit at every prime of m.
  IntVector class_of_element(const RatVector& a) const;
  /// Image of residue generator i.
  IntVector residue_generator(std::size_t i) const;

  /// E_k -> (O/m)^x, (O/m)^x -> C_m, C_m -> Cl(k), Cl(k) -> 0.
  GroupHom unit_map() const;
  GroupHom residue_map() const;
  GroupHom class_group_map() const;
  std::vector<GroupHom> exact_sequence() const;

 private:
  struct Decomposition {
    IntVector class_exponents;  // on class_primes_
    RatVector alpha;            // a = (alpha) * prod Q_j^{b_j}
  };
  Decomposition decompose(const Ideal& a) const;

  NumberField k_;
  Modulus m_;
  ResidueUnitGroup residue_;
  const ClassGroup* cl_;
  const UnitGroup* units_;
  std::vector<PrimeIdeal> class_primes_;
  std::vector<RatVector> class_prime_alpha_;  // Q_j = (beta_j) * prod G^{c_j}
  IntMatrix class_prime_classes_;             // columns c_j
  AbelianGroup group_;
};

RayClassGroup ray_class_group(const NumberField& k, const Modulus& m);

/// Natural map C_{m'} -> C_m for m contained in m' (same field).
GroupHom ray_class_restriction(const RayClassGroup& from, const RayClassGroup& to);

/// Units of O[1/T] for a finite prime set T: torsion, fundamental units, then
/// one generator per basis vector of the principal exponent lattice on T.
struct SUnitGroup {
  Modulus primes;
  UnitGroup units;
  std::vector<RatVector> extra;
  IntMatrix extra_valuations;  // |T| x extra.size()

  std::vector<RatVector> generators() const;
  AbelianGroup group() const;
  /// Exponents on generators(); std::domain_error if u is not a T-unit.
  IntVector exponents(const NumberField& k, const RatVector& u) const;
};

SUnitGroup s_unit_group(const NumberField& k, const Modulus& t);

/// T-units congruent to 1 modulo every prime of m outside T.
struct RelativeUnitGroup {
  Modulus modulus;
  Modulus inverted;
  SUnitGroup s_units;
  Subgroup subgroup;                 // inside s_units.group()
  std::vector<RatVector> generators;  // field elements of the subgroup generators

  const AbelianGroup& group() const { return subgroup.group; }
  /// Coordinates of a member on `generators`; std::domain_error otherwise.
  IntVector coordinates(const NumberField& k, const RatVector& u) const;
};

RelativeUnitGroup relative_units(const NumberField& k, const Modulus& m,
                                 const Modulus& inverted = Modulus());

/// Evaluates prod generators[i]^{e_i}.
RatVector power_product(const NumberField& k, const std::vector<RatVector>& generators,
                        const IntVector& exponents);

}  // namespace ahom
