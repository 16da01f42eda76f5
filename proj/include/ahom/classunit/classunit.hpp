#pragma once

// Unit groups, principal ideal testing and ideal class groups.
//
// Exact algorithms for Q and quadratic fields. Beyond degree 2 only bounded
// principal-generator searches are available, which can certify a trivial
// class group but nothing else.

#include "ahom/abgrp/group.hpp"
#include "ahom/numfield/number_field.hpp"

#include <optional>
#include <vector>

namespace ahom {

struct UnitGroup {
  int torsion_order = 2;
  RatVector torsion_generator;
  std::vector<RatVector> fundamental_units;

  /// Torsion generator first, then the fundamental units.
  std::vector<RatVector> generators() const;
  /// Z/w + Z^r on generators().
  AbelianGroup group() const;
};

/// Torsion by enumerating norm-one elements (imaginary quadratic) and the
/// fundamental unit > 1 from the continued fraction of the reduced quadratic
/// irrational (real quadratic). UnsupportedError for unit rank >= 2 or
/// degree > 2.
UnitGroup unit_group(const NumberField& k);

/// Exponent vector of a unit on unit_group generators, torsion exponent in
/// [0, w). Throws std::domain_error when the input is not a unit.
IntVector unit_exponents(const NumberField& k, const UnitGroup& units, const RatVector& u);

/// Default budget for principal-generator searches (number of candidate
/// second coordinates, or box points beyond degree 2).
inline const Integer kPrincipalSearchBudget = 10'000'000;

/// A generator of a, or std::nullopt if a is not principal. For degree <= 2
/// the search is exhaustive within proven bounds; beyond that a bounded
/// search that throws BoundExceededError when nothing is found.
std::optional<RatVector> is_principal(const NumberField& k, const Ideal& a,
                                      const Integer& budget = kPrincipalSearchBudget);

struct ClassGroup {
  AbelianGroup group;                 // presented on `generators`
  std::vector<PrimeIdeal> generators;
  /// For relation column j: prod_i generators[i]^{r_ij} = (witnesses[j]).
  std::vector<RatVector> witnesses;
};

/// Generated by the primes of norm up to the Minkowski bound; relations are
/// found incrementally as the least power of each new prime lying in the
/// subgroup of the previous ones, each backed by a principal witness.
ClassGroup class_group(const NumberField& k);

/// a = (alpha) * prod_i generators[i]^{exponents_i}.
struct ClassDecomposition {
  IntVector exponents;
  RatVector alpha;
};
ClassDecomposition decompose_class(const NumberField& k, const ClassGroup& cl, const Ideal& a);

/// Minkowski bound (n!/n^n)(4/pi)^{r2} sqrt|D|, rounded up.
Integer minkowski_bound(const NumberField& k);

}  // namespace ahom
