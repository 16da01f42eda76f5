#pragma once

// h_0 and h_1 of one-dimensional arithmetic schemes and the exact sequences
// relating them: Mayer-Vietoris in both variables, the Gysin sequence of a
// dense open, norm/extension composition and dense-open surjectivity.

#include "ahom/ffcurve/ffcurve.hpp"
#include "ahom/rayclass/rayclass.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ahom {

/// Spec O_k with the primes of sigma removed.
struct NumberRing {
  NumberField k;
  Modulus sigma;
};

/// P^1 over F_q with the places of sigma removed.
struct FFCurve {
  std::uint64_t q = 2;
  std::vector<Place> sigma;
};

using ArithScheme = std::variant<NumberRing, FFCurve>;

std::string describe(const ArithScheme& x);

/// h_i vanishes for i outside {0, 1}.
struct HomologyResult {
  AbelianGroup h0;
  AbelianGroup h1;
};

HomologyResult homology(const ArithScheme& x);

/// Outcome of a verification: exactness of a sequence, or an identity of maps.
struct CheckReport {
  std::string check;
  std::string config;
  bool ok = false;
  std::string witness;              // empty when ok
  std::vector<AbelianGroup> terms;  // groups of the sequence, left to right
  std::vector<GroupHom> maps;
};

/// Inclusion E^{1,m'}[1/T'] -> E^{1,m}[1/T] of relative unit groups.
GroupHom unit_inclusion(const NumberField& k, const RelativeUnitGroup& from,
                        const RelativeUnitGroup& to);

/// 0 -> h1(X1 n X2) -> h1(X1) + h1(X2) -> h1(X) -> h0(X1 n X2) -> h0(X1) + h0(X2)
///   -> h0(X) -> 0 for X_i = Spec O_{k, sigma_i} and X = X1 u X2.
CheckReport check_mv_open_cover(const NumberField& k, const Modulus& sigma1, const Modulus& sigma2);

/// h_i(X, U) for U the complement in Spec Z of the rational primes `removed`.
struct BivariantTerm {
  Modulus inverted;       // primes of k over the removed rational primes
  RayClassGroup classes;  // C_{sigma - inverted}
  AbelianGroup h0;        // classes modulo the inverted primes
  RelativeUnitGroup h1;   // inverted-units congruent to 1 modulo sigma - inverted
};

BivariantTerm bivariant_homology(const NumberRing& x, const std::vector<Integer>& removed);

/// The sequence over U u V, U + V, U n V with U, V cofinite in Spec Z, given by
/// the rational primes each omits.
CheckReport check_mv_second_variable(const NumberRing& x, const std::vector<Integer>& u_removed,
                                     const std::vector<Integer>& v_removed);

/// 0 -> h1(U) -> h1(X) -> prod_{P in D} k(P)^x -> h0(U) -> h0(X) -> 0 for
/// U = X - D; the third map sends the residue generator at P to the class of
/// an element lifting it and congruent to 1 at the other removed primes.
CheckReport check_gysin(const NumberRing& x, const Modulus& removed);
CheckReport check_gysin(const FFCurve& x, const std::vector<Place>& removed);

/// Norm and extension maps between C_{m'}(k') and C_m(Q) for a quadratic k'
/// and m' the primes above m.
struct NormPair {
  RayClassGroup upper;
  RayClassGroup lower;
  GroupHom push;  // f_*
  GroupHom pull;  // f^*
};

NormPair pushforward_norm(const NumberField& upper, const Modulus& sigma);
/// f_* o f^* equals multiplication by 2.
CheckReport check_norm_composition(const NumberField& upper, const Modulus& sigma);

/// h0(X - extra) -> h0(X) is surjective.
CheckReport check_dense_open_surjectivity(const NumberRing& x, const Modulus& extra);
CheckReport check_dense_open_surjectivity(const FFCurve& x, const std::vector<Place>& extra);

}  // namespace ahom
