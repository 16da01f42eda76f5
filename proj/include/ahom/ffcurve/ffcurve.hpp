#pragma once

// Places, divisors and relative Picard groups of open subsets of the
// projective line over a finite field F_q.

#include "ahom/abgrp/group.hpp"
#include "ahom/numfield/finite_field.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace ahom {

/// Largest supported field size.
inline constexpr std::uint64_t kMaxFieldOrder = 1u << 16;

/// F_q with the lexicographically smallest irreducible modulus; q <= 2^16.
std::shared_ptr<const FiniteField> function_field_constants(std::uint64_t q);

/// A closed point of P^1: a monic irreducible polynomial in t, or infinity.
struct Place {
  bool infinite = false;
  FqPoly pi;  // monic irreducible when finite

  static Place at_infinity() { return Place{true, {}}; }
  /// "inf" or a monic irreducible such as "t^2+t+2"; for q = p^e with e > 1,
  /// coefficients are elements in their base-p digit encoding.
  static Place parse(const FiniteField& f, const std::string& text);

  int degree() const { return infinite ? 1 : static_cast<int>(pi.size()) - 1; }
  std::string to_string(const FiniteField& f) const;

  /// Finite places by (degree, coefficients from the top); infinity last.
  bool operator<(const Place& o) const;
  bool operator==(const Place& o) const { return infinite == o.infinite && pi == o.pi; }
};

/// Sorted list of places; throws std::invalid_argument on repeats.
std::vector<Place> parse_places(const FiniteField& f, const std::string& text);

/// Finite support sum of n_P P, sorted by place, no zero coefficients.
using FFDivisor = std::vector<std::pair<Place, long>>;

FFDivisor normalize(FFDivisor d);
long degree(const FFDivisor& d);
std::string to_string(const FiniteField& f, const FFDivisor& d);

/// num / den with den nonzero.
struct RationalFunction {
  FqPoly num;
  FqPoly den;
};

int valuation(const FiniteField& f, const RationalFunction& g, const Place& p);
/// Divisor of a nonzero rational function.
FFDivisor divisor(const FiniteField& f, const RationalFunction& g);

/// The multiplicative group of the residue field F_q[t]/(pi) (F_q at
/// infinity), with the smallest encoded primitive element as generator.
class PlaceResidues {
 public:
  PlaceResidues(std::shared_ptr<const FiniteField> f, const Place& p);

  const Place& place() const { return place_; }
  const Integer& order() const { return order_; }  // q^deg - 1
  const FqPoly& generator() const { return generator_; }
  /// Residue of a function with valuation zero at the place.
  FqPoly residue(const RationalFunction& g) const;
  Integer log(const FqPoly& residue) const;

  // Group interface for cyclic_log.
  FqPoly one() const { return FqPoly{1}; }
  FqPoly mul(const FqPoly& a, const FqPoly& b) const;
  FqPoly pow(const FqPoly& a, const Integer& n) const;

 private:
  std::shared_ptr<const FiniteField> f_;
  Place place_;
  FqPoly modulus_;
  Integer order_;
  std::vector<std::pair<Integer, unsigned>> factors_;
  FqPoly generator_;
};

/// Pic(P^1, Sigma) for X = P^1 - Sigma, built from
///   F_q^x -> prod_{P in Sigma} k(P)^x -> Pic(P^1, Sigma) -> Z -> 0.
///
/// Generators: one residue generator per place of Sigma, then places outside
/// Sigma whose degrees have gcd 1.
class FFPicard {
 public:
  FFPicard(std::uint64_t q, std::vector<Place> sigma);

  std::uint64_t q() const { return field_->order(); }
  const FiniteField& field() const { return *field_; }
  const std::vector<Place>& sigma() const { return sigma_; }
  const AbelianGroup& group() const { return group_; }
  const std::vector<Place>& degree_places() const { return degree_places_; }
  const AbelianGroup& residue_group() const { return residue_group_; }
  const std::vector<PlaceResidues>& residues() const { return residues_; }

  /// dlogs at every place of Sigma of a function that is a unit there.
  IntVector dlog(const RationalFunction& g) const;
  IntVector class_of(const FFDivisor& d) const;
  IntVector class_of_place(const Place& p) const;
  /// Class of div(g) for g a unit at every place of Sigma.
  IntVector class_of_function(const RationalFunction& g) const;

  GroupHom constants_map() const;  // F_q^x -> residues
  GroupHom residue_map() const;    // residues -> Pic
  GroupHom degree_map() const;     // Pic -> Z
  std::vector<GroupHom> exact_sequence() const;
  Subgroup degree_zero() const;

 private:
  std::shared_ptr<const FiniteField> field_;
  std::vector<Place> sigma_;
  std::vector<PlaceResidues> residues_;
  AbelianGroup residue_group_;
  std::vector<Place> degree_places_;
  AbelianGroup group_;
};

/// h_0 of P^1_q - Sigma (never empty: Sigma is finite).
FFPicard ff_h0(std::uint64_t q, const std::vector<Place>& sigma);

/// h_1: constants congruent to 1 at Sigma, i.e. F_q^x when Sigma is empty and
/// trivial otherwise.
struct FFUnits {
  AbelianGroup group;
  std::vector<FiniteField::Elem> generators;
};
FFUnits ff_h1(std::uint64_t q, const std::vector<Place>& sigma);

/// Divisor of f, after checking f == 1 at every place of Sigma
/// (valuation of f - 1 positive). Throws std::invalid_argument naming the
/// first failing place.
FFDivisor ff_div(const FiniteField& f, const RationalFunction& g, const std::vector<Place>& sigma);

/// Natural map Pic(P^1, Sigma') -> Pic(P^1, Sigma) for Sigma inside Sigma'.
GroupHom ff_restriction(const FFPicard& from, const FFPicard& to);

/// Monic irreducibles of the given degree in increasing order.
std::vector<FqPoly> monic_irreducibles(const FiniteField& f, int degree);

}  // namespace ahom
