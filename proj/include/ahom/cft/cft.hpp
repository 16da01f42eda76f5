#pragma once

// Reciprocity for Spec Z[1/m] and for open subsets of P^1 over F_q, against
// explicit models of the abelianized tame fundamental group:
// (Z/m)^x / {+-1} with Frobenius p -> p mod m, and over F_q(t) the product of
// residue field units modulo constants times the degree part Zhat.

#include "ahom/cycles/cycles.hpp"
#include "ahom/ffcurve/ffcurve.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ahom {

/// (Z/m)^x / {+-1}, built by plain modular arithmetic: cyclic generators for
/// each prime-power factor (a primitive root, or -1 and 5 modulo 2^k, k >= 3).
class TameGaloisQ {
 public:
  /// Throws std::invalid_argument unless 1 <= m <= 10^6.
  explicit TameGaloisQ(const Integer& m);

  const Integer& modulus() const { return m_; }
  const AbelianGroup& group() const { return group_; }
  /// Class of a mod m; a must be coprime to m.
  IntVector element_of_residue(const Integer& a) const;
  /// Frobenius of a prime not dividing m.
  IntVector frobenius_of(const Integer& p) const { return element_of_residue(p); }

 private:
  struct Component {
    long modulus;                         // p^k
    std::vector<long> orders;             // of its generators
    std::vector<std::vector<long>> logs;  // logs[r] = exponents of residue r
    Index offset;
  };
  Integer m_;
  std::vector<Component> components_;
  AbelianGroup group_;
};

/// sum n_i Frob(p_i); std::invalid_argument when the support meets m.
IntVector rec_q(const TameGaloisQ& g, const ZeroCycle& c);

struct ReciprocityReport {
  std::string check;
  std::string config;
  AbelianGroup source;  // h_0 side (degree-zero part over F_q(t))
  AbelianGroup target;  // Galois side (degree-zero part over F_q(t))
  IntMatrix matrix;
  bool injective = false;
  bool surjective = false;
  bool degree_compatible = true;
  std::string kernel_witness;  // nonzero kernel element, when not injective
  std::string cokernel;        // "trivial", a group, or a symbolic token
  bool oracle_checked = false;
  bool oracle_isomorphism = false;

  bool ok() const {
    return injective && surjective && degree_compatible && (!oracle_checked || oracle_isomorphism);
  }
};

/// The map C_m(Q) -> (Z/m)^x / {+-1} induced by rec on ideals, certified an
/// isomorphism by Smith forms. With oracle bounds, also checks that the
/// simplicial presentation maps isomorphically.
ReciprocityReport verify_tameclassfield_q(const Integer& m,
                                          const std::optional<OracleBounds>& oracle = std::nullopt);

/// Galois side over F_q(t) for X = P^1 - sigma: the degree-zero part
/// (prod_{P in sigma} k(P)^x) / F_q^x and a degree-one divisor outside sigma
/// that splits off the degree part.
class TameGaloisFF {
 public:
  TameGaloisFF(std::uint64_t q, std::vector<Place> sigma);

  std::uint64_t q() const { return field_->order(); }
  const std::vector<Place>& sigma() const { return sigma_; }
  const AbelianGroup& degree_zero() const { return degree_zero_; }
  const FFDivisor& splitting() const { return splitting_; }

  /// Residue logs at sigma of a function with divisor d (degree zero, away
  /// from sigma), well defined modulo constants.
  IntVector rec0(const FFDivisor& d) const;
  /// Degree-zero component and degree of rec(d).
  std::pair<IntVector, long> rec(const FFDivisor& d) const;

 private:
  std::shared_ptr<const FiniteField> field_;
  std::vector<Place> sigma_;
  std::vector<PlaceResidues> residues_;
  AbelianGroup degree_zero_;
  FFDivisor splitting_;
};

/// Degree-zero reciprocity Pic^0(P^1, sigma) -> Galois^0 is an isomorphism and
/// deg rec = deg on Pic. The cokernel of the full map is Zhat/Z, reported
/// symbolically.
ReciprocityReport verify_ff_rec0(std::uint64_t q, const std::vector<Place>& sigma);

/// The symbol used for the cokernel of function-field reciprocity.
inline constexpr const char* kZhatModZ = "Zhat/Z (uniquely divisible; symbolic)";

}  // namespace ahom
