#pragma once

// Finite fields F_q, q = p^e, and dense polynomials over them.
//
// Elements are encoded as integers in [0, q): the base-p digits are the
// coefficients of the element as a polynomial in the generator of the
// defining modulus (digit i <-> x^i). For e = 1 this is the usual residue.

#include "ahom/core/integer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ahom {

class FiniteField {
 public:
  using Elem = std::uint64_t;

  /// The prime field F_p.
  explicit FiniteField(std::uint64_t p);
  /// F_p[x] / (modulus); modulus monic irreducible of degree >= 1 over F_p,
  /// low-degree coefficient first.
  FiniteField(std::uint64_t p, std::vector<Elem> modulus);
  /// F_q with the lexicographically smallest monic irreducible modulus.
  static FiniteField of_order(std::uint64_t q);

  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint64_t order() const { return q_; }
  /// Monic modulus over F_p (length degree + 1). For prime fields this is x.
  const std::vector<Elem>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const { return sub(0, a); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, const Integer& n) const;
  /// The image of the integer n under Z -> F_q.
  Elem from_integer(const Integer& n) const;

  std::vector<Elem> digits(Elem a) const;
  Elem from_digits(const std::vector<Elem>& d) const;

  bool is_primitive(Elem a) const;
  /// Smallest encoded element of multiplicative order q - 1.
  Elem primitive_element() const;
  /// Discrete logarithm of a to the base of primitive_element(), in [0, q-1).
  Integer log(Elem a) const;

  std::string to_string(Elem a) const;
  bool operator==(const FiniteField& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
  }

 private:
  Elem mul_digits(Elem a, Elem b) const;
  void build_tables();

  std::uint64_t p_;
  unsigned e_;
  std::uint64_t q_;
  std::vector<Elem> modulus_;
  std::vector<std::pair<Integer, unsigned>> unit_order_factors_;
  Elem primitive_ = 0;
  // Zech-style tables for small extension fields.
  std::vector<std::uint32_t> exp_, log_;
};

/// Polynomial over F_q, low-degree coefficient first, no trailing zeros. The
/// zero polynomial is the empty vector.
using FqPoly = std::vector<FiniteField::Elem>;

namespace fq {

int degree(const FqPoly& f);
void trim(FqPoly& f);
FqPoly from_integers(const FiniteField& k, const std::vector<Integer>& coeffs);
FqPoly add(const FiniteField& k, const FqPoly& a, const FqPoly& b);
FqPoly sub(const FiniteField& k, const FqPoly& a, const FqPoly& b);
FqPoly scale(const FiniteField& k, const FqPoly& a, FiniteField::Elem c);
FqPoly mul(const FiniteField& k, const FqPoly& a, const FqPoly& b);
/// (quotient, remainder); b nonzero.
std::pair<FqPoly, FqPoly> divmod(const FiniteField& k, const FqPoly& a, const FqPoly& b);
FqPoly mod(const FiniteField& k, const FqPoly& a, const FqPoly& b);
FqPoly quo(const FiniteField& k, const FqPoly& a, const FqPoly& b);
FqPoly monic(const FiniteField& k, const FqPoly& a);
/// Monic gcd (zero if both inputs are zero).
FqPoly gcd(const FiniteField& k, const FqPoly& a, const FqPoly& b);
FqPoly powmod(const FiniteField& k, const FqPoly& base, const Integer& n, const FqPoly& m);
FqPoly derivative(const FiniteField& k, const FqPoly& f);
FiniteField::Elem eval(const FiniteField& k, const FqPoly& f, FiniteField::Elem x);
bool is_irreducible(const FiniteField& k, const FqPoly& f);
std::string to_string(const FiniteField& k, const FqPoly& f, const std::string& var = "x");

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// by coefficients (constant term first). The leading coefficient is dropped.
/// Cantor-Zassenhaus with a PRNG seeded from f and the field.
std::vector<std::pair<FqPoly, int>> factor(const FiniteField& k, const FqPoly& f);

/// Lexicographically smallest monic irreducible of the given degree over F_p
/// (coefficients read as a base-p number with the constant term least
/// significant).
FqPoly smallest_irreducible(std::uint64_t p, unsigned degree);

}  // namespace fq

}  // namespace ahom
