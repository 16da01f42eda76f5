#pragma once

// Number fields with a monogenic maximal order O = Z[w], their elements,
// prime ideals and fractional ideals in Hermite form.
//
// Elements are rational coordinate vectors on 1, w, ..., w^{n-1}, where w is
// the order generator: for quadratic fields the standard integral basis
// element, otherwise the root of the defining polynomial itself.

#include "ahom/abgrp/normal_form.hpp"
#include "ahom/numfield/finite_field.hpp"
#include "ahom/numfield/polynomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace ahom {

using RatVector = Vec<Rational>;
using RatMatrix = Mat<Rational>;

/// A nonzero prime of O: P = (p, generator), with residue field O/P.
struct PrimeIdeal {
  Integer p;
  int index = 0;            // position among the primes above p
  int above = 1;            // number of primes above p
  int e = 1;                // ramification index
  int f = 1;                // residue degree
  IntVector generator;      // second element of the two-element form
  IntMatrix hnf;            // Z-basis of P
  IntVector beta;           // beta P in pO, beta not in pO
  IntVector crt_unit;       // = 1 mod P, divisible by the other primes above p to their e
  FqPoly residue_poly;      // irreducible factor of the order polynomial mod p
  std::shared_ptr<const FiniteField> residue_field;

  Integer norm() const { return ipow(p, static_cast<unsigned>(f)); }
  /// "p" when p has a single prime above it, else "p:i".
  std::string label() const;
  bool operator==(const PrimeIdeal& o) const { return p == o.p && index == o.index; }
  bool operator<(const PrimeIdeal& o) const { return p != o.p ? p < o.p : index < o.index; }
};

/// Fractional ideal num / den; num is the n x n Hermite basis of an integral
/// ideal and gcd(content(num), den) == 1.
struct Ideal {
  IntMatrix num;
  Integer den = 1;
  bool operator==(const Ideal& o) const { return den == o.den && num == o.num; }
  bool operator!=(const Ideal& o) const { return !(*this == o); }
};

using IdealFactorization = std::vector<std::pair<PrimeIdeal, int>>;

class NumberField {
 public:
  /// Q, with order polynomial x.
  NumberField();
  /// Field generated by a root of a monic irreducible integer polynomial.
  /// Throws UnsupportedError when the maximal order cannot be certified.
  explicit NumberField(const ZPoly& defining_poly);
  /// "Q" or a polynomial such as "x^2+5".
  static NumberField parse(const std::string& spec);

  int degree() const { return d_->n; }
  const ZPoly& defining_poly() const { return d_->defining; }
  /// Minimal polynomial of w.
  const ZPoly& order_poly() const { return d_->order; }
  /// Row i expresses w^i in the power basis of a root of defining_poly().
  const RatMatrix& integral_basis() const { return d_->basis; }
  const Integer& discriminant() const { return d_->disc; }
  std::pair<int, int> signature() const { return {d_->r1, d_->r2}; }
  int unit_rank() const { return d_->r1 + d_->r2 - 1; }
  bool is_rational() const { return d_->n == 1; }
  bool is_quadratic() const { return d_->n == 2; }
  /// Squarefree d with k = Q(sqrt d), for quadratic fields.
  const Integer& quadratic_radicand() const { return d_->radicand; }
  std::string spec() const;
  bool same_field(const NumberField& o) const { return d_ == o.d_ || d_->order == o.d_->order; }

  // Elements.
  RatVector zero() const { return RatVector::Zero(d_->n); }
  RatVector one() const { return from_integer(Integer(1)); }
  RatVector from_integer(const Integer& a) const;
  RatVector from_integral(const IntVector& a) const;
  RatVector generator() const;
  RatVector mul(const RatVector& a, const RatVector& b) const;
  IntVector mul(const IntVector& a, const IntVector& b) const;
  RatVector inv(const RatVector& a) const;
  RatVector div(const RatVector& a, const RatVector& b) const { return mul(a, inv(b)); }
  RatVector pow(const RatVector& a, long n) const;
  IntVector pow(const IntVector& a, unsigned long n) const;
  Rational norm(const RatVector& a) const;
  Rational trace(const RatVector& a) const;
  /// Matrix of multiplication by a on coordinate columns.
  RatMatrix mult_matrix(const RatVector& a) const;
  IntMatrix mult_matrix(const IntVector& a) const;
  bool is_integral(const RatVector& a) const;
  IntVector to_integral(const RatVector& a) const;  // throws if not integral
  /// Least positive integer d with d * a integral.
  Integer denominator(const RatVector& a) const;
  bool is_zero(const RatVector& a) const { return a.isZero(); }
  std::string to_string(const RatVector& a) const;

  // Primes.
  /// Primes above p sorted by generator coefficients (Kummer-Dedekind).
  std::vector<PrimeIdeal> primes_above(const Integer& p) const;
  /// Selector "p" (requires a unique prime above p) or "p:i".
  PrimeIdeal prime(const std::string& selector) const;
  /// All primes of norm <= bound, ordered by (p, index).
  std::vector<PrimeIdeal> primes_up_to_norm(const Integer& bound) const;

  int valuation(const RatVector& a, const PrimeIdeal& P) const;
  /// Image in O/P of an element with nonnegative valuation at P.
  FiniteField::Elem residue(const RatVector& a, const PrimeIdeal& P) const;
  /// Canonical lift of a residue to O (coordinates in [0, p)).
  IntVector lift_residue(FiniteField::Elem r, const PrimeIdeal& P) const;

  // Ideals.
  Ideal unit_ideal() const;
  Ideal ideal(const std::vector<RatVector>& generators) const;
  Ideal principal_ideal(const RatVector& a) const { return ideal({a}); }
  /// Integral lattice given by columns; checked to be a full-rank O-module.
  Ideal ideal_from_lattice(const IntMatrix& columns, const Integer& den = 1) const;
  Ideal ideal_of(const PrimeIdeal& P) const { return Ideal{P.hnf, 1}; }
  Ideal mul(const Ideal& a, const Ideal& b) const;
  Ideal pow(const Ideal& a, int n) const;  // n >= 0
  Ideal sum(const Ideal& a, const Ideal& b) const;
  Rational norm(const Ideal& a) const;
  bool contains(const Ideal& a, const RatVector& x) const;
  bool is_integral(const Ideal& a) const { return a.den == 1; }
  IdealFactorization factor(const Ideal& a) const;
  Ideal from_factorization(const IdealFactorization& f) const;

  /// x in a with 1 - x in b, for coprime integral ideals.
  IntVector crt_split(const Ideal& a, const Ideal& b) const;
  /// x in O with x == targets[i] mod primes[i] (distinct primes).
  IntVector crt(const std::vector<PrimeIdeal>& primes, const std::vector<IntVector>& targets) const;
  /// Representative of x modulo the integral ideal a, coordinates reduced
  /// against its Hermite basis.
  IntVector reduce_mod(const IntVector& x, const Ideal& a) const;

 private:
  struct Data {
    int n = 1;
    ZPoly defining, order;
    RatMatrix basis;
    Integer disc, radicand;
    int r1 = 1, r2 = 0;
    IntMatrix reduce;  // n x (2n-1): coordinates of w^k
  };
  struct Cache {
    std::mutex lock;
    std::map<Integer, std::vector<PrimeIdeal>> primes;
  };
  void init_common();
  std::vector<PrimeIdeal> split(const Integer& p) const;
  Ideal normalize(IntMatrix num, Integer den) const;
  int integral_valuation(IntVector a, const PrimeIdeal& P) const;
  FiniteField::Elem integral_residue(const IntVector& a, const PrimeIdeal& P) const;

  std::shared_ptr<const Data> d_;
  std::shared_ptr<Cache> cache_;
};

/// Whether p does not divide the index [O_k : Z[a]] for a root a of f.
bool dedekind_is_maximal(const ZPoly& f, const Integer& p);

/// Factorization of f mod p into monic irreducibles with multiplicities.
std::vector<std::pair<FqPoly, int>> factor_poly_mod_p(const ZPoly& f, const Integer& p);

}  // namespace ahom
