#pragma once

// Zero-cycles on Spec O_k minus a modulus, their ray classes, and the
// truncated simplicial presentation of h_0 over Q: free on primes, modulo the
// boundaries Z|_{t=0} - Z|_{t=1} of curves Z in Spec Z x A^1.

#include "ahom/rayclass/rayclass.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ahom {

/// Sum of n_P P over primes, sorted, without zero coefficients.
using ZeroCycle = std::vector<std::pair<PrimeIdeal, long>>;

ZeroCycle normalize(ZeroCycle c);
std::string to_string(const ZeroCycle& c);

/// div(f) for f congruent to 1 modulo every prime of sigma. Throws
/// std::invalid_argument naming the first prime where that fails.
ZeroCycle div_of_element(const NumberField& k, const RatVector& f, const Modulus& sigma);

/// Ray class of a cycle whose support avoids the modulus.
IntVector class_of_cycle(const RayClassGroup& g, const ZeroCycle& c);

/// A height-one prime of Z[t]: the zero set of an irreducible primitive
/// polynomial with positive leading coefficient, or a fibre p x A^1.
struct OneCycle {
  bool vertical = false;
  Integer p;    // vertical case
  ZPoly g;      // horizontal case, in t

  static OneCycle horizontal(ZPoly g);
  static OneCycle fibre(const Integer& p) { return OneCycle{true, p, {}}; }
  std::string to_string() const;
};

/// Checks that z is an admissible generator over Spec Z[1/m]: g irreducible
/// and primitive, g(0) and g(1) nonzero, and g a nonzero constant modulo
/// every prime of sigma (a fibre must lie over a prime outside sigma).
/// Throws std::invalid_argument with the reason.
void check_one_cycle(const OneCycle& z, const Modulus& sigma);

/// d_1(z) = z|_{t=0} - z|_{t=1}, as a cycle on Spec Z.
ZeroCycle boundary_d1(const NumberField& q, const OneCycle& z, const Modulus& sigma);

struct OracleBounds {
  int degree = 2;
  long height = 300;
  long primes = 50;
};

struct OracleResult {
  std::vector<PrimeIdeal> generators;  // primes up to the bound, outside sigma
  AbelianGroup group;                  // free on generators modulo boundaries
  IntMatrix comparison;                // generator images in the ray class group
  AbelianGroup target;
  long curves_used = 0;      // admissible curves with distinct boundaries in range
  long relations_used = 0;   // relations that enlarged the lattice
  bool injective = false;
  bool surjective = false;
  /// The comparison map is an isomorphism, so further curves cannot shrink
  /// the quotient.
  bool stable() const { return injective && surjective; }
};

/// Truncated h_0 of Spec Z[1/m] from curves of degree <= bounds.degree with
/// coefficients in [-height, height], and its comparison with C_m(Q).
/// UnsupportedError unless k = Q; BoundExceededError when the enumeration
/// would exceed 10^9 polynomials.
OracleResult oracle_h0(const NumberField& k, const Modulus& sigma, const OracleBounds& bounds);

}  // namespace ahom
