#pragma once

// Integer primality and factorization at desk scale.

#include "ahom/core/integer.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ahom {

/// Miller-Rabin with fixed bases; deterministic for n < 3.3e24 and a strong
/// probable-prime test beyond.
bool is_prime(const Integer& n);

/// Prime factorization of |n| (n != 0), primes ascending. Trial division up to
/// 10^6, then Pollard rho (Brent) with a fixed seed. Throws BoundExceededError
/// if a composite cofactor resists rho.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);

/// Exponent of p in n (n != 0).
unsigned valuation(const Integer& n, const Integer& p);

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

Integer squarefree_part(const Integer& n);
bool is_squarefree(const Integer& n);

}  // namespace ahom
