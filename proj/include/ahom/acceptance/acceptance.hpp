#pragma once

// The end-to-end acceptance suite, shared by the test binary and `selftest`.

#include "ahom/rayclass/rayclass.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ahom {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // counts on success, the first witness on failure
  double seconds = 0;
};

inline constexpr int kCriterionCount = 10;

/// Runs criterion id (1-based). Exceptions become failures.
CriterionResult run_criterion(int id, std::uint64_t seed = 0);
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0);

/// Up to max_size distinct primes of norm <= bound, chosen by rng.
Modulus random_modulus(const NumberField& k, std::mt19937_64& rng, long bound, std::size_t max_size);
/// Up to max_size distinct rational primes below 15.
std::vector<Integer> random_rational_primes(std::mt19937_64& rng, std::size_t max_size);
/// Q, Q(i), Q(sqrt -5): the fields of the randomized checks.
const std::vector<std::string>& random_check_fields();

}  // namespace ahom
