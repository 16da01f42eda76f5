#include "ahom/numfield/integer_factor.hpp"

#include "ahom/core/errors.hpp"

#include <algorithm>
#include <map>

namespace ahom {

namespace {

constexpr std::uint64_t kTrialBound = 1'000'000;

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = primes_up_to(kTrialBound);
  return primes;
}

bool strong_probable_prime(const Integer& n, const Integer& a) {
  Integer d = n - 1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  Integer x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
Integer rho(const Integer& n, std::uint64_t seed) {
  Integer c = seed % 1000 + 1;
  Integer y = (seed * 7919) % n, g = 1, r = 1, q = 1, x, ys;
  const std::uint64_t m = 128;
  auto f = [&](const Integer& v) { return (v * v + c) % n; };
  for (int outer = 0; g == 1 && outer < 40; ++outer) {
    x = y;
    for (Integer i = 0; i < r; ++i) y = f(y);
    Integer k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (std::uint64_t i = 0; i < m && k + i < r; ++i) {
        y = f(y);
        q = q * abs_value(Integer(x - y)) % n;
      }
      g = gcd_of(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd_of(abs_value(Integer(x - ys)), n);
    } while (g == 1);
  }
  return (g == 1 || g == n) ? Integer(0) : g;
}

void split(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  if (is_square(n)) {
    Integer r = isqrt(n);
    split(r, out);
    split(r, out);
    return;
  }
  for (std::uint64_t seed = 1; seed < 64; ++seed) {
    Integer d = rho(n, seed);
    if (d != 0) {
      split(d, out);
      split(n / d, out);
      return;
    }
  }
  throw BoundExceededError("integer factorization: rho failed on cofactor " + n.str());
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41})
    if (!strong_probable_prime(n, Integer(a))) return false;
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n0) {
  if (n0 == 0) throw std::invalid_argument("factor_integer: zero");
  Integer n = abs_value(n0);
  std::map<Integer, unsigned> found;
  for (std::uint64_t p : small_primes()) {
    if (Integer(p) * p > n) break;
    while (n % p == 0) {
      n /= p;
      ++found[Integer(p)];
    }
  }
  if (n > 1) {
    if (n < Integer(kTrialBound) * kTrialBound)
      ++found[n];
    else
      split(n, found);
  }
  return {found.begin(), found.end()};
}

unsigned valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  unsigned v = 0;
  Integer m = n;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

Integer squarefree_part(const Integer& n) {
  Integer out = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factor_integer(n))
    if (e % 2) out *= p;
  return out;
}

bool is_squarefree(const Integer& n) {
  const auto f = factor_integer(n);
  return std::all_of(f.begin(), f.end(), [](const auto& pe) { return pe.second == 1; });
}

}  // namespace ahom
