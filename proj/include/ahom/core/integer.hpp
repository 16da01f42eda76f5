#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace ahom {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Mat<Integer>;
using IntVector = Vec<Integer>;
using Index = Eigen::Index;

// Scalar helpers shared by Integer and builtin integral types. All division is
// floor division so that remainders land in [0, |b|).

template <typename S>
S floor_div(const S& a, const S& b) {
  S q = a / b;
  S r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

template <typename S>
S floor_mod(const S& a, const S& b) {
  return a - floor_div(a, b) * b;
}

template <typename S>
S abs_value(const S& a) {
  return a < 0 ? S(-a) : a;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
template <typename S>
std::tuple<S, S, S> ext_gcd(const S& a, const S& b) {
  S old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    S q = old_r / r;
    S tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {S(-old_r), S(-old_s), S(-old_t)};
  return {old_r, old_s, old_t};
}

template <typename S>
S gcd_of(const S& a, const S& b) {
  return std::get<0>(ext_gcd(a, b));
}

inline Integer isqrt(const Integer& n) { return boost::multiprecision::sqrt(n); }

inline bool is_square(const Integer& n) {
  if (n < 0) return false;
  Integer r = isqrt(n);
  return r * r == n;
}

inline Integer ipow(Integer base, unsigned exp) {
  Integer r = 1;
  while (exp) {
    if (exp & 1U) r *= base;
    base *= base;
    exp >>= 1U;
  }
  return r;
}

inline Integer powmod(Integer base, Integer exp, const Integer& mod) {
  return boost::multiprecision::powm(floor_mod(base, mod), exp, mod);
}

/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
Integer invmod(const Integer& a, const Integer& m);

inline std::int64_t to_i64(const Integer& a) { return a.convert_to<std::int64_t>(); }
inline std::string to_string(const Integer& a) { return a.str(); }
std::string to_string(const Rational& a);

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline IntMatrix identity_matrix(Index n) { return IntMatrix::Identity(n, n); }

std::vector<Integer> to_std(const IntVector& v);
IntVector from_std(const std::vector<Integer>& v);

}  // namespace ahom
