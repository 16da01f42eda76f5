#pragma once

// Discrete logarithms in a cyclic group of known factored order, by
// Pohlig-Hellman reduction to prime order and baby-step/giant-step there.
//
// Group is any type providing
//   Elem one() const;  Elem mul(const Elem&, const Elem&) const;
//   Elem pow(const Elem&, const Integer&) const;
// with Elem ordered by operator<.

#include "ahom/core/integer.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ahom {

/// Baby-step/giant-step tables beyond this many entries are refused.
inline constexpr std::uint64_t kMaxBabySteps = 1u << 24;

template <typename Group, typename Elem>
Integer cyclic_log(const Group& g, const Elem& base, const Elem& h, const Integer& order,
                   const std::vector<std::pair<Integer, unsigned>>& order_factors) {
  Integer x = 0, mod = 1;
  for (const auto& [r, k] : order_factors) {
    const Integer rk = ipow(r, k);
    const Elem gr = g.pow(base, order / r);
    const Elem hk = g.pow(h, order / rk);
    const Elem gk = g.pow(base, order / rk);
    const Elem gk_inv = g.pow(gk, rk - 1);
    const Integer step_big = isqrt(r) + 1;
    if (step_big > kMaxBabySteps) throw std::range_error("discrete log order too large");
    const auto step = step_big.convert_to<std::uint64_t>();
    std::map<Elem, std::uint64_t> baby;
    Elem cur = g.one();
    for (std::uint64_t j = 0; j < step; ++j) {
      baby.emplace(cur, j);
      cur = g.mul(cur, gr);
    }
    const Elem giant = g.pow(gr, r - Integer(step) % r);  // gr^{-step}
    Integer digits = 0, rpow = 1;
    for (unsigned i = 0; i < k; ++i) {
      Elem t = g.mul(hk, g.pow(gk_inv, digits));
      t = g.pow(t, ipow(r, k - 1 - i));
      bool found = false;
      for (std::uint64_t gi = 0; gi <= step && !found; ++gi) {
        auto it = baby.find(t);
        if (it != baby.end()) {
          digits += rpow * floor_mod(Integer(Integer(gi) * step + it->second), r);
          found = true;
        }
        t = g.mul(t, giant);
      }
      if (!found) throw std::domain_error("element not in the cyclic group");
      rpow *= r;
    }
    const Integer t = floor_mod(Integer((digits - x) * invmod(Integer(mod % rk), rk)), rk);
    x += mod * t;
    mod *= rk;
  }
  return floor_mod(x, order);
}

}  // namespace ahom
