#include "ahom/cycles/cycles.hpp"

#include "ahom/core/errors.hpp"
#include "ahom/numfield/integer_factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ahom {

ZeroCycle normalize(ZeroCycle c) {
  std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  ZeroCycle out;
  for (auto& [p, n] : c) {
    if (!out.empty() && out.back().first == p)
      out.back().second += n;
    else
      out.emplace_back(p, n);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& t) { return t.second == 0; }),
            out.end());
  return out;
}

std::string to_string(const ZeroCycle& c) {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [p, n] : c) {
    if (!out.empty()) out += n < 0 ? " - " : " + ";
    else if (n < 0) out += "-";
    const long a = std::labs(n);
    if (a != 1) out += std::to_string(a) + "*";
    out += "(" + p.label() + ")";
  }
  return out;
}

ZeroCycle div_of_element(const NumberField& k, const RatVector& f, const Modulus& sigma) {
  if (k.is_zero(f)) throw std::invalid_argument("the zero element has no divisor");
  for (const PrimeIdeal& p : sigma.primes())
    if (k.valuation(f, p) != 0 || k.residue(f, p) != 1)
      throw std::invalid_argument(k.to_string(f) + " is not congruent to 1 modulo " + p.label());
  ZeroCycle out;
  for (const auto& [p, e] : k.factor(k.principal_ideal(f))) out.emplace_back(p, e);
  return normalize(out);
}

IntVector class_of_cycle(const RayClassGroup& g, const ZeroCycle& c) {
  IntVector out = g.group().zero();
  for (const auto& [p, n] : c) {
    if (g.modulus().contains(p))
      throw std::invalid_argument("cycle meets the modulus at " + p.label());
    out += Integer(n) * g.class_of_prime(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// One-cycles

OneCycle OneCycle::horizontal(ZPoly g) {
  zpoly::trim(g);
  if (zpoly::degree(g) < 1) throw std::invalid_argument("a horizontal curve needs a nonconstant polynomial");
  if (g.back() < 0)
    for (auto& c : g) c = -c;
  return OneCycle{false, 0, g};
}

std::string OneCycle::to_string() const {
  return vertical ? "fibre over " + p.str() : zpoly::to_string(g, "t");
}

namespace {

// Irreducibility over Q of a polynomial with leading coefficient a, via the
// monic a^{n-1} g(x/a).
bool irreducible_over_q(const ZPoly& g) {
  const int n = zpoly::degree(g);
  if (n <= 1) return n == 1;
  ZPoly h(g.size());
  Integer apow = 1;
  for (int i = n; i >= 0; --i) {
    h[static_cast<std::size_t>(i)] = i == n ? Integer(1) : g[static_cast<std::size_t>(i)] * apow;
    if (i < n) apow *= g.back();
    else apow = 1;
  }
  return zpoly::is_irreducible(h);
}

}  // namespace

void check_one_cycle(const OneCycle& z, const Modulus& sigma) {
  if (z.vertical) {
    if (!is_prime(z.p)) throw std::invalid_argument(z.p.str() + " is not prime");
    for (const auto& q : sigma.primes())
      if (q.p == z.p) throw std::invalid_argument("fibre over " + z.p.str() + " lies over the modulus");
    return;
  }
  const ZPoly& g = z.g;
  if (zpoly::content(g) != 1) throw std::invalid_argument(z.to_string() + " is not primitive");
  const Integer g0 = zpoly::eval(g, Integer(0)), g1 = zpoly::eval(g, Integer(1));
  if (g0 == 0 || g1 == 0)
    throw std::invalid_argument(z.to_string() + " contains a face (vanishes at t=0 or t=1)");
  for (const auto& q : sigma.primes()) {
    for (std::size_t i = 1; i < g.size(); ++i)
      if (floor_mod(g[i], q.p) != 0)
        throw std::invalid_argument(z.to_string() + " is not constant modulo " + q.p.str());
    if (floor_mod(g[0], q.p) == 0)
      throw std::invalid_argument(z.to_string() + " vanishes modulo " + q.p.str());
  }
  if (!irreducible_over_q(g)) throw std::invalid_argument(z.to_string() + " is reducible");
}

ZeroCycle boundary_d1(const NumberField& q, const OneCycle& z, const Modulus& sigma) {
  if (!q.is_rational()) throw UnsupportedError("one-cycles are implemented over Q only");
  check_one_cycle(z, sigma);
  if (z.vertical) return {};
  ZeroCycle out;
  auto add = [&](const Integer& value, long sign) {
    for (const auto& [p, e] : factor_integer(abs_value(value)))
      out.emplace_back(q.primes_above(p).front(), sign * e);
  };
  add(zpoly::eval(z.g, Integer(0)), 1);
  add(zpoly::eval(z.g, Integer(1)), -1);
  return normalize(out);
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

// Integer lattice grown one vector at a time, kept in column echelon form.
class EchelonLattice {
 public:
  explicit EchelonLattice(Index rows) : rows_(rows) {}

  /// Adds v; returns whether the lattice grew.
  bool add(IntVector v) {
    bool grew = false;
    for (Index r = 0; r < rows_; ++r) {
      if (v(r) == 0) continue;
      auto it = pivots_.find(r);
      if (it == pivots_.end()) {
        if (v(r) < 0) v = -v;
        pivots_.emplace(r, v);
        return true;
      }
      IntVector& b = it->second;
      if (floor_mod(Integer(v(r)), Integer(b(r))) == 0) {
        v -= (v(r) / b(r)) * b;
        continue;
      }
      auto [g, s, t] = ext_gcd(Integer(b(r)), Integer(v(r)));
      const Integer br = b(r) / g, vr = v(r) / g;
      IntVector nb = s * b + t * v;
      v = br * v - vr * b;
      b = nb;
      if (b(r) < 0) b = -b;
      grew = true;
    }
    return grew;
  }

  IntMatrix basis() const {
    IntMatrix out(rows_, static_cast<Index>(pivots_.size()));
    Index c = 0;
    for (const auto& [r, b] : pivots_) {
      (void)r;
      out.col(c++) = b;
    }
    return out;
  }

 private:
  Index rows_;
  std::map<Index, IntVector> pivots_;
};

bool quadratic_irreducible(const ZPoly& g) {
  const Integer disc = g[1] * g[1] - 4 * g[2] * g[0];
  return disc < 0 || !is_square(disc);
}

}  // namespace

OracleResult oracle_h0(const NumberField& k, const Modulus& sigma, const OracleBounds& bounds) {
  if (!k.is_rational()) throw UnsupportedError("the simplicial oracle is implemented over Q only");
  if (bounds.degree < 1 || bounds.height < 1 || bounds.primes < 2)
    throw std::invalid_argument("oracle bounds must be positive (degree >= 1, primes >= 2)");

  OracleResult out;
  std::map<long, Index> index;
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(bounds.primes))) {
    const PrimeIdeal P = k.primes_above(Integer(p)).front();
    if (sigma.contains(P)) continue;
    index.emplace(static_cast<long>(p), static_cast<Index>(out.generators.size()));
    out.generators.push_back(P);
  }
  const auto n = static_cast<Index>(out.generators.size());

  // Non-constant coefficients are multiples of the product of sigma.
  long step = 1;
  for (const auto& q : sigma.primes()) step *= to_i64(q.p);
  const long h = bounds.height;
  const long multiples = 2 * (h / step) + 1;
  double total = 0;
  for (int d = 1; d <= bounds.degree; ++d) {
    double count = static_cast<double>(2 * h + 1) * static_cast<double>(h / step);
    for (int i = 1; i < d; ++i) count *= static_cast<double>(multiples);
    total += count;
  }
  if (total > 1e9) throw BoundExceededError("oracle enumeration exceeds 10^9 polynomials");

  // Exponent vector of n over the generators, or false when n has a prime
  // factor outside them.
  auto smooth = [&](long value, IntVector& v) {
    v = IntVector::Zero(n);
    long m = std::labs(value);
    for (const auto& [p, i] : index) {
      while (m % p == 0) {
        m /= p;
        v(i) += 1;
      }
    }
    return m == 1;
  };

  EchelonLattice lattice(n);
  std::set<std::pair<long, long>> seen;
  IntVector v0, v1;
  for (int d = 1; d <= bounds.degree; ++d) {
    // Odometer over coefficients 1..d (multiples of step), leading one positive.
    std::vector<long> c(static_cast<std::size_t>(d) + 1, 0);
    for (int i = 1; i < d; ++i) c[static_cast<std::size_t>(i)] = -(h / step) * step;
    c[static_cast<std::size_t>(d)] = step;
    if (step > h) continue;
    for (;;) {
      long upper = 0;
      for (int i = 1; i <= d; ++i) upper += c[static_cast<std::size_t>(i)];
      for (long c0 = -h; c0 <= h; ++c0) {
        if (c0 == 0 || std::gcd(c0, step) != 1) continue;
        const long g1 = c0 + upper;
        if (g1 == 0) continue;
        if (seen.count({c0, g1})) continue;
        if (!smooth(c0, v0) || !smooth(g1, v1)) {
          seen.insert({c0, g1});
          continue;
        }
        ZPoly g(static_cast<std::size_t>(d) + 1);
        g[0] = c0;
        for (int i = 1; i <= d; ++i) g[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
        if (zpoly::content(g) != 1) continue;
        if (d == 2 && !quadratic_irreducible(g)) continue;
        if (d > 2 && !irreducible_over_q(g)) continue;
        seen.insert({c0, g1});
        ++out.curves_used;
        if (lattice.add(IntVector(v0 - v1))) ++out.relations_used;
      }
      // Advance coefficients 1..d-1 over [-h, h], then the leading one over [1, h].
      int i = 1;
      for (; i <= d; ++i) {
        long& ci = c[static_cast<std::size_t>(i)];
        ci += step;
        if (ci <= h) break;
        ci = i == d ? step : -(h / step) * step;
      }
      if (i > d) break;
    }
  }

  out.group = AbelianGroup(n, lattice.basis());
  RayClassGroup rc = ray_class_group(k, sigma);
  out.target = rc.group();
  out.comparison = IntMatrix(rc.group().generator_count(), n);
  for (Index i = 0; i < n; ++i)
    out.comparison.col(i) = rc.class_of_prime(out.generators[static_cast<std::size_t>(i)]);
  // Construction fails with a witness if some boundary has nonzero class.
  GroupHom map(out.group, out.target, out.comparison);
  out.injective = map.is_injective();
  out.surjective = map.is_surjective();
  return out;
}

}  // namespace ahom
