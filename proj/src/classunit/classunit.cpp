#include "ahom/classunit/classunit.hpp"

#include "ahom/core/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace ahom {

namespace {

using Real = long double;

// Real value of x + y w under the embedding w -> larger root of the order
// polynomial (real quadratic fields), or the other root when `conjugate`.
Real embed(const NumberField& k, const RatVector& a, bool conjugate) {
  const auto& g = k.order_poly();
  const Real d = std::sqrt(k.discriminant().convert_to<Real>());
  const Real w = (-g[1].convert_to<Real>() + (conjugate ? -d : d)) / 2;
  return a(0).convert_to<Real>() + a(1).convert_to<Real>() * w;
}

RatVector quadratic_conjugate(const NumberField& k, const RatVector& a) {
  // w + w' = -g1.
  const Integer& g1 = k.order_poly()[1];
  RatVector out(2);
  out(0) = a(0) - Rational(g1) * a(1);
  out(1) = -a(1);
  return out;
}

// Positive definite integral quadratic form on O used for lattice reduction:
// Tr(x^2) for real fields, N(x) for imaginary ones.
Rational size_form(const NumberField& k, const RatVector& x) {
  return k.signature().first > 0 ? k.trace(k.mul(x, x)) : k.norm(x);
}

// Short nonzero vector of an integral ideal lattice (Lagrange-Gauss).
RatVector short_element(const NumberField& k, const IntMatrix& basis) {
  RatVector u = k.from_integral(basis.col(0)), v = k.from_integral(basis.col(1));
  for (;;) {
    if (size_form(k, u) > size_form(k, v)) std::swap(u, v);
    const Rational qu = size_form(k, u);
    const Rational b = (size_form(k, u + v) - qu - size_form(k, v)) / 2;
    const Rational ratio = b / qu;
    const Integer m = floor_div(Integer(2 * numerator_of(ratio) + denominator_of(ratio)),
                                Integer(2 * denominator_of(ratio)));
    if (m == 0) return u;
    v -= Rational(m) * u;
  }
}

Integer ceil_real(Real x) { return Integer(static_cast<long long>(std::ceil(x))); }

// Exhaustive search for a generator of an integral ideal of a quadratic field.
std::optional<RatVector> quadratic_generator(const NumberField& k, const Ideal& j,
                                             const Integer& budget) {
  const Integer t = numerator_of(k.norm(j));
  if (t == 1) return k.one();
  const Integer& g1 = k.order_poly()[1];
  const Integer& disc = k.discriminant();
  const bool real = disc > 0;
  Integer ybound;
  if (real) {
    const RatVector eps = unit_group(k).fundamental_units.at(0);
    const Integer e = ceil_real(embed(k, eps, false)) + 1;
    ybound = isqrt(Integer(4 * t * e / disc)) + 1;
  } else {
    ybound = isqrt(Integer(4 * t / -disc)) + 1;
  }
  if (ybound > budget)
    throw BoundExceededError("principal ideal search needs " + ybound.str() +
                             " candidates, over the budget " + budget.str());
  for (Integer y = 0; y <= ybound; ++y) {
    for (int ysign : {1, -1}) {
      if (y == 0 && ysign < 0) continue;
      const Integer yy = y * ysign;
      for (int nsign : {1, -1}) {
        if (!real && nsign < 0) continue;
        // x^2 - g1 y x + g0 y^2 = nsign t  <=>  (2x - g1 y)^2 = disc y^2 + 4 nsign t.
        const Integer rhs = disc * yy * yy + 4 * nsign * t;
        if (!is_square(rhs)) continue;
        const Integer r = isqrt(rhs);
        for (int rs : {1, -1}) {
          const Integer twice_x = g1 * yy + rs * r;
          if (floor_mod(twice_x, Integer(2)) != 0) continue;
          RatVector a(2);
          a(0) = Rational(twice_x / 2);
          a(1) = Rational(yy);
          if (k.contains(j, a)) return a;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<RatVector> box_generator(const NumberField& k, const Ideal& a, const Integer& budget) {
  const Integer target = numerator_of(k.norm(a));
  const int n = k.degree();
  Integer visited = 0;
  for (long h = 1;; ++h) {
    // Points with max coordinate exactly h.
    std::vector<long> c(static_cast<std::size_t>(n), -h);
    for (;;) {
      long top = 0;
      for (long x : c) top = std::max(top, std::labs(x));
      if (top == h) {
        if (++visited > budget)
          throw BoundExceededError("principal generator search exhausted its budget of " +
                                   budget.str() + " elements");
        RatVector x(n);
        for (int i = 0; i < n; ++i) x(i) = c[static_cast<std::size_t>(i)];
        const Rational nm = k.norm(x);
        if ((nm == Rational(target) || nm == -Rational(target)) && k.contains(a, x)) return x;
      }
      std::size_t pos = 0;
      while (pos < c.size() && c[pos] == h) c[pos++] = -h;
      if (pos == c.size()) break;
      ++c[pos];
    }
  }
}

Ideal ideal_from_exponents(const NumberField& k, const std::vector<PrimeIdeal>& primes,
                           const IntVector& exps) {
  IdealFactorization f;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (exps(static_cast<Index>(i)) != 0) f.emplace_back(primes[i], static_cast<int>(to_i64(exps(static_cast<Index>(i)))));
  return k.from_factorization(f);
}

}  // namespace

std::vector<RatVector> UnitGroup::generators() const {
  std::vector<RatVector> out{torsion_generator};
  out.insert(out.end(), fundamental_units.begin(), fundamental_units.end());
  return out;
}

AbelianGroup UnitGroup::group() const {
  const Index n = 1 + static_cast<Index>(fundamental_units.size());
  IntMatrix rel = IntMatrix::Zero(n, 1);
  rel(0, 0) = torsion_order;
  return AbelianGroup(n, rel);
}

UnitGroup unit_group(const NumberField& k) {
  UnitGroup out;
  if (k.degree() > 2)
    throw UnsupportedError("unit groups are only available for Q and quadratic fields");
  out.torsion_generator = k.from_integer(Integer(-1));
  if (k.degree() == 1) return out;

  const Integer& disc = k.discriminant();
  if (disc < 0) {
    // Roots of unity are the norm-one elements; |y| <= 2/sqrt|D|.
    const Integer& g1 = k.order_poly()[1];
    std::vector<RatVector> roots;
    for (int y : {0, 1, -1}) {
      const Integer rhs = disc * y * y + 4;
      if (rhs < 0 || !is_square(rhs)) continue;
      const Integer r = isqrt(rhs);
      for (int s : {1, -1}) {
        if (r == 0 && s < 0) continue;
        const Integer twice_x = g1 * y + s * r;
        if (floor_mod(twice_x, Integer(2)) != 0) continue;
        RatVector a(2);
        a(0) = Rational(twice_x / 2);
        a(1) = y;
        roots.push_back(a);
      }
    }
    out.torsion_order = static_cast<int>(roots.size());
    for (const auto& z : roots) {
      RatVector p = z;
      int order = 1;
      while (p != k.one()) {
        p = k.mul(p, z);
        ++order;
      }
      if (order == out.torsion_order) {
        out.torsion_generator = z;
        break;
      }
    }
    return out;
  }

  // Real quadratic: product of the complete quotients over one period of the
  // continued fraction of the reduced irrational (b + sqrt D)/2.
  const Integer s = isqrt(disc);
  const Integer b = floor_mod(Integer(s - disc), Integer(2)) == 0 ? s : Integer(s - 1);
  Integer P = b, Q = 2;
  Rational u = 1, v = 0;  // u + v sqrt(D)
  for (int step = 0;; ++step) {
    if (step > 1'000'000) throw BoundExceededError("continued fraction period too long");
    const Rational nu = (u * Rational(P) + v * Rational(disc)) / Rational(Q);
    const Rational nv = (u + v * Rational(P)) / Rational(Q);
    u = nu;
    v = nv;
    const Integer a = floor_div(Integer(P + s), Q);
    const Integer P2 = a * Q - P;
    const Integer Q2 = (disc - P2 * P2) / Q;
    P = P2;
    Q = Q2;
    if (P == b && Q == 2) break;
  }
  RatVector eps(2);
  if (disc == k.quadratic_radicand()) {  // w = (1 + sqrt D)/2
    eps(0) = u - v;
    eps(1) = 2 * v;
  } else {  // w = sqrt(D)/2
    eps(0) = u;
    eps(1) = 2 * v;
  }
  const Rational nm = k.norm(eps);
  if (!k.is_integral(eps) || (nm != 1 && nm != -1))
    throw std::logic_error("continued fraction did not produce a unit");
  out.fundamental_units.push_back(eps);
  return out;
}

IntVector unit_exponents(const NumberField& k, const UnitGroup& units, const RatVector& u) {
  const Rational nm = k.norm(u);
  if (!k.is_integral(u) || (nm != 1 && nm != -1))
    throw std::domain_error("not a unit: " + k.to_string(u));
  IntVector out = IntVector::Zero(1 + static_cast<Index>(units.fundamental_units.size()));
  RatVector rest = u;
  if (!units.fundamental_units.empty()) {
    const RatVector& eps = units.fundamental_units[0];
    const Real a = std::fabs(embed(k, u, false)), a2 = std::fabs(embed(k, u, true));
    const Real log_u = a >= a2 ? std::log(a) : -std::log(a2);
    const Real log_eps = std::log(embed(k, eps, false));
    const long guess = std::lround(log_u / log_eps);
    bool found = false;
    for (long e : {guess, guess - 1, guess + 1}) {
      RatVector r = k.mul(u, k.pow(eps, -e));
      if (r == k.one() || r == k.from_integer(Integer(-1))) {
        out(1) = e;
        rest = r;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("unit logarithm failed for " + k.to_string(u));
  }
  RatVector z = k.one();
  for (int t = 0; t < units.torsion_order; ++t) {
    if (z == rest) {
      out(0) = t;
      return out;
    }
    z = k.mul(z, units.torsion_generator);
  }
  throw std::domain_error("unit outside the computed unit group: " + k.to_string(u));
}

std::optional<RatVector> is_principal(const NumberField& k, const Ideal& a, const Integer& budget) {
  const Rational den(a.den);
  const Ideal num{a.num, 1};
  if (num == k.unit_ideal()) return k.one() / den;
  if (k.degree() == 1) return k.from_integer(Integer(a.num(0, 0))) / den;
  if (k.degree() > 2) {
    auto g = box_generator(k, num, budget);
    if (g) return *g / den;
    return std::nullopt;
  }
  // Replace num by the small ideal j with (alpha) = num * j; num is principal
  // iff j is, and then num = (alpha / gamma) for j = (gamma).
  const RatVector alpha = short_element(k, num.num);
  const Integer nnum = numerator_of(k.norm(num));
  IntMatrix cols(2, 2);
  for (Index c = 0; c < 2; ++c)
    cols.col(c) = k.to_integral(quadratic_conjugate(k, k.from_integral(num.num.col(c))));
  const Ideal conj = k.ideal_from_lattice(cols);
  Ideal j = k.mul(k.principal_ideal(alpha), conj);
  // j currently equals alpha * conj(num) = nnum * (small ideal).
  j = Ideal{j.num, j.den * nnum};
  j = k.ideal_from_lattice(j.num, j.den);
  if (j.den != 1) throw std::logic_error("ideal reduction left a denominator");
  auto gamma = quadratic_generator(k, j, budget);
  if (!gamma) return std::nullopt;
  RatVector gen = k.div(alpha, *gamma) / den;
  if (k.principal_ideal(gen) != a) throw std::logic_error("principal generator check failed");
  return gen;
}

Integer minkowski_bound(const NumberField& k) {
  const int n = k.degree();
  Real b = std::sqrt(std::fabs(k.discriminant().convert_to<Real>()));
  for (int i = 1; i <= n; ++i) b *= static_cast<Real>(i) / n;
  for (int i = 0; i < k.signature().second; ++i) b *= 4 / 3.14159265358979323846L;
  return ceil_real(b);
}

ClassGroup class_group(const NumberField& k) {
  ClassGroup out;
  if (k.degree() == 1) return out;
  const Integer bound = minkowski_bound(k);
  if (bound > 10'000)
    throw BoundExceededError("Minkowski bound " + bound.str() + " exceeds 10^4");
  std::vector<PrimeIdeal> primes = k.primes_up_to_norm(bound);
  const Index r = static_cast<Index>(primes.size());
  IntMatrix rel = IntMatrix::Zero(r, r);
  out.generators = primes;

  if (k.degree() > 2) {
    // Only a trivial class group can be certified.
    for (Index j = 0; j < r; ++j) {
      auto g = is_principal(k, k.ideal_of(primes[static_cast<std::size_t>(j)]));
      if (!g) throw BoundExceededError("class group beyond degree 2 is only certified when trivial");
      rel(j, j) = 1;
      out.witnesses.push_back(*g);
    }
    out.group = AbelianGroup(r, rel);
    return out;
  }

  for (Index j = 0; j < r; ++j) {
    const AbelianGroup sub(j, rel.topLeftCorner(j, j));
    const auto elements = enumerate_elements(sub);
    bool done = false;
    for (int m = 1; !done; ++m) {
      if (m > 10'000) throw BoundExceededError("class group relation search exceeded 10^4 powers");
      for (const IntVector& c : elements) {
        IntVector exps = IntVector::Zero(r);
        exps.head(j) = c;
        exps(j) = m;
        auto g = is_principal(k, ideal_from_exponents(k, primes, exps));
        if (!g) continue;
        rel.col(j) = exps;
        out.witnesses.push_back(*g);
        done = true;
        break;
      }
    }
  }
  out.group = AbelianGroup(r, rel);
  return out;
}

ClassDecomposition decompose_class(const NumberField& k, const ClassGroup& cl, const Ideal& a) {
  const Index r = cl.group.generator_count();
  if (r == 0) {
    auto g = is_principal(k, a);
    if (!g) throw std::logic_error("ideal not principal in a field with trivial class group");
    return {IntVector::Zero(0), *g};
  }
  for (const IntVector& c : enumerate_elements(cl.group)) {
    const Ideal shifted = k.mul(a, ideal_from_exponents(k, cl.generators, IntVector(-c)));
    if (auto g = is_principal(k, shifted)) return {c, *g};
  }
  throw std::logic_error("ideal class not found among class group elements");
}

}  // namespace ahom
