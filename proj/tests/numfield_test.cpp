#include "ahom/core/errors.hpp"
#include "ahom/numfield/integer_factor.hpp"
#include "ahom/numfield/number_field.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ahom;

namespace {

IntVector ivec(std::initializer_list<long> xs) {
  IntVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

RatVector rvec(std::initializer_list<long> xs) {
  RatVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

FqPoly fpoly(std::initializer_list<std::uint64_t> xs) { return FqPoly(xs); }

// Independent root search: all a in F_p with f(a) == 0.
std::vector<std::uint64_t> roots_mod(const ZPoly& f, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 0; a < p; ++a)
    if (floor_mod(zpoly::eval(f, Integer(a)), Integer(p)) == 0) out.push_back(a);
  return out;
}

// Brute force: monic f over F_p has no monic factor of degree 1..deg/2.
bool brute_irreducible(const FiniteField& k, const FqPoly& f) {
  const int n = fq::degree(f);
  for (int d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= k.order();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      FqPoly g(static_cast<std::size_t>(d + 1), 0);
      std::uint64_t m = idx;
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)] = m % k.order();
        m /= k.order();
      }
      g[static_cast<std::size_t>(d)] = 1;
      if (fq::mod(k, f, g).empty()) return false;
    }
  }
  return true;
}

int kronecker_odd(const Integer& d, const Integer& p) {
  Integer r = floor_mod(d, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace

TEST(Integers, FactorizationAgreesWithTrialDivision) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = static_cast<std::int64_t>(rng() % 2'000'000) + 2;
    std::int64_t m = n;
    std::vector<std::pair<Integer, unsigned>> brute;
    for (std::int64_t p = 2; p * p <= m; ++p) {
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (e) brute.emplace_back(p, e);
    }
    if (m > 1) brute.emplace_back(m, 1);
    EXPECT_EQ(factor_integer(Integer(n)), brute) << n;
  }
}

TEST(Integers, RhoSplitsLargeSemiprime) {
  const Integer a("1000003"), b("1000033"), c("998244353");
  auto f = factor_integer(a * b * c * c);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], std::make_pair(a, 1u));
  EXPECT_EQ(f[1], std::make_pair(b, 1u));
  EXPECT_EQ(f[2], std::make_pair(c, 2u));
  EXPECT_TRUE(is_prime(Integer("2305843009213693951")));  // 2^61 - 1
  EXPECT_FALSE(is_prime(Integer("3215031751")));         // strong pseudoprime to 2,3,5,7
}

TEST(Integers, Squarefree) {
  EXPECT_EQ(squarefree_part(Integer(-20)), -5);
  EXPECT_EQ(squarefree_part(Integer(72)), 2);
  EXPECT_TRUE(is_squarefree(Integer(30)));
  EXPECT_FALSE(is_squarefree(Integer(12)));
}

TEST(FiniteFieldTest, SmallestModuli) {
  EXPECT_EQ(fq::smallest_irreducible(2, 2), fpoly({1, 1, 1}));
  EXPECT_EQ(fq::smallest_irreducible(3, 2), fpoly({1, 0, 1}));
  EXPECT_EQ(fq::smallest_irreducible(2, 3), fpoly({1, 1, 0, 1}));
}

TEST(FiniteFieldTest, FieldAxiomsAndLogs) {
  for (std::uint64_t q : {2u, 4u, 5u, 8u, 9u, 25u, 27u, 49u, 101u}) {
    const FiniteField k = FiniteField::of_order(q);
    ASSERT_EQ(k.order(), q);
    std::mt19937_64 rng(q);
    for (int t = 0; t < 200; ++t) {
      const auto a = rng() % q, b = rng() % q, c = rng() % q;
      EXPECT_EQ(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
      EXPECT_EQ(k.add(k.sub(a, b), b), a);
      if (a != 0) {
        EXPECT_EQ(k.mul(a, k.inv(a)), 1u);
        EXPECT_EQ(k.pow(k.primitive_element(), k.log(a)), a);
      }
    }
    // The primitive element generates everything.
    std::set<std::uint64_t> seen;
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i + 1 < q; ++i) {
      seen.insert(x);
      x = k.mul(x, k.primitive_element());
    }
    EXPECT_EQ(seen.size(), q - 1);
  }
}

TEST(FiniteFieldTest, LogWithoutTablesLargePrime) {
  const FiniteField k(1000003);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto a = rng() % 1000002 + 1;
    EXPECT_EQ(k.pow(k.primitive_element(), k.log(a)), a);
  }
}

TEST(PolyModP, Examples) {
  const ZPoly f = zpoly::parse("x^2+1");
  auto five = factor_poly_mod_p(f, Integer(5));
  ASSERT_EQ(five.size(), 2u);
  // Root search mod 5 gives 2 and 3, so the factors are x-2 = x+3 and x-3 = x+2.
  EXPECT_EQ(roots_mod(f, 5), (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(five[0], std::make_pair(fpoly({2, 1}), 1));
  EXPECT_EQ(five[1], std::make_pair(fpoly({3, 1}), 1));
  auto two = factor_poly_mod_p(f, Integer(2));
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0], std::make_pair(fpoly({1, 1}), 2));
  auto three = factor_poly_mod_p(f, Integer(3));
  EXPECT_TRUE(roots_mod(f, 3).empty());
  ASSERT_EQ(three.size(), 1u);
  EXPECT_EQ(three[0], std::make_pair(fpoly({1, 0, 1}), 1));
  EXPECT_THROW(factor_poly_mod_p(f, Integer(6)), std::invalid_argument);
}

TEST(PolyModP, RandomFactorizationsMultiplyBack) {
  std::mt19937_64 rng(99);
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 9u}) {
    const FiniteField k = FiniteField::of_order(q);
    for (int t = 0; t < 40; ++t) {
      const int deg = 1 + static_cast<int>(rng() % 7);
      FqPoly f(static_cast<std::size_t>(deg + 1));
      for (auto& c : f) c = rng() % q;
      f.back() = 1;
      auto factors = fq::factor(k, f);
      FqPoly prod{1};
      for (const auto& [g, e] : factors) {
        EXPECT_TRUE(brute_irreducible(k, g)) << fq::to_string(k, g);
        EXPECT_EQ(g.back(), 1u);
        for (int i = 0; i < e; ++i) prod = fq::mul(k, prod, g);
      }
      EXPECT_EQ(prod, f) << fq::to_string(k, f);
      EXPECT_EQ(fq::is_irreducible(k, f), brute_irreducible(k, f));
    }
  }
}

TEST(Polynomials, ParseAndPrint) {
  EXPECT_EQ(zpoly::parse("x^2+5"), (ZPoly{5, 0, 1}));
  EXPECT_EQ(zpoly::parse("x^3 - x - 1"), (ZPoly{-1, -1, 0, 1}));
  EXPECT_EQ(zpoly::parse("2*t^2+3t+1"), (ZPoly{1, 3, 2}));
  EXPECT_EQ(zpoly::to_string(ZPoly{-1, -1, 0, 1}), "x^3-x-1");
  EXPECT_THROW(zpoly::parse("x^2+y"), std::invalid_argument);
  EXPECT_THROW(zpoly::parse("x^"), std::invalid_argument);
}

TEST(Polynomials, DiscriminantAndRealRoots) {
  EXPECT_EQ(zpoly::discriminant(zpoly::parse("x^2+1")), -4);
  EXPECT_EQ(zpoly::discriminant(zpoly::parse("x^3-2")), -108);
  EXPECT_EQ(zpoly::discriminant(zpoly::parse("x^3-x-1")), -23);
  EXPECT_EQ(zpoly::discriminant(zpoly::parse("x^4+1")), 256);
  EXPECT_EQ(zpoly::count_real_roots(zpoly::parse("x^3-x-1")), 1);
  EXPECT_EQ(zpoly::count_real_roots(zpoly::parse("x^4-10x^2+1")), 4);
  EXPECT_EQ(zpoly::count_real_roots(zpoly::parse("x^4+1")), 0);
}

TEST(Polynomials, IrreducibilityOverQ) {
  EXPECT_TRUE(zpoly::is_irreducible(zpoly::parse("x^4+1")));          // reducible mod every p
  EXPECT_TRUE(zpoly::is_irreducible(zpoly::parse("x^4-10x^2+1")));    // likewise
  EXPECT_FALSE(zpoly::is_irreducible(zpoly::parse("x^4+4")));         // Sophie Germain
  EXPECT_FALSE(zpoly::is_irreducible(zpoly::parse("x^4+3x^2+2")));
  EXPECT_TRUE(zpoly::is_irreducible(zpoly::parse("x^3-x-1")));
  EXPECT_FALSE(zpoly::is_irreducible(zpoly::parse("x^2-4")));
}

TEST(Dedekind, Examples) {
  EXPECT_TRUE(dedekind_is_maximal(zpoly::parse("x^2+1"), Integer(2)));
  EXPECT_FALSE(dedekind_is_maximal(zpoly::parse("x^2-5"), Integer(2)));
  EXPECT_TRUE(dedekind_is_maximal(zpoly::parse("x^2+5"), Integer(2)));
}

TEST(Dedekind, QuadraticIndexOracle) {
  // For x^2 + bx + c the index [O : Z[a]] is sqrt(disc / field disc).
  for (int b = -4; b <= 4; ++b)
    for (int c = -30; c <= 30; ++c) {
      const Integer d0 = Integer(b * b - 4 * c);
      if (d0 == 0 || is_square(d0)) continue;
      const Integer rad = squarefree_part(d0);
      const Integer dk = floor_mod(rad, Integer(4)) == 1 ? rad : 4 * rad;
      const Integer index = isqrt(d0 / dk);
      for (int p : {2, 3, 5, 7}) {
        EXPECT_EQ(dedekind_is_maximal(ZPoly{c, b, 1}, Integer(p)), index % p != 0)
            << "x^2+" << b << "x+" << c << " at " << p;
      }
    }
}

TEST(Fields, QuadraticBasisAndInvariants) {
  NumberField qi = NumberField::parse("x^2+1");
  EXPECT_EQ(qi.discriminant(), -4);
  EXPECT_EQ(qi.signature(), std::make_pair(0, 1));
  NumberField q5 = NumberField::parse("x^2-5");
  EXPECT_EQ(q5.discriminant(), 5);
  EXPECT_EQ(q5.order_poly(), (ZPoly{-1, -1, 1}));
  EXPECT_EQ(q5.integral_basis()(1, 0), Rational(1, 2));
  EXPECT_EQ(q5.integral_basis()(1, 1), Rational(1, 2));
  EXPECT_EQ(q5.unit_rank(), 1);
  NumberField q = NumberField::parse("Q");
  EXPECT_EQ(q.degree(), 1);
  EXPECT_EQ(q.unit_rank(), 0);
  NumberField cyc8 = NumberField::parse("x^4+1");
  EXPECT_EQ(cyc8.signature(), std::make_pair(0, 2));
  EXPECT_EQ(cyc8.discriminant(), 256);
}

TEST(Fields, RejectsUnsupported) {
  // Dedekind's non-monogenic cubic.
  EXPECT_THROW(NumberField::parse("x^3-x^2-2x-8"), UnsupportedError);
  EXPECT_THROW(NumberField::parse("x^2-4"), std::invalid_argument);
  EXPECT_THROW(NumberField::parse("2x^2+1"), UnsupportedError);
  EXPECT_THROW(NumberField::parse("x^2+"), std::invalid_argument);
}

TEST(Fields, ElementArithmetic) {
  NumberField k = NumberField::parse("x^2+x+1");  // Q(sqrt(-3)), w = (1+sqrt(-3))/2
  RatVector w = k.generator();
  EXPECT_EQ(k.norm(w), 1);
  EXPECT_EQ(k.pow(w, 6), k.one());
  RatVector a = rvec({3, -2});
  EXPECT_EQ(k.mul(a, k.inv(a)), k.one());
  EXPECT_EQ(k.norm(a), k.norm(a * Rational(-1)));
}

TEST(Primes, SplittingExamples) {
  NumberField qi = NumberField::parse("x^2+1");
  auto five = qi.primes_above(Integer(5));
  ASSERT_EQ(five.size(), 2u);
  for (const auto& P : five) {
    EXPECT_EQ(P.e, 1);
    EXPECT_EQ(P.f, 1);
  }
  EXPECT_EQ(five[0].generator, ivec({2, 1}));
  EXPECT_EQ(five[1].generator, ivec({3, 1}));
  auto two = qi.primes_above(Integer(2));
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].e, 2);
  EXPECT_EQ(two[0].f, 1);
  EXPECT_EQ(qi.ideal_of(two[0]), qi.principal_ideal(rvec({1, 1})));
  NumberField k5 = NumberField::parse("x^2+5");
  auto three = k5.primes_above(Integer(3));
  ASSERT_EQ(three.size(), 2u);
  EXPECT_EQ(three[0].norm(), 3);
  EXPECT_EQ(three[1].norm(), 3);
  EXPECT_EQ(qi.prime("5:1").generator, ivec({3, 1}));
  EXPECT_THROW(qi.prime("5"), std::invalid_argument);
  EXPECT_EQ(qi.prime("3").f, 2);
}

TEST(Primes, ProductAndDegreeAcrossFields) {
  for (const char* spec : {"Q", "x^2+1", "x^2+5", "x^2-2", "x^2-5", "x^2+x+1", "x^4+1", "x^3-2",
                           "x^3-x-1", "x^4+x^3+x^2+x+1"}) {
    NumberField k = NumberField::parse(spec);
    for (std::uint64_t p : primes_up_to(60)) {
      auto primes = k.primes_above(Integer(p));
      int total = 0;
      Ideal prod = k.unit_ideal();
      for (const auto& P : primes) {
        total += P.e * P.f;
        prod = k.mul(prod, k.pow(k.ideal_of(P), P.e));
        EXPECT_EQ(k.norm(k.ideal_of(P)), Rational(P.norm()));
        // The two-element form generates the stored lattice.
        EXPECT_EQ(k.ideal({k.from_integer(P.p), k.from_integral(P.generator)}), k.ideal_of(P));
      }
      EXPECT_EQ(total, k.degree()) << spec << " p=" << p;
      EXPECT_EQ(prod, k.principal_ideal(k.from_integer(Integer(p)))) << spec << " p=" << p;
    }
  }
}

TEST(Primes, QuadraticSplittingMatchesKronecker) {
  for (const char* spec : {"x^2+1", "x^2+5", "x^2-2", "x^2-5", "x^2+23", "x^2-7"}) {
    NumberField k = NumberField::parse(spec);
    const Integer dk = k.discriminant();
    for (std::uint64_t p : primes_up_to(100)) {
      if (p == 2) continue;
      const int chi = kronecker_odd(dk, Integer(p));
      const auto primes = k.primes_above(Integer(p));
      const std::size_t expected = chi == 1 ? 2u : 1u;
      EXPECT_EQ(primes.size(), expected) << spec << " " << p;
      if (chi == 0) EXPECT_EQ(primes[0].e, 2);
      if (chi == -1) EXPECT_EQ(primes[0].f, 2);
    }
  }
}

TEST(Ideals, Examples) {
  NumberField qi = NumberField::parse("x^2+1");
  EXPECT_EQ(qi.mul(qi.principal_ideal(rvec({1, 1})), qi.principal_ideal(rvec({1, -1}))),
            qi.principal_ideal(rvec({2, 0})));
  EXPECT_EQ(qi.norm(qi.principal_ideal(rvec({7, 0}))), 49);
  Ideal a = qi.ideal({rvec({3, 0}), rvec({1, 2})});
  EXPECT_EQ(qi.mul(a, qi.unit_ideal()), a);
}

TEST(Ideals, NormIsMultiplicative) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> coeff(-9, 9);
  for (const char* spec : {"x^2+1", "x^2+5", "x^2-2", "x^3-2"}) {
    NumberField k = NumberField::parse(spec);
    auto random_ideal = [&]() {
      RatVector a(k.degree()), b(k.degree());
      do {
        for (Index i = 0; i < k.degree(); ++i) {
          a(i) = coeff(rng);
          b(i) = coeff(rng);
        }
      } while (a.isZero() || b.isZero());
      return k.ideal({a, b});
    };
    for (int t = 0; t < 25; ++t) {
      Ideal a = random_ideal(), b = random_ideal();
      EXPECT_EQ(k.norm(k.mul(a, b)), k.norm(a) * k.norm(b));
    }
  }
}

TEST(Valuations, Examples) {
  NumberField q;
  auto f = q.factor(q.principal_ideal(q.from_integer(Integer(6))));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].first.p, 2);
  EXPECT_EQ(f[0].second, 1);
  EXPECT_EQ(f[1].first.p, 3);
  EXPECT_EQ(f[1].second, 1);
  EXPECT_TRUE(q.factor(q.unit_ideal()).empty());
  NumberField qi = NumberField::parse("x^2+1");
  const PrimeIdeal P2 = qi.prime("2");
  EXPECT_EQ(qi.valuation(rvec({1, 1}), P2), 1);
  EXPECT_EQ(qi.valuation(rvec({2, 0}), P2), 2);
  EXPECT_EQ(qi.valuation(qi.one(), P2), 0);
  RatVector half = qi.from_integer(Integer(1)) / Rational(2);
  EXPECT_EQ(qi.valuation(half, P2), -2);
  EXPECT_THROW(qi.valuation(qi.zero(), P2), std::domain_error);
}

TEST(Valuations, AdditiveAndReconstructing) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coeff(-20, 20);
  for (const char* spec : {"Q", "x^2+1", "x^2+5", "x^2-5", "x^3-2", "x^4+1"}) {
    NumberField k = NumberField::parse(spec);
    std::vector<PrimeIdeal> primes;
    for (std::uint64_t p : {2, 3, 5, 7}) {
      auto ps = k.primes_above(Integer(p));
      primes.insert(primes.end(), ps.begin(), ps.end());
    }
    auto random_element = [&]() {
      RatVector a(k.degree());
      do {
        for (Index i = 0; i < k.degree(); ++i) a(i) = coeff(rng);
      } while (a.isZero());
      return a;
    };
    for (int t = 0; t < 20; ++t) {
      RatVector a = random_element(), b = random_element();
      RatVector c = a / Rational(1 + static_cast<long>(rng() % 12));
      for (const auto& P : primes) {
        EXPECT_EQ(k.valuation(k.mul(a, b), P), k.valuation(a, P) + k.valuation(b, P));
        EXPECT_EQ(k.valuation(k.mul(c, b), P), k.valuation(c, P) + k.valuation(b, P));
      }
      Ideal principal = k.principal_ideal(a);
      IdealFactorization fac = k.factor(principal);
      for (const auto& [P, v] : fac) EXPECT_EQ(v, k.valuation(a, P));
      EXPECT_EQ(k.from_factorization(fac), principal) << spec << " " << k.to_string(a);
      Ideal frac = k.principal_ideal(k.div(a, b));
      EXPECT_EQ(k.from_factorization(k.factor(frac)), frac);
    }
  }
}

TEST(Residues, MultiplicativeAndLocalized) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> coeff(-15, 15);
  for (const char* spec : {"x^2+1", "x^2+5", "x^2-5", "x^3-2"}) {
    NumberField k = NumberField::parse(spec);
    for (std::uint64_t p : {2, 3, 5, 13}) {
      for (const auto& P : k.primes_above(Integer(p))) {
        const FiniteField& kp = *P.residue_field;
        EXPECT_EQ(kp.order(), static_cast<std::uint64_t>(P.norm()));
        for (int t = 0; t < 15; ++t) {
          RatVector a(k.degree()), b(k.degree());
          for (Index i = 0; i < k.degree(); ++i) {
            a(i) = coeff(rng);
            b(i) = coeff(rng);
          }
          EXPECT_EQ(k.residue(k.mul(a, b), P), kp.mul(k.residue(a, P), k.residue(b, P)));
          EXPECT_EQ(k.residue(a + b, P), kp.add(k.residue(a, P), k.residue(b, P)));
          if (!b.isZero() && k.valuation(b, P) == 0) {
            // a/b evaluated through the localization agrees with field division.
            RatVector q = k.div(a, b);
            if (k.valuation(a, P) >= 0)
              EXPECT_EQ(k.residue(q, P), kp.div(k.residue(a, P), k.residue(b, P)));
          }
          // Lifting is a section of the residue map.
          const auto r = k.residue(a, P);
          EXPECT_EQ(k.residue(k.from_integral(k.lift_residue(r, P)), P), r);
        }
      }
    }
  }
}

TEST(Ideals, CrtHitsTargets) {
  NumberField k = NumberField::parse("x^2+5");
  std::vector<PrimeIdeal> primes = k.primes_above(Integer(3));
  for (const auto& P : k.primes_above(Integer(7))) primes.push_back(P);
  primes.push_back(k.prime("2"));
  std::vector<IntVector> targets{ivec({1, 0}), ivec({2, 1}), ivec({0, 1}), ivec({5, 0}), ivec({1, 1})};
  IntVector x = k.crt(primes, targets);
  for (std::size_t i = 0; i < primes.size(); ++i)
    EXPECT_TRUE(k.contains(k.ideal_of(primes[i]), k.from_integral(IntVector(x - targets[i]))));
}
