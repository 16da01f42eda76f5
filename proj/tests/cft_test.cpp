#include "ahom/cft/cft.hpp"
#include "ahom/numfield/integer_factor.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace ahom;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

ZeroCycle prime_cycle(long p) { return {{NumberField().primes_above(Integer(p)).front(), 1}}; }

// Order of p in (Z/m)^x / {+-1} by listing powers.
long residue_order(long p, long m) {
  long x = p % m, k = 1;
  while (x != 1 % m && x != (m - 1) % m) {
    x = x * p % m;
    ++k;
  }
  return k;
}

Modulus modulus_of(long m) {
  NumberField q;
  std::vector<PrimeIdeal> ps;
  for (const auto& [p, e] : factor_integer(Integer(m))) {
    (void)e;
    ps.push_back(q.primes_above(p).front());
  }
  return Modulus(ps);
}

}  // namespace

TEST(TameGaloisQ, GroupOrder) {
  for (long m = 1; m <= 200; ++m) {
    if (!is_squarefree(Integer(m))) continue;
    std::set<long> orbits;
    for (long x = 0; x < m; ++x)
      if (std::gcd(x, m) == 1) orbits.insert(std::min(x, (m - x) % m));
    TameGaloisQ g{Integer(m)};
    EXPECT_EQ(*g.group().order(), Integer(static_cast<long>(orbits.size()))) << m;
  }
  EXPECT_THROW(verify_tameclassfield_q(Integer(12)), std::invalid_argument);
}

TEST(RecQ, Examples) {
  TameGaloisQ g5{Integer(5)};
  EXPECT_FALSE(g5.group().is_zero(rec_q(g5, prime_cycle(2))));
  EXPECT_TRUE(g5.group().is_zero(rec_q(g5, prime_cycle(11))));
  TameGaloisQ g12{Integer(12)};
  EXPECT_EQ(*g12.group().order(), 2);
  EXPECT_FALSE(g12.group().is_zero(rec_q(g12, prime_cycle(7))));
  EXPECT_TRUE(g12.group().equal(rec_q(g12, prime_cycle(7)), g12.element_of_residue(Integer(-5))));
  EXPECT_THROW(rec_q(g5, prime_cycle(5)), std::invalid_argument);
  EXPECT_THROW(rec_q(g12, prime_cycle(3)), std::invalid_argument);
}

TEST(TameGaloisQ, GroupOrderAnyModulus) {
  for (long m : {8L, 16L, 24L, 27L, 49L, 64L, 100L, 720L}) {
    std::set<long> orbits;
    for (long x = 0; x < m; ++x)
      if (std::gcd(x, m) == 1) orbits.insert(std::min(x, (m - x) % m));
    EXPECT_EQ(*TameGaloisQ(Integer(m)).group().order(), Integer(static_cast<long>(orbits.size()))) << m;
  }
}

TEST(RecQ, KillsPrincipalCycles) {
  NumberField q;
  std::mt19937_64 rng(1);
  for (long m : {5L, 12L, 35L, 30L}) {
    TameGaloisQ g{Integer(m)};
    Modulus mod = modulus_of(m);
    std::uniform_int_distribution<long> k(-200, 200);
    int done = 0;
    while (done < 100) {
      const long f = 1 + m * k(rng);
      if (f == 0) continue;
      EXPECT_TRUE(g.group().is_zero(rec_q(g, div_of_element(q, q.from_integer(f), mod)))) << m << " " << f;
      ++done;
    }
  }
}

TEST(RecQ, KillsBoundaries) {
  NumberField q;
  for (long m : {5L, 7L, 35L}) {
    TameGaloisQ g{Integer(m)};
    Modulus mod = modulus_of(m);
    int checked = 0;
    for (long a = 0; a <= 2; ++a)
      for (long b = -2; b <= 2; ++b)
        for (long c = -60; c <= 60; ++c) {
          ZPoly poly{Integer(c), Integer(b * m), Integer(a * m)};
          zpoly::trim(poly);
          if (zpoly::degree(poly) < 1) continue;
          OneCycle z = OneCycle::horizontal(poly);
          try {
            check_one_cycle(z, mod);
          } catch (const std::invalid_argument&) {
            continue;
          }
          ++checked;
          EXPECT_TRUE(g.group().is_zero(rec_q(g, boundary_d1(q, z, mod)))) << z.to_string();
        }
    EXPECT_GT(checked, 20);
  }
}

TEST(RecQ, FrobeniusOrderIsResidueOrder) {
  for (long m : {5L, 12L, 35L, 30L}) {
    TameGaloisQ g{Integer(m)};
    for (std::uint64_t p : primes_up_to(100)) {
      if (m % static_cast<long>(p) == 0) continue;
      EXPECT_EQ(g.group().element_order(rec_q(g, prime_cycle(static_cast<long>(p)))),
                Integer(residue_order(static_cast<long>(p), m)))
          << m << " " << p;
    }
  }
}

TEST(TameClassField, Examples) {
  ReciprocityReport r5 = verify_tameclassfield_q(Integer(5));
  EXPECT_TRUE(r5.ok());
  EXPECT_EQ(r5.source.invariants(), ints({2}));
  ReciprocityReport r2 = verify_tameclassfield_q(Integer(2));
  EXPECT_TRUE(r2.ok());
  EXPECT_TRUE(r2.source.is_trivial());
  ReciprocityReport r35 = verify_tameclassfield_q(Integer(35));
  EXPECT_TRUE(r35.ok());
  EXPECT_EQ(*r35.source.order(), 12);
  EXPECT_EQ(*r35.target.order(), 12);
}

TEST(TameClassField, AllSquarefreeUpTo200) {
  for (long m = 1; m <= 200; ++m) {
    if (!is_squarefree(Integer(m))) continue;
    ReciprocityReport r = verify_tameclassfield_q(Integer(m));
    EXPECT_TRUE(r.ok()) << m << " kernel " << r.kernel_witness << " cokernel " << r.cokernel;
  }
}

TEST(TameClassField, OracleCrossCheck) {
  for (long m : {3L, 5L, 7L, 10L, 13L}) {
    ReciprocityReport r = verify_tameclassfield_q(Integer(m), OracleBounds{2, 100, 40});
    EXPECT_TRUE(r.oracle_checked);
    EXPECT_TRUE(r.ok()) << m;
  }
}

TEST(FunctionFieldRec, Examples) {
  auto f2 = function_field_constants(2);
  ReciprocityReport a = verify_ff_rec0(2, parse_places(*f2, "inf"));
  EXPECT_TRUE(a.ok());
  EXPECT_TRUE(a.source.is_trivial());

  auto f3 = function_field_constants(3);
  ReciprocityReport b = verify_ff_rec0(3, parse_places(*f3, "t,inf"));
  EXPECT_TRUE(b.ok());
  EXPECT_EQ(b.source.invariants(), ints({2}));
  EXPECT_EQ(b.target.invariants(), ints({2}));

  auto f5 = function_field_constants(5);
  ReciprocityReport c = verify_ff_rec0(5, parse_places(*f5, "t,inf"));
  EXPECT_TRUE(c.ok());
  EXPECT_EQ(c.source.invariants(), ints({4}));

  ReciprocityReport d = verify_ff_rec0(3, parse_places(*f3, "t,t+2,inf"));
  EXPECT_TRUE(d.ok());
  EXPECT_EQ(*d.source.order(), 4);

  ReciprocityReport e = verify_ff_rec0(5, {});
  EXPECT_TRUE(e.ok());
  EXPECT_TRUE(e.source.is_trivial());
  EXPECT_EQ(e.cokernel, std::string(kZhatModZ));
}

TEST(FunctionFieldRec, MoreConfigurations) {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    auto f = function_field_constants(q);
    std::vector<std::vector<Place>> sigmas{{}, {Place::at_infinity()}};
    std::vector<Place> two{Place::at_infinity()};
    for (const auto& pi : monic_irreducibles(*f, 2)) {
      two.push_back(Place{false, pi});
      break;
    }
    sigmas.push_back(two);
    std::vector<Place> all_rational{Place::at_infinity()};
    for (const auto& pi : monic_irreducibles(*f, 1)) all_rational.push_back(Place{false, pi});
    if (q <= 4) sigmas.push_back(all_rational);
    for (const auto& s : sigmas) {
      ReciprocityReport r = verify_ff_rec0(q, s);
      EXPECT_TRUE(r.ok()) << r.config << " " << r.kernel_witness;
    }
  }
}

TEST(FunctionFieldRec, DegreeCompatibleOnCycles) {
  auto f = function_field_constants(3);
  TameGaloisFF gal(3, parse_places(*f, "t,inf"));
  FFPicard pic(3, parse_places(*f, "t,inf"));
  std::vector<Place> pool;
  for (int d = 1; d <= 3; ++d)
    for (const auto& pi : monic_irreducibles(*f, d))
      if (!(pi == FqPoly{0, 1})) pool.push_back(Place{false, pi});
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int i = 0; i < 100; ++i) {
    FFDivisor d;
    for (int j = 0; j < 3; ++j) d.emplace_back(pool[pick(rng)], coef(rng));
    d = normalize(d);
    EXPECT_EQ(gal.rec(d).second, degree(d));
  }
}
