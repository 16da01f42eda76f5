#include "ahom/rayclass/rayclass.hpp"
#include "ahom/numfield/integer_factor.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace ahom;

namespace {

// |(Z/m)^x / <-1>| by listing residues.
long residue_quotient_order(long m) {
  std::set<long> orbits;
  for (long x = 0; x < m; ++x)
    if (std::gcd(x, m) == 1) orbits.insert(std::min(x, (m - x) % m));
  return static_cast<long>(orbits.size());
}

Modulus rational_modulus(const NumberField& q, long m) {
  std::vector<PrimeIdeal> ps;
  for (const auto& [p, e] : factor_integer(Integer(m))) {
    (void)e;
    ps.push_back(q.primes_above(p).front());
  }
  return Modulus(ps);
}

// Random nonzero element congruent to 1 modulo the ideal.
RatVector one_mod(const NumberField& k, const Ideal& m, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> c(-6, 6);
  for (;;) {
    IntVector z = k.to_integral(k.one());
    for (Index j = 0; j < m.num.cols(); ++j) z += Integer(c(rng)) * IntVector(m.num.col(j));
    if (!z.isZero()) return k.from_integral(z);
  }
}

struct Config {
  const char* field;
  const char* sigma;
};

const std::vector<Config> kConfigs{{"Q", "5"},        {"Q", "3,7"},        {"Q", "2,3,5"},
                                   {"x^2+1", "5:0"},  {"x^2+1", "2,3"},    {"x^2+5", "2"},
                                   {"x^2+5", "3:0,7:1"}, {"x^2-2", "7:0"}, {"x^2-10", "3:1"},
                                   {"x^2+23", "2:0"}};

}  // namespace

TEST(ResidueUnits, Examples) {
  NumberField q;
  ResidueUnitGroup r5 = residue_units(q, Modulus::parse(q, "5"));
  EXPECT_EQ(r5.orders, std::vector<Integer>{4});
  EXPECT_EQ(r5.generators, std::vector<FiniteField::Elem>{2});

  ResidueUnitGroup r6 = residue_units(q, Modulus::parse(q, "2,3"));
  EXPECT_EQ(r6.orders, (std::vector<Integer>{1, 2}));

  NumberField qi = NumberField::parse("x^2+1");
  EXPECT_TRUE(residue_units(qi, Modulus::parse(qi, "2")).group.is_trivial());
}

TEST(ResidueUnits, GeneratorsHaveFullOrder) {
  for (const auto& c : kConfigs) {
    NumberField k = NumberField::parse(c.field);
    ResidueUnitGroup r = residue_units(k, Modulus::parse(k, c.sigma));
    for (std::size_t i = 0; i < r.orders.size(); ++i) {
      const FiniteField& f = *r.modulus.primes()[i].residue_field;
      EXPECT_EQ(f.pow(r.generators[i], r.orders[i]), 1u);
      for (const auto& [q, e] : factor_integer(r.orders[i])) {
        (void)e;
        EXPECT_NE(f.pow(r.generators[i], r.orders[i] / q), 1u);
      }
      IntVector g = r.lift_generator(k, i);
      IntVector d = r.dlog(k, k.from_integral(g));
      for (Index j = 0; j < d.size(); ++j) {
        const Integer want = static_cast<std::size_t>(j) == i ? 1 : 0;
        EXPECT_EQ(floor_mod(Integer(d(j) - want), r.orders[static_cast<std::size_t>(j)]), 0);
      }
    }
  }
}

TEST(Modulus, RejectsRepeatsAndParses) {
  NumberField q;
  EXPECT_THROW(Modulus::parse(q, "5,5"), std::invalid_argument);
  EXPECT_TRUE(Modulus::parse(q, "").empty());
  Modulus a = Modulus::parse(q, "2,3"), b = Modulus::parse(q, "3,5");
  EXPECT_EQ((a | b).to_string(), "2,3,5");
  EXPECT_EQ((a & b).to_string(), "3");
  EXPECT_EQ((a - b).to_string(), "2");
}

TEST(RayClass, Examples) {
  NumberField q;
  EXPECT_EQ(ray_class_group(q, Modulus::parse(q, "5")).group().invariants(), std::vector<Integer>{2});
  EXPECT_TRUE(ray_class_group(q, Modulus()).group().is_trivial());
  NumberField k5 = NumberField::parse("x^2+5");
  EXPECT_EQ(ray_class_group(k5, Modulus()).group().invariants(), std::vector<Integer>{2});
}

TEST(RayClass, RationalOrdersMatchResidueQuotient) {
  NumberField q;
  for (long m = 1; m <= 60; ++m) {
    if (!is_squarefree(Integer(m))) continue;
    RayClassGroup g = ray_class_group(q, rational_modulus(q, m));
    EXPECT_EQ(*g.group().order(), residue_quotient_order(m)) << "m=" << m;
  }
}

TEST(RayClass, PrincipalOneUnitsHaveTrivialClass) {
  std::mt19937_64 rng(5);
  for (const auto& c : kConfigs) {
    NumberField k = NumberField::parse(c.field);
    RayClassGroup g = ray_class_group(k, Modulus::parse(k, c.sigma));
    const Ideal mi = g.modulus().ideal(k);
    for (int t = 0; t < 50; ++t) {
      RatVector a = k.div(one_mod(k, mi, rng), one_mod(k, mi, rng));
      if (k.is_zero(a)) continue;
      EXPECT_TRUE(g.group().is_zero(g.class_of(k.principal_ideal(a))))
          << c.field << " " << c.sigma << " a=" << k.to_string(a);
    }
  }
}

TEST(RayClass, ClassMapIsAdditive) {
  std::mt19937_64 rng(6);
  for (const auto& c : kConfigs) {
    NumberField k = NumberField::parse(c.field);
    RayClassGroup g = ray_class_group(k, Modulus::parse(k, c.sigma));
    std::vector<PrimeIdeal> pool;
    for (std::uint64_t p : primes_up_to(40))
      for (const auto& P : k.primes_above(Integer(p)))
        if (!g.modulus().contains(P)) pool.push_back(P);
    for (int t = 0; t < 10; ++t) {
      const PrimeIdeal& a = pool[rng() % pool.size()];
      const PrimeIdeal& b = pool[rng() % pool.size()];
      Ideal ab = k.mul(k.ideal_of(a), k.ideal_of(b));
      EXPECT_TRUE(g.group().equal(g.class_of(ab),
                                  IntVector(g.class_of_prime(a) + g.class_of_prime(b))));
      // Inverse ideals have inverse classes.
      Ideal inv = k.from_factorization({{a, -1}});
      EXPECT_TRUE(g.group().is_zero(IntVector(g.class_of(inv) + g.class_of_prime(a))));
    }
    EXPECT_THROW(g.class_of_element(k.from_integer(Integer(0))), std::exception);
  }
}

TEST(RayClass, FundamentalSequenceIsExact) {
  for (const auto& c : kConfigs) {
    NumberField k = NumberField::parse(c.field);
    RayClassGroup g = ray_class_group(k, Modulus::parse(k, c.sigma));
    ExactnessReport r = is_exact(g.exact_sequence());
    EXPECT_TRUE(r.exact) << c.field << " " << c.sigma << " " << r.kind;
    EXPECT_TRUE(g.group().is_finite());
  }
}

TEST(RayClass, RestrictionIsSurjectiveAndCompatible) {
  NumberField k = NumberField::parse("x^2+5");
  RayClassGroup big = ray_class_group(k, Modulus::parse(k, "2,3:0,7:1"));
  RayClassGroup mid = ray_class_group(k, Modulus::parse(k, "3:0"));
  RayClassGroup small = ray_class_group(k, Modulus());
  GroupHom bm = ray_class_restriction(big, mid), ms = ray_class_restriction(mid, small);
  GroupHom bs = ray_class_restriction(big, small);
  EXPECT_TRUE(bm.is_surjective());
  EXPECT_TRUE(bs.is_surjective());
  GroupHom comp = compose(ms, bm);
  for (Index i = 0; i < big.group().generator_count(); ++i)
    EXPECT_TRUE(small.group().equal(comp.apply(big.group().unit(i)), bs.apply(big.group().unit(i))));
  EXPECT_THROW(ray_class_restriction(mid, big), std::invalid_argument);
}

TEST(RelativeUnits, Examples) {
  NumberField q;
  RelativeUnitGroup e = relative_units(q, Modulus());
  EXPECT_EQ(e.group().invariants(), std::vector<Integer>{2});
  EXPECT_EQ(e.generators.size(), 1u);
  EXPECT_EQ(e.generators[0], q.from_integer(Integer(-1)));
  EXPECT_TRUE(relative_units(q, Modulus::parse(q, "2,3")).group().is_trivial());
  NumberField q2 = NumberField::parse("x^2-2");
  EXPECT_EQ(relative_units(q2, Modulus()).group().invariants(), (std::vector<Integer>{2, 0}));
  NumberField qi = NumberField::parse("x^2+1");
  EXPECT_EQ(relative_units(qi, Modulus()).group().invariants(), std::vector<Integer>{4});
}

TEST(RelativeUnits, GeneratorsAreOneModM) {
  for (const auto& c : kConfigs) {
    NumberField k = NumberField::parse(c.field);
    Modulus m = Modulus::parse(k, c.sigma);
    RelativeUnitGroup e = relative_units(k, m);
    EXPECT_EQ(e.group().free_rank(), k.unit_rank()) << c.field;
    for (const RatVector& u : e.generators) {
      EXPECT_TRUE(k.norm(u) == 1 || k.norm(u) == -1);
      for (const auto& P : m.primes()) EXPECT_EQ(k.residue(u, P), 1u);
    }
  }
}

TEST(SUnits, RoundTripAndStructure) {
  NumberField q;
  SUnitGroup s = s_unit_group(q, Modulus::parse(q, "2,3"));
  EXPECT_EQ(s.group().invariants(), (std::vector<Integer>{2, 0, 0}));
  RatVector x = q.from_integer(Integer(-12)) / Rational(9);
  EXPECT_EQ(power_product(q, s.generators(), s.exponents(q, x)), x);
  EXPECT_THROW(s.exponents(q, q.from_integer(Integer(5))), std::domain_error);

  std::mt19937_64 rng(8);
  for (const auto& [field, t] : std::vector<std::pair<const char*, const char*>>{
           {"x^2+5", "2,3:1"}, {"x^2+1", "5:0,2"}, {"x^2-10", "3:0"}, {"x^2+23", "2:1"}}) {
    NumberField k = NumberField::parse(field);
    SUnitGroup su = s_unit_group(k, Modulus::parse(k, t));
    EXPECT_EQ(su.group().free_rank(), k.unit_rank() + static_cast<Index>(su.primes.size()));
    const auto gens = su.generators();
    for (int i = 0; i < 10; ++i) {
      IntVector e(static_cast<Index>(gens.size()));
      for (Index j = 0; j < e.size(); ++j) e(j) = static_cast<long>(rng() % 5) - 2;
      RatVector u = power_product(k, gens, e);
      EXPECT_TRUE(su.group().equal(su.exponents(k, u), e));
    }
  }
}

TEST(RelativeUnits, SmallerOpenHasFewerUnits) {
  NumberField k = NumberField::parse("x^2-2");
  RelativeUnitGroup wide = relative_units(k, Modulus::parse(k, "7:0"));
  RelativeUnitGroup narrow = relative_units(k, Modulus::parse(k, "7:0,3"));
  for (const RatVector& u : narrow.generators) EXPECT_NO_THROW(wide.coordinates(k, u));
  EXPECT_THROW(narrow.coordinates(k, k.from_integer(Integer(-1))), std::domain_error);
}
