#include "ahom/homology/homology.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ahom;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

NumberRing ring(const char* field, const char* sigma) {
  NumberField k = NumberField::parse(field);
  return NumberRing{k, Modulus::parse(k, sigma)};
}

// Random subset of the primes of norm <= bound.
Modulus random_modulus(const NumberField& k, std::mt19937_64& rng, long bound, std::size_t max_size) {
  std::vector<PrimeIdeal> all = k.primes_up_to_norm(Integer(bound));
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<std::size_t> size(0, max_size);
  all.resize(std::min(all.size(), size(rng)));
  return Modulus(all);
}

std::vector<Integer> random_rational_primes(std::mt19937_64& rng, std::size_t max_size) {
  std::vector<long> pool{2, 3, 5, 7, 11, 13};
  std::shuffle(pool.begin(), pool.end(), rng);
  std::uniform_int_distribution<std::size_t> size(0, max_size);
  std::vector<Integer> out;
  for (std::size_t i = 0, n = size(rng); i < n; ++i) out.emplace_back(pool[i]);
  return out;
}

const std::vector<const char*> kFields{"Q", "x^2+1", "x^2+5"};

}  // namespace

TEST(Homology, NumberRingExamples) {
  HomologyResult z = homology(ring("Q", ""));
  EXPECT_TRUE(z.h0.is_trivial());
  EXPECT_EQ(z.h1.invariants(), ints({2}));

  HomologyResult z6 = homology(ring("Q", "2,3"));
  EXPECT_TRUE(z6.h0.is_trivial());
  EXPECT_TRUE(z6.h1.is_trivial());

  HomologyResult zi = homology(ring("x^2+1", ""));
  EXPECT_TRUE(zi.h0.is_trivial());
  EXPECT_EQ(zi.h1.invariants(), ints({4}));

  HomologyResult z2 = homology(ring("x^2-2", ""));
  EXPECT_EQ(z2.h1.torsion_invariants(), ints({2}));
  EXPECT_EQ(z2.h1.free_rank(), 1);

  HomologyResult z5 = homology(ring("Q", "5"));
  EXPECT_EQ(z5.h0.invariants(), ints({2}));
  EXPECT_TRUE(z5.h1.is_trivial());
}

TEST(Homology, FunctionFieldExamples) {
  auto f3 = function_field_constants(3);
  HomologyResult a = homology(FFCurve{3, parse_places(*f3, "t,inf")});
  EXPECT_EQ(a.h0.torsion_invariants(), ints({2}));
  EXPECT_EQ(a.h0.free_rank(), 1);
  EXPECT_TRUE(a.h1.is_trivial());
  HomologyResult p1 = homology(FFCurve{5, {}});
  EXPECT_EQ(p1.h0.invariants(), ints({0}));
  EXPECT_EQ(p1.h1.invariants(), ints({4}));
}

TEST(Homology, NumberRingH0Finite) {
  std::mt19937_64 rng(11);
  for (const char* field : {"Q", "x^2+1", "x^2+5", "x^2-10", "x^2+23"}) {
    NumberField k = NumberField::parse(field);
    for (int i = 0; i < 4; ++i) {
      Modulus m = random_modulus(k, rng, 40, 3);
      EXPECT_TRUE(homology(NumberRing{k, m}).h0.is_finite()) << field << " " << m.to_string();
    }
  }
}

TEST(Homology, RelativeUnitsShrinkAlongOpens) {
  std::mt19937_64 rng(5);
  for (const char* field : {"Q", "x^2+1", "x^2-2", "x^2-10"}) {
    NumberField k = NumberField::parse(field);
    for (int i = 0; i < 4; ++i) {
      Modulus small = random_modulus(k, rng, 30, 2);
      Modulus big = small | random_modulus(k, rng, 30, 2);
      // Construction checks that every generator of the smaller group is a member.
      GroupHom inc = unit_inclusion(k, relative_units(k, big), relative_units(k, small));
      EXPECT_TRUE(inc.is_injective()) << field;
    }
  }
}

TEST(MayerVietoris, OpenCoverExamples) {
  NumberField q;
  CheckReport r = check_mv_open_cover(q, Modulus::parse(q, "2"), Modulus::parse(q, "3"));
  EXPECT_TRUE(r.ok) << r.witness;
  EXPECT_TRUE(check_mv_open_cover(q, Modulus(), Modulus()).ok);
  NumberField k = NumberField::parse("x^2+5");
  CheckReport s = check_mv_open_cover(k, Modulus::parse(k, "2"), Modulus::parse(k, "3:0"));
  EXPECT_TRUE(s.ok) << s.witness;
}

TEST(MayerVietoris, OpenCoverRandom) {
  std::mt19937_64 rng(2024);
  int nonzero_connecting = 0;
  for (int i = 0; i < 20; ++i) {
    NumberField k = NumberField::parse(kFields[static_cast<std::size_t>(i) % kFields.size()]);
    Modulus s1 = random_modulus(k, rng, 30, 3), s2 = random_modulus(k, rng, 30, 3);
    CheckReport r = check_mv_open_cover(k, s1, s2);
    EXPECT_TRUE(r.ok) << r.config << ": " << r.witness;
    if (!r.maps[3].is_zero()) ++nonzero_connecting;
  }
  EXPECT_GT(nonzero_connecting, 0);
}

TEST(MayerVietoris, SecondVariableExamples) {
  CheckReport r = check_mv_second_variable(ring("Q", "5"), ints({2}), ints({3}));
  EXPECT_TRUE(r.ok) << r.witness;
  CheckReport full = check_mv_second_variable(ring("Q", "5"), {}, {});
  EXPECT_TRUE(full.ok) << full.witness;
  CheckReport overlap = check_mv_second_variable(ring("Q", "5,7"), ints({5, 2}), ints({5, 7}));
  EXPECT_TRUE(overlap.ok) << overlap.witness;
}

TEST(MayerVietoris, SecondVariableRandom) {
  std::mt19937_64 rng(77);
  int nonzero_connecting = 0;
  for (int i = 0; i < 20; ++i) {
    NumberField k = NumberField::parse(kFields[static_cast<std::size_t>(i) % kFields.size()]);
    NumberRing x{k, random_modulus(k, rng, 30, 3)};
    CheckReport r = check_mv_second_variable(x, random_rational_primes(rng, 2), random_rational_primes(rng, 2));
    EXPECT_TRUE(r.ok) << r.config << ": " << r.witness;
    if (!r.maps[3].is_zero()) ++nonzero_connecting;
  }
  EXPECT_GT(nonzero_connecting, 0);
}

TEST(Gysin, SpecZRemoveFive) {
  CheckReport r = check_gysin(ring("Q", ""), Modulus::parse(NumberField(), "5"));
  ASSERT_TRUE(r.ok) << r.witness;
  ASSERT_EQ(r.terms.size(), 7u);
  EXPECT_TRUE(r.terms[0].is_trivial());
  EXPECT_TRUE(r.terms[1].is_trivial());
  EXPECT_EQ(r.terms[2].invariants(), ints({2}));
  EXPECT_EQ(r.terms[3].invariants(), ints({4}));
  EXPECT_EQ(r.terms[4].invariants(), ints({2}));
  EXPECT_TRUE(r.terms[5].is_trivial());
  EXPECT_TRUE(r.terms[6].is_trivial());
}

TEST(Gysin, Examples) {
  NumberField q;
  EXPECT_TRUE(check_gysin(ring("Q", ""), Modulus::parse(q, "7,11")).ok);
  NumberField gauss = NumberField::parse("x^2+1");
  CheckReport r = check_gysin(NumberRing{gauss, Modulus()}, Modulus::parse(gauss, "5:0"));
  EXPECT_TRUE(r.ok) << r.witness;
  auto f3 = function_field_constants(3);
  CheckReport c = check_gysin(FFCurve{3, parse_places(*f3, "inf")}, parse_places(*f3, "t"));
  EXPECT_TRUE(c.ok) << c.witness;
  EXPECT_THROW(check_gysin(ring("Q", "5"), Modulus::parse(q, "5")), std::invalid_argument);
}

TEST(Gysin, Random) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    NumberField k = NumberField::parse(kFields[static_cast<std::size_t>(i) % kFields.size()]);
    Modulus sigma = random_modulus(k, rng, 30, 2);
    Modulus d = random_modulus(k, rng, 40, 2) - sigma;
    if (d.empty()) d = Modulus({k.primes_above(Integer(43)).front()});
    CheckReport r = check_gysin(NumberRing{k, sigma}, d);
    EXPECT_TRUE(r.ok) << r.config << ": " << r.witness;
  }
  for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
    auto f = function_field_constants(q);
    for (const char* sigma : {"", "inf", "t,inf"}) {
      std::vector<Place> s = parse_places(*f, sigma);
      std::vector<Place> d;
      for (const auto& pi : monic_irreducibles(*f, 1)) {
        Place p{false, pi};
        if (std::find(s.begin(), s.end(), p) == s.end() && d.size() < 2) d.push_back(p);
      }
      for (const auto& pi : monic_irreducibles(*f, 2)) {
        d.push_back(Place{false, pi});
        break;
      }
      CheckReport r = check_gysin(FFCurve{q, s}, d);
      EXPECT_TRUE(r.ok) << r.config << ": " << r.witness;
    }
  }
}

TEST(NormMaps, CompositionIsDegree) {
  NumberField q;
  CheckReport gauss = check_norm_composition(NumberField::parse("x^2+1"), Modulus::parse(q, "5"));
  EXPECT_TRUE(gauss.ok) << gauss.witness;
  NormPair np = pushforward_norm(NumberField::parse("x^2+1"), Modulus::parse(q, "5"));
  EXPECT_EQ(np.lower.group().invariants(), ints({2}));
  EXPECT_TRUE(compose(np.push, np.pull).is_zero());

  CheckReport five = check_norm_composition(NumberField::parse("x^2+5"), Modulus());
  EXPECT_TRUE(five.ok) << five.witness;
  for (const char* field : {"x^2+1", "x^2+5", "x^2-2", "x^2+23", "x^2-10"})
    for (const char* sigma : {"", "3", "5", "7", "3,5", "13"}) {
      CheckReport r = check_norm_composition(NumberField::parse(field), Modulus::parse(q, sigma));
      EXPECT_TRUE(r.ok) << r.config << ": " << r.witness;
    }
}

TEST(DenseOpen, Examples) {
  NumberField q;
  EXPECT_TRUE(check_dense_open_surjectivity(ring("Q", "5"), Modulus::parse(q, "7")).ok);
  CheckReport same = check_dense_open_surjectivity(ring("Q", "5"), Modulus());
  EXPECT_TRUE(same.ok);
  EXPECT_TRUE(same.maps[0].is_isomorphism());
  NumberField gauss = NumberField::parse("x^2+1");
  EXPECT_TRUE(check_dense_open_surjectivity(NumberRing{gauss, Modulus()}, Modulus::parse(gauss, "13:0")).ok);
}

TEST(DenseOpen, Random) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    NumberField k = NumberField::parse(kFields[static_cast<std::size_t>(i) % kFields.size()]);
    NumberRing x{k, random_modulus(k, rng, 30, 2)};
    CheckReport r = check_dense_open_surjectivity(x, random_modulus(k, rng, 50, 2));
    EXPECT_TRUE(r.ok) << r.config << ": " << r.witness;
  }
  auto f = function_field_constants(3);
  CheckReport c = check_dense_open_surjectivity(FFCurve{3, parse_places(*f, "inf")}, parse_places(*f, "t,t+1"));
  EXPECT_TRUE(c.ok) << c.witness;
}
