#include "ahom/homology/homology.hpp"

#include "ahom/core/errors.hpp"
#include "ahom/numfield/integer_factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace ahom {

namespace {

std::string place_list(const FiniteField& f, const std::vector<Place>& places) {
  std::string out;
  for (const Place& p : places) out += (out.empty() ? "" : ",") + p.to_string(f);
  return "{" + out + "}";
}

std::string prime_list(const std::vector<Integer>& primes) {
  std::string out;
  for (const auto& p : primes) out += (out.empty() ? "" : ",") + p.str();
  return "{" + out + "}";
}

std::string modulus_list(const Modulus& m) { return "{" + m.to_string() + "}"; }

CheckReport sequence_report(std::string check, std::string config, std::vector<GroupHom> maps) {
  CheckReport r{std::move(check), std::move(config), false, {}, {}, {}};
  for (const auto& m : maps) r.terms.push_back(m.source());
  r.terms.push_back(maps.back().target());
  const ExactnessReport e = is_exact(maps);
  r.ok = e.exact;
  if (!e.exact)
    r.witness = "node " + std::to_string(*e.node) + " (" + e.kind + "): " +
                (e.witness ? to_string(*e.witness) : std::string("?"));
  r.maps = std::move(maps);
  return r;
}

// Every prime of k above the given rational primes.
Modulus primes_over(const NumberField& k, const std::vector<Integer>& primes) {
  std::vector<PrimeIdeal> out;
  for (const auto& p : primes) {
    if (!is_prime(p)) throw std::invalid_argument(p.str() + " is not prime");
    for (auto& P : k.primes_above(p))
      if (std::find(out.begin(), out.end(), P) == out.end()) out.push_back(P);
  }
  return Modulus(out);
}

std::vector<Integer> merge(std::vector<Integer> a, const std::vector<Integer>& b, bool intersect) {
  std::sort(a.begin(), a.end());
  std::vector<Integer> bs = b;
  std::sort(bs.begin(), bs.end());
  std::vector<Integer> out;
  if (intersect)
    std::set_intersection(a.begin(), a.end(), bs.begin(), bs.end(), std::back_inserter(out));
  else
    std::set_union(a.begin(), a.end(), bs.begin(), bs.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Element of O with valuation 1 at P and 0 at every prime of `others`.
RatVector local_uniformizer(const NumberField& k, const PrimeIdeal& P, const Modulus& others) {
  RatVector pi = k.from_integer(P.p);
  if (k.valuation(pi, P) != 1) pi = k.from_integral(P.generator);
  if (k.valuation(pi, P) != 1) pi = k.from_integral(IntVector(P.generator + k.to_integral(k.from_integer(P.p))));
  if (k.valuation(pi, P) != 1) throw std::logic_error("no uniformizer found at " + P.label());
  Ideal rest = k.unit_ideal();
  for (const auto& Q : others.primes())
    if (!(Q == P)) rest = k.mul(rest, k.ideal_of(Q));
  const IntVector x = k.crt_split(k.pow(k.ideal_of(P), 2), rest);
  const RatVector xr = k.from_integral(x);
  return pi + k.mul(xr, RatVector(k.one() - pi));
}

}  // namespace

std::string describe(const ArithScheme& x) {
  if (const auto* r = std::get_if<NumberRing>(&x))
    return "field=" + r->k.spec() + " sigma=" + modulus_list(r->sigma);
  const auto& c = std::get<FFCurve>(x);
  return "q=" + std::to_string(c.q) + " sigma=" + place_list(*function_field_constants(c.q), c.sigma);
}

HomologyResult homology(const ArithScheme& x) {
  if (const auto* r = std::get_if<NumberRing>(&x))
    return {ray_class_group(r->k, r->sigma).group(), relative_units(r->k, r->sigma).group()};
  const auto& c = std::get<FFCurve>(x);
  return {ff_h0(c.q, c.sigma).group(), ff_h1(c.q, c.sigma).group};
}

GroupHom unit_inclusion(const NumberField& k, const RelativeUnitGroup& from,
                        const RelativeUnitGroup& to) {
  IntMatrix mat(to.group().generator_count(), from.group().generator_count());
  for (std::size_t i = 0; i < from.generators.size(); ++i)
    mat.col(static_cast<Index>(i)) = to.coordinates(k, from.generators[i]);
  return GroupHom(from.group(), to.group(), mat);
}

// ---------------------------------------------------------------------------
// Mayer-Vietoris for an open cover

CheckReport check_mv_open_cover(const NumberField& k, const Modulus& s1, const Modulus& s2) {
  const Modulus s12 = s1 | s2, s0 = s1 & s2;
  const RelativeUnitGroup e12 = relative_units(k, s12), e1 = relative_units(k, s1),
                          e2 = relative_units(k, s2), e0 = relative_units(k, s0);
  const RayClassGroup c12 = ray_class_group(k, s12), c1 = ray_class_group(k, s1),
                      c2 = ray_class_group(k, s2), c0 = ray_class_group(k, s0);

  const DirectSum e_sum = direct_sum({e1.group(), e2.group()});
  const DirectSum c_sum = direct_sum({c1.group(), c2.group()});

  GroupHom a(e12.group(), e_sum.group,
             vstack({unit_inclusion(k, e12, e1).matrix(), unit_inclusion(k, e12, e2).matrix()}));
  GroupHom b(e_sum.group, e0.group(),
             hstack({unit_inclusion(k, e1, e0).matrix(), IntMatrix(-unit_inclusion(k, e2, e0).matrix())}));

  // u in h1(X) is glued from u on X1 and 1 on X2: its class is the residue
  // of u at the primes removed from X2 but not from X1.
  IntMatrix dmat = IntMatrix::Zero(c12.group().generator_count(), e0.group().generator_count());
  for (std::size_t j = 0; j < e0.generators.size(); ++j) {
    const IntVector logs = c12.residue().dlog(k, e0.generators[j]);
    for (std::size_t i = 0; i < s12.size(); ++i) {
      const PrimeIdeal& P = s12.primes()[i];
      if (s1.contains(P) && !s2.contains(P))
        dmat.col(static_cast<Index>(j)) += logs(static_cast<Index>(i)) * c12.residue_generator(i);
    }
  }
  GroupHom d(e0.group(), c12.group(), dmat);

  GroupHom g(c12.group(), c_sum.group,
             vstack({ray_class_restriction(c12, c1).matrix(), ray_class_restriction(c12, c2).matrix()}));
  GroupHom h(c_sum.group, c0.group(),
             hstack({ray_class_restriction(c1, c0).matrix(),
                     IntMatrix(-ray_class_restriction(c2, c0).matrix())}));

  std::vector<GroupHom> seq{GroupHom::zero(AbelianGroup::trivial(), e12.group()), a, b, d, g, h,
                            GroupHom::zero(c0.group(), AbelianGroup::trivial())};
  return sequence_report("mv-cover",
                         "field=" + k.spec() + " sigma1=" + modulus_list(s1) + " sigma2=" + modulus_list(s2),
                         std::move(seq));
}

// ---------------------------------------------------------------------------
// Mayer-Vietoris in the second variable

BivariantTerm bivariant_homology(const NumberRing& x, const std::vector<Integer>& removed) {
  const Modulus t = primes_over(x.k, removed);
  RayClassGroup c = ray_class_group(x.k, x.sigma - t);
  IntMatrix killed(c.group().generator_count(), static_cast<Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) killed.col(static_cast<Index>(i)) = c.class_of_prime(t.primes()[i]);
  AbelianGroup h0 = quotient(c.group(), killed);
  RelativeUnitGroup h1 = relative_units(x.k, x.sigma, t);
  return BivariantTerm{t, std::move(c), std::move(h0), std::move(h1)};
}

namespace {

// h0 map between bivariant terms for a smaller inverted set in `from`.
GroupHom bivariant_h0_map(const BivariantTerm& from, const BivariantTerm& to) {
  return GroupHom(from.h0, to.h0, ray_class_restriction(from.classes, to.classes).matrix());
}

// Connecting map h1(X, U n V) -> h0(X, U u V). A unit u of the U n V term is
// glued from u near the primes omitted by U only and 1 elsewhere; its class
// is read off after making it a unit at the modulus with a global element.
GroupHom bivariant_connecting(const NumberField& k, const BivariantTerm& cap, const BivariantTerm& cup,
                              const Modulus& a_only) {
  const RayClassGroup& rc = cup.classes;
  const Modulus& m = rc.modulus();
  IntMatrix mat = IntMatrix::Zero(rc.group().generator_count(), cap.h1.group().generator_count());
  for (std::size_t j = 0; j < cap.h1.generators.size(); ++j) {
    const RatVector& u = cap.h1.generators[j];
    RatVector a = k.one();
    IdealFactorization support;
    for (const PrimeIdeal& P : a_only.primes()) {
      const int v = k.valuation(u, P);
      if (v == 0) continue;
      support.emplace_back(P, v);
      if (m.contains(P)) a = k.mul(a, k.pow(local_uniformizer(k, P, m), -v));
    }
    Ideal ideal = k.principal_ideal(a);
    if (!support.empty()) ideal = k.mul(ideal, k.from_factorization(support));
    IntVector cls = rc.class_of(ideal);
    const RatVector au = k.mul(a, u);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const PrimeIdeal& P = m.primes()[i];
      const IntVector d = residue_units(k, Modulus({P})).dlog(k, a_only.contains(P) ? au : a);
      cls -= d(0) * rc.residue_generator(i);
    }
    mat.col(static_cast<Index>(j)) = cls;
  }
  return GroupHom(cap.h1.group(), cup.h0, mat);
}

}  // namespace

CheckReport check_mv_second_variable(const NumberRing& x, const std::vector<Integer>& u_removed,
                                     const std::vector<Integer>& v_removed) {
  const NumberField& k = x.k;
  const BivariantTerm tu = bivariant_homology(x, u_removed), tv = bivariant_homology(x, v_removed),
                      cup = bivariant_homology(x, merge(u_removed, v_removed, true)),
                      cap = bivariant_homology(x, merge(u_removed, v_removed, false));

  const DirectSum e_sum = direct_sum({tu.h1.group(), tv.h1.group()});
  const DirectSum c_sum = direct_sum({tu.h0, tv.h0});

  GroupHom a(cup.h1.group(), e_sum.group,
             vstack({unit_inclusion(k, cup.h1, tu.h1).matrix(), unit_inclusion(k, cup.h1, tv.h1).matrix()}));
  GroupHom b(e_sum.group, cap.h1.group(),
             hstack({unit_inclusion(k, tu.h1, cap.h1).matrix(),
                     IntMatrix(-unit_inclusion(k, tv.h1, cap.h1).matrix())}));
  GroupHom d = bivariant_connecting(k, cap, cup, tu.inverted - tv.inverted);
  GroupHom g(cup.h0, c_sum.group, vstack({bivariant_h0_map(cup, tu).matrix(), bivariant_h0_map(cup, tv).matrix()}));
  GroupHom h(c_sum.group, cap.h0,
             hstack({bivariant_h0_map(tu, cap).matrix(), IntMatrix(-bivariant_h0_map(tv, cap).matrix())}));

  std::vector<GroupHom> seq{GroupHom::zero(AbelianGroup::trivial(), cup.h1.group()), a, b, d, g, h,
                            GroupHom::zero(cap.h0, AbelianGroup::trivial())};
  return sequence_report("mv-base",
                         "field=" + k.spec() + " sigma=" + modulus_list(x.sigma) + " U omits " +
                             prime_list(u_removed) + " V omits " + prime_list(v_removed),
                         std::move(seq));
}

// ---------------------------------------------------------------------------
// Gysin

CheckReport check_gysin(const NumberRing& x, const Modulus& removed) {
  const NumberField& k = x.k;
  if (removed.empty()) throw std::invalid_argument("the removed set must be nonempty");
  for (const auto& P : removed.primes())
    if (x.sigma.contains(P)) throw std::invalid_argument(P.label() + " is already removed");
  const Modulus big = x.sigma | removed;
  const RelativeUnitGroup eu = relative_units(k, big), ex = relative_units(k, x.sigma);
  const RayClassGroup cu = ray_class_group(k, big), cx = ray_class_group(k, x.sigma);
  const ResidueUnitGroup res = residue_units(k, removed);

  GroupHom a = unit_inclusion(k, eu, ex);
  IntMatrix logs(res.group.generator_count(), ex.group().generator_count());
  for (std::size_t j = 0; j < ex.generators.size(); ++j)
    logs.col(static_cast<Index>(j)) = res.dlog(k, ex.generators[j]);
  GroupHom b(ex.group(), res.group, logs);
  IntMatrix gens(cu.group().generator_count(), res.group.generator_count());
  for (std::size_t i = 0; i < removed.size(); ++i)
    gens.col(static_cast<Index>(i)) = cu.residue_generator(static_cast<std::size_t>(big.index_of(removed.primes()[i])));
  GroupHom c(res.group, cu.group(), gens);
  GroupHom d = ray_class_restriction(cu, cx);

  std::vector<GroupHom> seq{GroupHom::zero(AbelianGroup::trivial(), eu.group()), a, b, c, d,
                            GroupHom::zero(cx.group(), AbelianGroup::trivial())};
  return sequence_report("gysin",
                         "field=" + k.spec() + " sigma=" + modulus_list(x.sigma) + " remove=" + modulus_list(removed),
                         std::move(seq));
}

CheckReport check_gysin(const FFCurve& x, const std::vector<Place>& removed) {
  if (removed.empty()) throw std::invalid_argument("the removed set must be nonempty");
  auto f = function_field_constants(x.q);
  std::vector<Place> big = x.sigma;
  for (const Place& p : removed) {
    if (std::find(big.begin(), big.end(), p) != big.end())
      throw std::invalid_argument(p.to_string(*f) + " is already removed");
    big.push_back(p);
  }
  std::sort(big.begin(), big.end());
  const FFUnits eu = ff_h1(x.q, big), ex = ff_h1(x.q, x.sigma);
  const FFPicard pu = ff_h0(x.q, big), px = ff_h0(x.q, x.sigma);

  std::vector<PlaceResidues> residues;
  std::vector<AbelianGroup> parts;
  for (const Place& p : removed) {
    residues.emplace_back(f, p);
    parts.push_back(AbelianGroup::cyclic(residues.back().order()));
  }
  const AbelianGroup twist = direct_sum(parts).group;

  // h1(U) is trivial: U misses at least one place.
  GroupHom a = GroupHom::zero(eu.group, ex.group);
  IntMatrix logs = IntMatrix::Zero(twist.generator_count(), ex.group.generator_count());
  for (std::size_t j = 0; j < ex.generators.size(); ++j)
    for (std::size_t i = 0; i < residues.size(); ++i)
      logs(static_cast<Index>(i), static_cast<Index>(j)) = residues[i].log(FqPoly{ex.generators[j]});
  GroupHom b(ex.group, twist, logs);
  IntMatrix gens = IntMatrix::Zero(pu.group().generator_count(), twist.generator_count());
  for (std::size_t i = 0; i < removed.size(); ++i) {
    const auto pos = std::find(big.begin(), big.end(), removed[i]) - big.begin();
    gens(pos, static_cast<Index>(i)) = 1;
  }
  GroupHom c(twist, pu.group(), gens);
  GroupHom d = ff_restriction(pu, px);

  std::vector<GroupHom> seq{GroupHom::zero(AbelianGroup::trivial(), eu.group), a, b, c, d,
                            GroupHom::zero(px.group(), AbelianGroup::trivial())};
  return sequence_report("gysin",
                         "q=" + std::to_string(x.q) + " sigma=" + place_list(*f, x.sigma) +
                             " remove=" + place_list(*f, removed),
                         std::move(seq));
}

// ---------------------------------------------------------------------------
// Norm and extension

NormPair pushforward_norm(const NumberField& upper, const Modulus& sigma) {
  if (!upper.is_quadratic()) throw UnsupportedError("norm maps are implemented for quadratic fields over Q");
  const NumberField q;
  std::vector<Integer> rational;
  for (const auto& p : sigma.primes()) rational.push_back(p.p);
  const Modulus lower_m = primes_over(q, rational);
  const Modulus upper_m = primes_over(upper, rational);
  RayClassGroup up = ray_class_group(upper, upper_m);
  RayClassGroup down = ray_class_group(q, lower_m);

  IntMatrix push(down.group().generator_count(), up.group().generator_count());
  for (std::size_t i = 0; i < upper_m.size(); ++i) {
    const RatVector a = upper.from_integral(up.residue().lift_generator(upper, i));
    const Rational n = upper.norm(a);
    push.col(static_cast<Index>(i)) = down.class_of_element(q.from_integer(Integer(numerator(n))));
  }
  for (std::size_t j = 0; j < up.class_primes().size(); ++j) {
    const PrimeIdeal& Q = up.class_primes()[j];
    push.col(static_cast<Index>(upper_m.size() + j)) =
        Integer(Q.f) * down.class_of_prime(q.primes_above(Q.p).front());
  }

  IntMatrix pull(up.group().generator_count(), down.group().generator_count());
  for (std::size_t i = 0; i < lower_m.size(); ++i) {
    const IntVector a = down.residue().lift_generator(q, i);
    pull.col(static_cast<Index>(i)) = up.class_of_element(upper.from_integer(a(0)));
  }
  for (std::size_t j = 0; j < down.class_primes().size(); ++j)
    pull.col(static_cast<Index>(lower_m.size() + j)) =
        up.class_of_element(upper.from_integer(down.class_primes()[j].p));

  GroupHom push_map(up.group(), down.group(), push);
  GroupHom pull_map(down.group(), up.group(), pull);
  return NormPair{std::move(up), std::move(down), std::move(push_map), std::move(pull_map)};
}

CheckReport check_norm_composition(const NumberField& upper, const Modulus& sigma) {
  NormPair np = pushforward_norm(upper, sigma);
  const GroupHom comp = compose(np.push, np.pull);
  const AbelianGroup& g = np.lower.group();
  CheckReport r{"norm", "field=" + upper.spec() + " sigma=" + modulus_list(sigma), true, {}, {g, np.upper.group()}, {}};
  for (Index i = 0; i < g.generator_count(); ++i) {
    const IntVector diff = comp.apply(g.unit(i)) - Integer(2) * g.unit(i);
    if (!g.is_zero(diff)) {
      r.ok = false;
      r.witness = "generator " + std::to_string(i) + ": f_* f^* - 2 = " + to_string(g.reduce(diff));
      break;
    }
  }
  r.maps = {np.pull, np.push};
  return r;
}

// ---------------------------------------------------------------------------
// Dense opens

namespace {

CheckReport surjectivity_report(std::string config, const GroupHom& map) {
  CheckReport r{"dense-open", std::move(config), map.is_surjective(), {}, {map.source(), map.target()}, {map}};
  if (!r.ok) r.witness = "cokernel " + map.cokernel().describe();
  return r;
}

}  // namespace

CheckReport check_dense_open_surjectivity(const NumberRing& x, const Modulus& extra) {
  const RayClassGroup small = ray_class_group(x.k, x.sigma);
  const RayClassGroup big = ray_class_group(x.k, x.sigma | extra);
  return surjectivity_report("field=" + x.k.spec() + " sigma=" + modulus_list(x.sigma) + " extra=" + modulus_list(extra),
                             ray_class_restriction(big, small));
}

CheckReport check_dense_open_surjectivity(const FFCurve& x, const std::vector<Place>& extra) {
  auto f = function_field_constants(x.q);
  std::vector<Place> big = x.sigma;
  for (const Place& p : extra)
    if (std::find(big.begin(), big.end(), p) == big.end()) big.push_back(p);
  std::sort(big.begin(), big.end());
  return surjectivity_report("q=" + std::to_string(x.q) + " sigma=" + place_list(*f, x.sigma) +
                                 " extra=" + place_list(*f, extra),
                             ff_restriction(ff_h0(x.q, big), ff_h0(x.q, x.sigma)));
}

}  // namespace ahom
