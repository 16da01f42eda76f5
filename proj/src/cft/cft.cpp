#include "ahom/cft/cft.hpp"

#include "ahom/numfield/integer_factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace ahom {

// ---------------------------------------------------------------------------
// Over Q

namespace {

// Generators of (Z/p^k)^x with their orders.
std::vector<std::pair<long, long>> unit_generators(long p, long pk) {
  if (p == 2) {
    if (pk <= 2) return {};
    if (pk == 4) return {{3, 2}};
    return {{pk - 1, 2}, {5, pk / 4}};
  }
  const long phi = pk / p * (p - 1);
  for (long g = 2; g < pk; ++g) {
    if (g % p == 0) continue;
    long x = g, order = 1;
    while (x != 1) {
      x = x * g % pk;
      ++order;
    }
    if (order == phi) return {{g, phi}};
  }
  throw std::logic_error("no primitive root");
}

std::string describe_cokernel(const GroupHom& map) {
  const AbelianGroup c = map.cokernel();
  return c.is_trivial() ? "trivial" : c.describe();
}

std::string kernel_element(const GroupHom& map) {
  const Subgroup k = hom_kernel(map);
  for (Index j = 0; j < k.inclusion.cols(); ++j) {
    const IntVector x = k.inclusion.col(j);
    if (!map.source().is_zero(x)) return to_string(map.source().reduce(x));
  }
  return {};
}

}  // namespace

TameGaloisQ::TameGaloisQ(const Integer& m) : m_(m) {
  if (m < 1 || m > 1'000'000) throw std::invalid_argument("modulus must lie in [1, 10^6]");
  Index n = 0;
  for (const auto& [p, e] : factor_integer(m)) {
    const long pl = static_cast<long>(to_i64(p));
    long pk = 1;
    for (unsigned i = 0; i < e; ++i) pk *= pl;
    Component c{pk, {}, std::vector<std::vector<long>>(static_cast<std::size_t>(pk)), n};
    const auto gens = unit_generators(pl, pk);
    for (const auto& [g, o] : gens) c.orders.push_back(o);
    // At most two generators: walk their powers incrementally.
    const long g0 = gens.empty() ? 1 : gens[0].first, o0 = gens.empty() ? 1 : gens[0].second;
    const long g1 = gens.size() < 2 ? 1 : gens[1].first, o1 = gens.size() < 2 ? 1 : gens[1].second;
    long x = 1 % pk;
    for (long a = 0; a < o0; ++a, x = x * g0 % pk) {
      long y = x;
      for (long b = 0; b < o1; ++b, y = y * g1 % pk) {
        std::vector<long> e;
        if (!gens.empty()) e.push_back(a);
        if (gens.size() == 2) e.push_back(b);
        c.logs[static_cast<std::size_t>(y)] = std::move(e);
      }
    }
    n += static_cast<Index>(gens.size());
    components_.push_back(std::move(c));
  }
  IntMatrix rel = IntMatrix::Zero(n, n + 1);
  for (const auto& c : components_)
    for (std::size_t i = 0; i < c.orders.size(); ++i) rel(c.offset + static_cast<Index>(i), c.offset + static_cast<Index>(i)) = c.orders[i];
  if (n > 0) rel.col(n) = element_of_residue(m - 1);  // -1
  group_ = AbelianGroup(n, rel);
}

IntVector TameGaloisQ::element_of_residue(const Integer& a) const {
  if (gcd(a, m_) != 1) throw std::invalid_argument(a.str() + " is not coprime to " + m_.str());
  Index n = 0;
  for (const auto& c : components_) n += static_cast<Index>(c.orders.size());
  IntVector out = IntVector::Zero(n);
  for (const auto& c : components_) {
    const auto r = static_cast<std::size_t>(to_i64(floor_mod(a, Integer(c.modulus))));
    const auto& e = c.logs[r];
    for (std::size_t i = 0; i < e.size(); ++i) out(c.offset + static_cast<Index>(i)) = e[i];
  }
  return out;
}

IntVector rec_q(const TameGaloisQ& g, const ZeroCycle& c) {
  IntVector out = g.group().zero();
  for (const auto& [P, n] : c) {
    if (g.modulus() % P.p == 0)
      throw std::invalid_argument("cycle meets the modulus at " + P.label());
    out += Integer(n) * g.frobenius_of(P.p);
  }
  return out;
}

ReciprocityReport verify_tameclassfield_q(const Integer& m, const std::optional<OracleBounds>& oracle) {
  if (m < 1 || !is_squarefree(m)) throw std::invalid_argument("modulus " + m.str() + " is not squarefree");
  const TameGaloisQ gal(m);
  const NumberField q;
  std::vector<PrimeIdeal> ps;
  for (const auto& [p, e] : factor_integer(m)) {
    (void)e;
    ps.push_back(q.primes_above(p).front());
  }
  const Modulus mod(ps);
  const RayClassGroup rc = ray_class_group(q, mod);

  // Residue generator i is the class of (a) for an integer a lifting it.
  IntMatrix mat(gal.group().generator_count(), rc.group().generator_count());
  for (std::size_t i = 0; i < mod.size(); ++i) {
    const Integer a = rc.residue().lift_generator(q, i)(0);
    mat.col(static_cast<Index>(i)) = rec_q(gal, div_of_element(q, q.from_integer(a), Modulus()));
  }
  for (std::size_t j = 0; j < rc.class_primes().size(); ++j)
    mat.col(static_cast<Index>(mod.size() + j)) = gal.frobenius_of(rc.class_primes()[j].p);
  const GroupHom map(rc.group(), gal.group(), mat);

  ReciprocityReport r;
  r.check = "cft";
  r.config = "m=" + m.str();
  r.source = rc.group();
  r.target = gal.group();
  r.matrix = mat;
  r.injective = map.is_injective();
  r.surjective = map.is_surjective();
  if (!r.injective) r.kernel_witness = kernel_element(map);
  r.cokernel = describe_cokernel(map);
  if (oracle) {
    const OracleResult o = oracle_h0(q, mod, *oracle);
    IntMatrix om(gal.group().generator_count(), static_cast<Index>(o.generators.size()));
    for (std::size_t j = 0; j < o.generators.size(); ++j)
      om.col(static_cast<Index>(j)) = gal.frobenius_of(o.generators[j].p);
    r.oracle_checked = true;
    r.oracle_isomorphism = GroupHom(o.group, gal.group(), om).is_isomorphism();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Over F_q(t)

namespace {

bool contains(const std::vector<Place>& v, const Place& p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

// A place of the given degree outside sigma, if any.
std::optional<Place> place_outside(const FiniteField& f, int degree, const std::vector<Place>& sigma) {
  if (degree == 1 && !contains(sigma, Place::at_infinity())) return Place::at_infinity();
  for (auto& pi : monic_irreducibles(f, degree)) {
    Place p{false, pi};
    if (!contains(sigma, p)) return p;
  }
  return std::nullopt;
}

}  // namespace

TameGaloisFF::TameGaloisFF(std::uint64_t q, std::vector<Place> sigma)
    : field_(function_field_constants(q)), sigma_(std::move(sigma)) {
  std::sort(sigma_.begin(), sigma_.end());
  const auto s = static_cast<Index>(sigma_.size());
  IntMatrix rel = IntMatrix::Zero(s, s + 1);
  for (Index i = 0; i < s; ++i) {
    residues_.emplace_back(field_, sigma_[static_cast<std::size_t>(i)]);
    rel(i, i) = residues_.back().order();
    rel(i, s) = residues_.back().log(FqPoly{field_->primitive_element()});
  }
  degree_zero_ = AbelianGroup(s, rel);

  if (auto p = place_outside(*field_, 1, sigma_)) {
    splitting_ = {{*p, 1}};
  } else {
    for (int d = 2;; ++d) {
      auto a = place_outside(*field_, d, sigma_), b = place_outside(*field_, d + 1, sigma_);
      if (a && b) {
        splitting_ = normalize({{*b, 1}, {*a, -1}});
        break;
      }
    }
  }
}

IntVector TameGaloisFF::rec0(const FFDivisor& d) const {
  if (degree(d) != 0) throw std::invalid_argument("rec0 needs a divisor of degree zero");
  RationalFunction g{{1}, {1}};
  for (const auto& [p, n] : d) {
    if (contains(sigma_, p)) throw std::invalid_argument("divisor meets the removed place " + p.to_string(*field_));
    if (p.infinite) continue;
    FqPoly& side = n > 0 ? g.num : g.den;
    for (long i = 0; i < std::labs(n); ++i) side = fq::mul(*field_, side, p.pi);
  }
  IntVector out(static_cast<Index>(residues_.size()));
  for (std::size_t i = 0; i < residues_.size(); ++i)
    out(static_cast<Index>(i)) = residues_[i].log(residues_[i].residue(g));
  return out;
}

std::pair<IntVector, long> TameGaloisFF::rec(const FFDivisor& d) const {
  const long deg = degree(d);
  FFDivisor shifted = d;
  for (const auto& [p, n] : splitting_) shifted.emplace_back(p, -deg * n);
  return {rec0(normalize(std::move(shifted))), deg};
}

ReciprocityReport verify_ff_rec0(std::uint64_t q, const std::vector<Place>& sigma) {
  const FFPicard pic(q, sigma);
  const TameGaloisFF gal(q, sigma);
  const auto s = static_cast<Index>(pic.sigma().size());
  const DirectSum full = direct_sum({gal.degree_zero(), AbelianGroup::free(1)});

  // Residue generator i is the class of div(g) with g lifting it, whose
  // residues are the i-th generator of the Galois side.
  IntMatrix mat = IntMatrix::Zero(s + 1, pic.group().generator_count());
  for (Index i = 0; i < s; ++i) mat(i, i) = 1;
  for (std::size_t j = 0; j < pic.degree_places().size(); ++j) {
    const auto [g0, deg] = gal.rec({{pic.degree_places()[j], 1}});
    const auto col = static_cast<Index>(s + static_cast<Index>(j));
    mat.col(col).head(s) = g0;
    mat(s, col) = deg;
  }
  const GroupHom rec(pic.group(), full.group, mat);

  ReciprocityReport r;
  r.check = "ff-rec0";
  r.config = "q=" + std::to_string(q) + " sigma=";
  for (std::size_t i = 0; i < pic.sigma().size(); ++i)
    r.config += (i ? "," : "") + pic.sigma()[i].to_string(pic.field());
  if (pic.sigma().empty()) r.config += "{}";
  r.degree_compatible = IntMatrix(mat.bottomRows(1)) == pic.degree_map().matrix();

  const Subgroup zero = pic.degree_zero();
  const IntMatrix restricted = mat * zero.inclusion;
  for (Index j = 0; j < restricted.cols(); ++j)
    if (restricted(s, j) != 0) r.degree_compatible = false;
  const GroupHom rec0(zero.group, gal.degree_zero(), IntMatrix(restricted.topRows(s)));
  r.source = zero.group;
  r.target = gal.degree_zero();
  r.matrix = rec0.matrix();
  r.injective = rec0.is_injective();
  r.surjective = rec0.is_surjective();
  if (!r.injective) r.kernel_witness = kernel_element(rec0);
  r.cokernel = kZhatModZ;
  return r;
}

}  // namespace ahom
