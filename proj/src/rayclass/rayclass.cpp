#include "ahom/rayclass/rayclass.hpp"

#include "ahom/core/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ahom {

// ---------------------------------------------------------------------------
// Modulus

Modulus::Modulus(std::vector<PrimeIdeal> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  for (std::size_t i = 1; i < primes_.size(); ++i)
    if (primes_[i] == primes_[i - 1])
      throw std::invalid_argument("modulus must be squarefree: prime " + primes_[i].label() +
                                  " repeated");
}

Modulus Modulus::parse(const NumberField& k, const std::string& spec) {
  std::vector<PrimeIdeal> out;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    out.push_back(k.prime(item));
  }
  return Modulus(std::move(out));
}

bool Modulus::contains(const PrimeIdeal& p) const { return index_of(p) >= 0; }

Index Modulus::index_of(const PrimeIdeal& p) const {
  for (std::size_t i = 0; i < primes_.size(); ++i)
    if (primes_[i] == p) return static_cast<Index>(i);
  return -1;
}

bool Modulus::is_subset_of(const Modulus& other) const {
  return std::all_of(primes_.begin(), primes_.end(),
                     [&](const PrimeIdeal& p) { return other.contains(p); });
}

Ideal Modulus::ideal(const NumberField& k) const {
  Ideal out = k.unit_ideal();
  for (const auto& p : primes_) out = k.mul(out, k.ideal_of(p));
  return out;
}

std::string Modulus::to_string() const {
  std::string out;
  for (const auto& p : primes_) {
    if (!out.empty()) out += ",";
    out += p.label();
  }
  return out;
}

Modulus operator|(const Modulus& a, const Modulus& b) {
  std::vector<PrimeIdeal> out = a.primes_;
  for (const auto& p : b.primes_)
    if (!a.contains(p)) out.push_back(p);
  return Modulus(std::move(out));
}

Modulus operator&(const Modulus& a, const Modulus& b) {
  std::vector<PrimeIdeal> out;
  for (const auto& p : a.primes_)
    if (b.contains(p)) out.push_back(p);
  return Modulus(std::move(out));
}

Modulus operator-(const Modulus& a, const Modulus& b) {
  std::vector<PrimeIdeal> out;
  for (const auto& p : a.primes_)
    if (!b.contains(p)) out.push_back(p);
  return Modulus(std::move(out));
}

// ---------------------------------------------------------------------------
// Residue units

ResidueUnitGroup residue_units(const NumberField& k, const Modulus& m) {
  (void)k;
  ResidueUnitGroup out;
  out.modulus = m;
  const auto n = static_cast<Index>(m.size());
  IntMatrix rel = IntMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const FiniteField& f = *m.primes()[static_cast<std::size_t>(i)].residue_field;
    out.orders.emplace_back(f.order() - 1);
    out.generators.push_back(f.primitive_element());
    rel(i, i) = out.orders.back();
  }
  out.group = AbelianGroup(n, rel);
  return out;
}

IntVector ResidueUnitGroup::dlog(const NumberField& k, const RatVector& a) const {
  IntVector out(static_cast<Index>(modulus.size()));
  for (std::size_t i = 0; i < modulus.size(); ++i) {
    const PrimeIdeal& p = modulus.primes()[i];
    if (k.valuation(a, p) != 0)
      throw std::invalid_argument(k.to_string(a) + " is not a unit at " + p.label());
    out(static_cast<Index>(i)) = p.residue_field->log(k.residue(a, p));
  }
  return out;
}

IntVector ResidueUnitGroup::lift_generator(const NumberField& k, std::size_t i) const {
  std::vector<IntVector> targets;
  for (std::size_t j = 0; j < modulus.size(); ++j)
    targets.push_back(j == i ? k.lift_residue(generators[i], modulus.primes()[i])
                             : k.to_integral(k.one()));
  return k.crt(modulus.primes(), targets);
}

// ---------------------------------------------------------------------------
// Shared class and unit groups

namespace {

template <typename T>
const T& memoized(const NumberField& k, T (*compute)(const NumberField&)) {
  static std::mutex lock;
  static std::map<std::string, std::unique_ptr<T>> cache;
  const std::string key = zpoly::to_string(k.order_poly());
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<T>(compute(k))).first;
  return *it->second;
}

Ideal ideal_power_product(const NumberField& k, const std::vector<PrimeIdeal>& primes,
                          const IntVector& e) {
  IdealFactorization f;
  for (Index i = 0; i < e.size(); ++i)
    if (e(i) != 0) f.emplace_back(primes[static_cast<std::size_t>(i)], static_cast<int>(to_i64(e(i))));
  return k.from_factorization(f);
}

// Columns: class-group exponents of each prime.
IntMatrix class_columns(const NumberField& k, const ClassGroup& cl,
                        const std::vector<PrimeIdeal>& primes, std::vector<RatVector>* alphas) {
  IntMatrix out(cl.group.generator_count(), static_cast<Index>(primes.size()));
  for (std::size_t j = 0; j < primes.size(); ++j) {
    ClassDecomposition d = decompose_class(k, cl, k.ideal_of(primes[j]));
    out.col(static_cast<Index>(j)) = d.exponents;
    if (alphas) alphas->push_back(d.alpha);
  }
  return out;
}

}  // namespace

const ClassGroup& cached_class_group(const NumberField& k) { return memoized(k, &class_group); }
const UnitGroup& cached_unit_group(const NumberField& k) { return memoized(k, &unit_group); }

RatVector power_product(const NumberField& k, const std::vector<RatVector>& generators,
                        const IntVector& exponents) {
  RatVector out = k.one();
  for (Index i = 0; i < exponents.size(); ++i)
    if (exponents(i) != 0)
      out = k.mul(out, k.pow(generators[static_cast<std::size_t>(i)], to_i64(exponents(i))));
  return out;
}

// ---------------------------------------------------------------------------
// Ray class groups

RayClassGroup::RayClassGroup(NumberField k, Modulus m)
    : k_(std::move(k)), m_(std::move(m)) {
  residue_ = residue_units(k_, m_);
  cl_ = &cached_class_group(k_);
  units_ = &cached_unit_group(k_);
  const Integer class_number = *cl_->group.order();

  // Greedily pick primes outside m until their classes generate Cl(k).
  const Index ncl = cl_->group.generator_count();
  class_prime_classes_ = IntMatrix(ncl, 0);
  Integer reached = 1;
  for (Integer bound = 2; reached != class_number; bound *= 2) {
    if (bound > 1'000'000) throw BoundExceededError("no primes outside the modulus generate Cl(k)");
    for (const PrimeIdeal& p : k_.primes_up_to_norm(bound)) {
      if (reached == class_number) break;
      if (p.norm() * 2 <= bound && bound > 2) continue;  // seen in an earlier round
      if (m_.contains(p)) continue;
      ClassDecomposition d = decompose_class(k_, *cl_, k_.ideal_of(p));
      IntMatrix cand = hstack({class_prime_classes_, IntMatrix(d.exponents)});
      const Integer order = *subgroup_generated(cl_->group, cand).group.order();
      if (order == reached) continue;
      reached = order;
      class_primes_.push_back(p);
      class_prime_alpha_.push_back(d.alpha);
      class_prime_classes_ = cand;
    }
  }

  const auto s = static_cast<Index>(m_.size());
  const auto nj = static_cast<Index>(class_primes_.size());
  std::vector<IntMatrix> blocks;
  IntMatrix orders = IntMatrix::Zero(s + nj, s);
  for (Index i = 0; i < s; ++i) orders(i, i) = residue_.orders[static_cast<std::size_t>(i)];
  blocks.push_back(orders);

  const auto unit_gens = units_->generators();
  IntMatrix unit_rel = IntMatrix::Zero(s + nj, static_cast<Index>(unit_gens.size()));
  for (std::size_t i = 0; i < unit_gens.size(); ++i)
    unit_rel.col(static_cast<Index>(i)).head(s) = residue_.dlog(k_, unit_gens[i]);
  blocks.push_back(unit_rel);

  // prod Q_j^{r_j} = (alpha_r) for r in the kernel of Z^J -> Cl(k).
  const IntMatrix& rel = cl_->group.relations();
  const IntMatrix ker = integer_kernel(IntMatrix(hstack({class_prime_classes_, rel})));
  IntMatrix ker_rel = IntMatrix::Zero(s + nj, ker.cols());
  for (Index c = 0; c < ker.cols(); ++c) {
    const IntVector r = ker.col(c).head(nj);
    const IntVector t = ker.col(c).tail(rel.cols());
    RatVector alpha = k_.mul(power_product(k_, class_prime_alpha_, r),
                             power_product(k_, cl_->witnesses, IntVector(-t)));
    ker_rel.col(c).head(s) = -residue_.dlog(k_, alpha);
    ker_rel.col(c).tail(nj) = r;
  }
  blocks.push_back(ker_rel);
  group_ = AbelianGroup(s + nj, hstack(blocks));
  if (!group_.is_finite()) throw std::logic_error("ray class group came out infinite");
}

RayClassGroup::Decomposition RayClassGroup::decompose(const Ideal& a) const {
  ClassDecomposition d = decompose_class(k_, *cl_, a);
  const auto nj = static_cast<Index>(class_primes_.size());
  const IntMatrix& rel = cl_->group.relations();
  auto x = solve_in_lattice(IntMatrix(hstack({class_prime_classes_, rel})), d.exponents);
  if (!x) throw std::logic_error("class primes do not generate the class group");
  const IntVector b = x->head(nj);
  const IntVector t = x->tail(rel.cols());
  RatVector alpha = k_.mul(d.alpha, power_product(k_, cl_->witnesses, t));
  alpha = k_.mul(alpha, power_product(k_, class_prime_alpha_, IntVector(-b)));
  return {b, alpha};
}

IntVector RayClassGroup::class_of(const Ideal& a) const {
  Decomposition d = decompose(a);
  IntVector out(group_.generator_count());
  const auto s = static_cast<Index>(m_.size());
  try {
    out.head(s) = residue_.dlog(k_, d.alpha);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("ideal is not coprime to the modulus " + m_.to_string());
  }
  out.tail(d.class_exponents.size()) = d.class_exponents;
  return out;
}

IntVector RayClassGroup::class_of_prime(const PrimeIdeal& p) const {
  if (m_.contains(p)) throw std::invalid_argument("prime " + p.label() + " divides the modulus");
  for (std::size_t j = 0; j < class_primes_.size(); ++j)
    if (class_primes_[j] == p) return group_.unit(static_cast<Index>(m_.size() + j));
  return class_of(k_.ideal_of(p));
}

IntVector RayClassGroup::class_of_element(const RatVector& a) const {
  IntVector out = IntVector::Zero(group_.generator_count());
  out.head(static_cast<Index>(m_.size())) = residue_.dlog(k_, a);
  return out;
}

IntVector RayClassGroup::residue_generator(std::size_t i) const {
  return group_.unit(static_cast<Index>(i));
}

GroupHom RayClassGroup::unit_map() const {
  const auto gens = units_->generators();
  IntMatrix mat(static_cast<Index>(m_.size()), static_cast<Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i)
    mat.col(static_cast<Index>(i)) = residue_.dlog(k_, gens[i]);
  return GroupHom(units_->group(), residue_.group, mat);
}

GroupHom RayClassGroup::residue_map() const {
  const auto s = static_cast<Index>(m_.size());
  IntMatrix mat = IntMatrix::Zero(group_.generator_count(), s);
  mat.topRows(s) = IntMatrix::Identity(s, s);
  return GroupHom(residue_.group, group_, mat);
}

GroupHom RayClassGroup::class_group_map() const {
  IntMatrix zero = IntMatrix::Zero(cl_->group.generator_count(), static_cast<Index>(m_.size()));
  return GroupHom(group_, cl_->group, hstack({zero, class_prime_classes_}));
}

std::vector<GroupHom> RayClassGroup::exact_sequence() const {
  return {unit_map(), residue_map(), class_group_map(),
          GroupHom::zero(cl_->group, AbelianGroup::trivial())};
}

RayClassGroup ray_class_group(const NumberField& k, const Modulus& m) {
  return RayClassGroup(k, m);
}

GroupHom ray_class_restriction(const RayClassGroup& from, const RayClassGroup& to) {
  if (!from.field().same_field(to.field()))
    throw std::invalid_argument("ray class groups over different fields");
  if (!to.modulus().is_subset_of(from.modulus()))
    throw std::invalid_argument("target modulus is not contained in the source modulus");
  const NumberField& k = from.field();
  IntMatrix mat(to.group().generator_count(), from.group().generator_count());
  const std::size_t s = from.modulus().size();
  for (std::size_t i = 0; i < s; ++i)
    mat.col(static_cast<Index>(i)) =
        to.class_of_element(k.from_integral(from.residue().lift_generator(k, i)));
  for (std::size_t j = 0; j < from.class_primes().size(); ++j)
    mat.col(static_cast<Index>(s + j)) = to.class_of_prime(from.class_primes()[j]);
  return GroupHom(from.group(), to.group(), mat);
}

// ---------------------------------------------------------------------------
// S-units and relative units

std::vector<RatVector> SUnitGroup::generators() const {
  std::vector<RatVector> out = units.generators();
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

AbelianGroup SUnitGroup::group() const {
  const Index n = 1 + static_cast<Index>(units.fundamental_units.size() + extra.size());
  IntMatrix rel = IntMatrix::Zero(n, 1);
  rel(0, 0) = units.torsion_order;
  return AbelianGroup(n, rel);
}

IntVector SUnitGroup::exponents(const NumberField& k, const RatVector& u) const {
  if (k.is_zero(u)) throw std::domain_error("zero is not an S-unit");
  const auto t = static_cast<Index>(primes.size());
  IntVector v(t);
  for (Index i = 0; i < t; ++i) v(i) = k.valuation(u, primes.primes()[static_cast<std::size_t>(i)]);
  auto c = solve_in_lattice(extra_valuations, v);
  if (!c) throw std::domain_error(k.to_string(u) + " is not an S-unit");
  const RatVector rest = k.div(u, power_product(k, extra, *c));
  const IntVector e = unit_exponents(k, units, rest);
  IntVector out(e.size() + c->size());
  out << e, *c;
  return out;
}

SUnitGroup s_unit_group(const NumberField& k, const Modulus& t) {
  SUnitGroup out;
  out.primes = t;
  out.units = cached_unit_group(k);
  const auto nt = static_cast<Index>(t.size());
  out.extra_valuations = IntMatrix(nt, 0);
  if (nt == 0) return out;
  const ClassGroup& cl = cached_class_group(k);
  const IntMatrix cols = class_columns(k, cl, t.primes(), nullptr);
  const IntMatrix ker = integer_kernel(IntMatrix(hstack({cols, cl.group.relations()})));
  const IntMatrix basis = lattice_basis(IntMatrix(ker.topRows(nt)));
  out.extra_valuations = basis;
  for (Index c = 0; c < basis.cols(); ++c) {
    auto g = is_principal(k, ideal_power_product(k, t.primes(), basis.col(c)));
    if (!g) throw std::logic_error("principal exponent vector without a generator");
    out.extra.push_back(*g);
  }
  return out;
}

RelativeUnitGroup relative_units(const NumberField& k, const Modulus& m, const Modulus& inverted) {
  RelativeUnitGroup out;
  out.modulus = m;
  out.inverted = inverted;
  out.s_units = s_unit_group(k, inverted);
  const ResidueUnitGroup res = residue_units(k, m - inverted);
  const auto gens = out.s_units.generators();
  IntMatrix mat(static_cast<Index>(res.modulus.size()), static_cast<Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) mat.col(static_cast<Index>(i)) = res.dlog(k, gens[i]);
  out.subgroup = hom_kernel(GroupHom(out.s_units.group(), res.group, mat));
  for (Index c = 0; c < out.subgroup.inclusion.cols(); ++c)
    out.generators.push_back(power_product(k, gens, out.subgroup.inclusion.col(c)));
  return out;
}

IntVector RelativeUnitGroup::coordinates(const NumberField& k, const RatVector& u) const {
  const IntVector e = s_units.exponents(k, u);
  GroupHom inc(subgroup.group, s_units.group(), subgroup.inclusion);
  auto x = inc.lift(e);
  if (!x) throw std::domain_error(k.to_string(u) + " is not congruent to 1 modulo " + modulus.to_string());
  return *x;
}

}  // namespace ahom
