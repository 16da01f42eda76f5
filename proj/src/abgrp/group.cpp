#include "ahom/abgrp/group.hpp"

#include "ahom/core/errors.hpp"

#include <sstream>
#include <stdexcept>

namespace ahom {

Integer invmod(const Integer& a, const Integer& m) {
  auto [g, s, t] = ext_gcd(floor_mod(a, m), m);
  (void)t;
  if (g != 1) throw std::domain_error("invmod: " + a.str() + " not invertible mod " + m.str());
  return floor_mod(s, m);
}

std::string to_string(const Rational& a) {
  if (denominator_of(a) == 1) return numerator_of(a).str();
  return numerator_of(a).str() + "/" + denominator_of(a).str();
}

std::vector<Integer> to_std(const IntVector& v) {
  return std::vector<Integer>(v.data(), v.data() + v.size());
}

IntVector from_std(const std::vector<Integer>& v) {
  IntVector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = v[i];
  return out;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '[';
  for (Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i).str();
  os << ']';
  return os.str();
}

AbelianGroup::AbelianGroup(Index generators, IntMatrix relations)
    : generators_(generators), relations_(std::move(relations)) {
  if (relations_.rows() != generators_) {
    if (relations_.size() == 0)
      relations_ = IntMatrix(generators_, 0);
    else
      throw std::invalid_argument("relation matrix must have one row per generator");
  }
  lattice_ = lattice_basis(relations_);
  smith_ = smith_decomposition(lattice_);
  full_diagonal_.assign(static_cast<std::size_t>(generators_), Integer(0));
  for (Index i = 0; i < std::min(lattice_.rows(), lattice_.cols()); ++i)
    full_diagonal_[static_cast<std::size_t>(i)] = smith_.d(i, i);
  for (Index i = 0; i < generators_; ++i) {
    const Integer& d = full_diagonal_[static_cast<std::size_t>(i)];
    if (d == 1) continue;
    invariant_rows_.push_back(i);
    invariants_.push_back(d);
  }
}

AbelianGroup AbelianGroup::free(Index rank) { return AbelianGroup(rank, IntMatrix(rank, 0)); }

AbelianGroup AbelianGroup::cyclic(const Integer& order) {
  return from_orders({order});
}

AbelianGroup AbelianGroup::from_orders(const std::vector<Integer>& orders) {
  const Index n = static_cast<Index>(orders.size());
  IntMatrix rel = IntMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) rel(i, i) = orders[static_cast<std::size_t>(i)];
  return AbelianGroup(n, rel);
}

std::vector<Integer> AbelianGroup::torsion_invariants() const {
  std::vector<Integer> out;
  for (const auto& d : invariants_)
    if (d != 0) out.push_back(d);
  return out;
}

Index AbelianGroup::free_rank() const {
  Index r = 0;
  for (const auto& d : invariants_)
    if (d == 0) ++r;
  return r;
}

std::optional<Integer> AbelianGroup::order() const {
  Integer n = 1;
  for (const auto& d : invariants_) {
    if (d == 0) return std::nullopt;
    n *= d;
  }
  return n;
}

IntVector AbelianGroup::reduce(const IntVector& x) const {
  if (x.size() != generators_) throw std::invalid_argument("element has wrong length");
  IntVector y = smith_.u * x;
  IntVector out(static_cast<Index>(invariant_rows_.size()));
  for (std::size_t k = 0; k < invariant_rows_.size(); ++k) {
    const Integer& d = invariants_[k];
    const Integer& v = y(invariant_rows_[k]);
    out(static_cast<Index>(k)) = d == 0 ? v : floor_mod(v, d);
  }
  return out;
}

bool AbelianGroup::is_zero(const IntVector& x) const {
  IntVector r = reduce(x);
  for (Index i = 0; i < r.size(); ++i)
    if (r(i) != 0) return false;
  return true;
}

Integer AbelianGroup::element_order(const IntVector& x) const {
  IntVector r = reduce(x);
  Integer ord = 1;
  for (Index i = 0; i < r.size(); ++i) {
    if (r(i) == 0) continue;
    const Integer& d = invariants_[static_cast<std::size_t>(i)];
    if (d == 0) return 0;
    Integer o = d / gcd_of(d, Integer(r(i)));
    ord = ord / gcd_of(ord, o) * o;
  }
  return ord;
}

IntVector AbelianGroup::invariant_generator(Index i) const {
  return smith_.u_inv.col(invariant_rows_.at(static_cast<std::size_t>(i)));
}

IntVector AbelianGroup::unit(Index i) const {
  IntVector e = zero();
  e(i) = 1;
  return e;
}

bool AbelianGroup::same_presentation(const AbelianGroup& other) const {
  return generators_ == other.generators_ && lattice_ == other.lattice_;
}

std::string AbelianGroup::describe() const {
  if (invariants_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < invariants_.size(); ++i) {
    if (i) os << " + ";
    if (invariants_[i] == 0)
      os << "Z";
    else
      os << "Z/" << invariants_[i].str();
  }
  return os.str();
}

AbelianGroup group_from_relations(Index generators, const IntMatrix& relations) {
  return AbelianGroup(generators, relations);
}

// --- homomorphisms -------------------------------------------------------

GroupHom::GroupHom(AbelianGroup source, AbelianGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count()) {
    if (matrix_.size() == 0)
      matrix_ = IntMatrix::Zero(target_.generator_count(), source_.generator_count());
    else
      throw std::invalid_argument("homomorphism matrix has wrong shape");
  }
  const IntMatrix& rel = source_.relation_lattice();
  for (Index j = 0; j < rel.cols(); ++j) {
    IntVector image = matrix_ * rel.col(j);
    if (!target_.is_zero(image))
      throw VerificationError("homomorphism not well defined on relator",
                              to_string(IntVector(rel.col(j))));
  }
}

GroupHom GroupHom::zero(const AbelianGroup& source, const AbelianGroup& target) {
  return GroupHom(source, target,
                  IntMatrix::Zero(target.generator_count(), source.generator_count()));
}

GroupHom GroupHom::identity(const AbelianGroup& g) {
  return GroupHom(g, g, identity_matrix(g.generator_count()));
}

std::optional<IntVector> GroupHom::lift(const IntVector& y) const {
  IntMatrix span = hstack({matrix_, target_.relation_lattice()});
  auto c = solve_in_lattice(span, y);
  if (!c) return std::nullopt;
  return IntVector(c->head(source_.generator_count()));
}

Subgroup GroupHom::kernel() const { return hom_kernel(*this); }

AbelianGroup GroupHom::cokernel() const { return quotient(target_, matrix_); }

bool GroupHom::is_injective() const { return hom_kernel(*this).group.is_trivial(); }

bool GroupHom::is_surjective() const { return cokernel().is_trivial(); }

bool GroupHom::is_zero() const {
  for (Index j = 0; j < matrix_.cols(); ++j)
    if (!target_.is_zero(matrix_.col(j))) return false;
  return true;
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (f.target().generator_count() != g.source().generator_count())
    throw std::invalid_argument("compose: maps are not composable");
  return GroupHom(f.source(), g.target(), g.matrix() * f.matrix());
}

GroupHom scalar_hom(const AbelianGroup& g, const Integer& n) {
  return GroupHom(g, g, IntMatrix(identity_matrix(g.generator_count()) * n));
}

IntMatrix hstack(const std::vector<IntMatrix>& blocks) {
  Index rows = -1, cols = 0;
  for (const auto& b : blocks) {
    if (rows < 0) rows = b.rows();
    if (b.rows() != rows) throw std::invalid_argument("hstack: row mismatch");
    cols += b.cols();
  }
  IntMatrix out(std::max<Index>(rows, 0), cols);
  Index c = 0;
  for (const auto& b : blocks) {
    out.middleCols(c, b.cols()) = b;
    c += b.cols();
  }
  return out;
}

IntMatrix vstack(const std::vector<IntMatrix>& blocks) {
  Index cols = -1, rows = 0;
  for (const auto& b : blocks) {
    if (cols < 0) cols = b.cols();
    if (b.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += b.rows();
  }
  IntMatrix out(rows, std::max<Index>(cols, 0));
  Index r = 0;
  for (const auto& b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

Subgroup smith_presentation(const AbelianGroup& g) {
  const Index k = static_cast<Index>(g.invariants().size());
  IntMatrix inc(g.generator_count(), k);
  for (Index i = 0; i < k; ++i) inc.col(i) = g.invariant_generator(i);
  return {AbelianGroup::from_orders(g.invariants()), inc};
}

std::vector<IntVector> enumerate_elements(const AbelianGroup& g, const Integer& limit) {
  if (!g.is_finite()) throw std::invalid_argument("enumerate_elements: infinite group " + g.describe());
  if (*g.order() > limit)
    throw BoundExceededError("group of order " + g.order()->str() + " too large to enumerate");
  const Subgroup s = smith_presentation(g);
  const auto& d = g.invariants();
  std::vector<IntVector> out;
  std::vector<Integer> digit(d.size(), Integer(0));
  for (;;) {
    IntVector x = g.zero();
    for (std::size_t i = 0; i < d.size(); ++i) x += digit[i] * s.inclusion.col(static_cast<Index>(i));
    out.push_back(std::move(x));
    std::size_t pos = 0;
    while (pos < d.size() && ++digit[pos] == d[pos]) digit[pos++] = 0;
    if (pos == d.size()) break;
  }
  return out;
}

Subgroup subgroup_generated(const AbelianGroup& g, const IntMatrix& generators) {
  // Relations among the generator columns: c with generators*c in the relation
  // lattice of g.
  IntMatrix gens = generators;
  if (gens.cols() == 0) return {AbelianGroup::trivial(), IntMatrix(g.generator_count(), 0)};
  IntMatrix rel = g.relation_lattice();
  IntMatrix ker = integer_kernel(hstack({gens, rel}));
  IntMatrix sub_rel = ker.topRows(gens.cols());
  AbelianGroup raw(gens.cols(), sub_rel);
  Subgroup s = smith_presentation(raw);
  return {s.group, IntMatrix(gens * s.inclusion)};
}

Subgroup hom_kernel(const GroupHom& h) {
  const AbelianGroup& src = h.source();
  const Index n = src.generator_count();
  if (n == 0) return {AbelianGroup::trivial(), IntMatrix(0, 0)};
  IntMatrix ker = integer_kernel(hstack({h.matrix(), h.target().relation_lattice()}));
  IntMatrix preimage = lattice_basis(IntMatrix(ker.topRows(n)));
  Subgroup s = subgroup_generated(src, preimage);
  for (Index j = 0; j < s.inclusion.cols(); ++j)
    if (!h.target().is_zero(h.matrix() * s.inclusion.col(j)))
      throw VerificationError("kernel generator does not map to zero",
                              to_string(IntVector(s.inclusion.col(j))));
  return s;
}

AbelianGroup quotient(const AbelianGroup& g, const IntMatrix& generators) {
  return AbelianGroup(g.generator_count(), hstack({g.relation_lattice(), generators}));
}

DirectSum direct_sum(const std::vector<AbelianGroup>& parts) {
  Index gens = 0, rels = 0;
  std::vector<Index> offsets;
  for (const auto& p : parts) {
    offsets.push_back(gens);
    gens += p.generator_count();
    rels += p.relation_lattice().cols();
  }
  IntMatrix rel = IntMatrix::Zero(gens, rels);
  Index c = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const IntMatrix& r = parts[i].relation_lattice();
    rel.block(offsets[i], c, r.rows(), r.cols()) = r;
    c += r.cols();
  }
  return {AbelianGroup(gens, rel), offsets};
}

ExactnessReport is_exact(const std::vector<GroupHom>& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!seq[i].target().same_presentation(seq[i + 1].source()))
      throw std::invalid_argument("is_exact: map " + std::to_string(i) +
                                  " is not composable with its successor");
  ExactnessReport report;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const GroupHom& f = seq[i];
    const GroupHom& g = seq[i + 1];
    for (Index j = 0; j < f.source().generator_count(); ++j) {
      IntVector e = f.source().unit(j);
      if (!g.target().is_zero(g.matrix() * (f.matrix() * e))) {
        report.exact = false;
        report.node = i;
        report.kind = "composite";
        report.witness = e;
        return report;
      }
    }
    Subgroup k = hom_kernel(g);
    for (Index j = 0; j < k.inclusion.cols(); ++j) {
      IntVector v = k.inclusion.col(j);
      if (!f.lift(v)) {
        report.exact = false;
        report.node = i;
        report.kind = "kernel";
        report.witness = v;
        return report;
      }
    }
  }
  return report;
}

std::vector<GroupHom> to_smith_coordinates(const std::vector<GroupHom>& seq) {
  if (seq.empty()) return {};
  // Smith presentation of every node together with the inverse coordinate
  // change (reduce() gives Smith coordinates).
  std::vector<AbelianGroup> nodes;
  nodes.push_back(seq.front().source());
  for (const auto& h : seq) nodes.push_back(h.target());
  std::vector<Subgroup> smith;
  for (const auto& g : nodes) smith.push_back(smith_presentation(g));
  std::vector<GroupHom> out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Subgroup& from = smith[i];
    const Subgroup& to = smith[i + 1];
    const AbelianGroup& tgt = nodes[i + 1];
    IntMatrix m(to.group.generator_count(), from.group.generator_count());
    for (Index j = 0; j < from.group.generator_count(); ++j) {
      IntVector image = seq[i].matrix() * from.inclusion.col(j);
      m.col(j) = tgt.reduce(image);
    }
    out.emplace_back(from.group, to.group, m);
  }
  return out;
}

}  // namespace ahom
