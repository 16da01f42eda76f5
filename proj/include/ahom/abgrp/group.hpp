#pragma once

// Finitely generated abelian groups given by generators and relations, and
// homomorphisms between them.

#include "ahom/abgrp/normal_form.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ahom {

/// Z^n modulo the column lattice of a relation matrix.
///
/// Elements are coordinate vectors on the presentation generators. The Smith
/// form U * R * V = D is computed once at construction; y = U x are the Smith
/// coordinates of x, where coordinate i lives in Z/d_i.
class AbelianGroup {
 public:
  AbelianGroup() : AbelianGroup(0, IntMatrix(0, 0)) {}
  AbelianGroup(Index generators, IntMatrix relations);

  static AbelianGroup free(Index rank);
  static AbelianGroup cyclic(const Integer& order);
  static AbelianGroup trivial() { return AbelianGroup(); }
  /// Z/d_1 + ... + Z/d_k, with d = 0 meaning Z.
  static AbelianGroup from_orders(const std::vector<Integer>& orders);

  Index generator_count() const { return generators_; }
  const IntMatrix& relations() const { return relations_; }
  /// d_1 | d_2 | ... with unit entries dropped and zeros (free part) last.
  const std::vector<Integer>& invariants() const { return invariants_; }
  std::vector<Integer> torsion_invariants() const;
  Index free_rank() const;
  bool is_trivial() const { return invariants_.empty(); }
  bool is_finite() const { return free_rank() == 0; }
  /// Group order, std::nullopt when infinite.
  std::optional<Integer> order() const;

  /// Unimodular change of basis from generator coordinates to Smith coordinates.
  const IntMatrix& transform() const { return smith_.u; }

  /// Canonical coordinates: one entry per invariant, torsion entries reduced
  /// into [0, d_i). Two elements are equal iff their reductions agree.
  IntVector reduce(const IntVector& x) const;
  bool is_zero(const IntVector& x) const;
  bool equal(const IntVector& x, const IntVector& y) const { return is_zero(x - y); }
  /// Order of an element; 0 for infinite order.
  Integer element_order(const IntVector& x) const;
  /// Generator-coordinate vector of the i-th invariant factor generator.
  IntVector invariant_generator(Index i) const;
  IntVector zero() const { return IntVector::Zero(generators_); }
  IntVector unit(Index i) const;

  /// Basis of the relation lattice (Hermite form columns).
  const IntMatrix& relation_lattice() const { return lattice_; }
  bool same_presentation(const AbelianGroup& other) const;
  bool isomorphic(const AbelianGroup& other) const { return invariants_ == other.invariants_; }

  std::string describe() const;

 private:
  Index generators_;
  IntMatrix relations_;
  IntMatrix lattice_;
  SmithDecomposition<Integer> smith_;
  std::vector<Integer> full_diagonal_;     // one per generator row
  std::vector<Index> invariant_rows_;      // rows of U carrying non-unit factors
  std::vector<Integer> invariants_;
};

AbelianGroup group_from_relations(Index generators, const IntMatrix& relations);

class GroupHom;

/// A subgroup realized as its own presented group together with the inclusion.
struct Subgroup {
  AbelianGroup group;
  IntMatrix inclusion;  // target generators x subgroup generators
};

/// Homomorphism given by a matrix on generator coordinates. Construction fails
/// with VerificationError when some source relator is not mapped to zero.
class GroupHom {
 public:
  GroupHom(AbelianGroup source, AbelianGroup target, IntMatrix matrix);

  static GroupHom zero(const AbelianGroup& source, const AbelianGroup& target);
  static GroupHom identity(const AbelianGroup& g);

  const AbelianGroup& source() const { return source_; }
  const AbelianGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(const IntVector& x) const { return matrix_ * x; }
  /// Some preimage of y, or std::nullopt if y is not in the image.
  std::optional<IntVector> lift(const IntVector& y) const;

  Subgroup kernel() const;
  /// The cokernel as a quotient of the target (same generators).
  AbelianGroup cokernel() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }
  bool is_zero() const;

 private:
  AbelianGroup source_;
  AbelianGroup target_;
  IntMatrix matrix_;
};

/// g o f.
GroupHom compose(const GroupHom& g, const GroupHom& f);
/// Multiplication by n on g.
GroupHom scalar_hom(const AbelianGroup& g, const Integer& n);

/// The kernel as a subgroup of h.source(); generators are the Smith
/// generators of the kernel, relations diagonal.
Subgroup hom_kernel(const GroupHom& h);

/// Presentation Z/d_1 + ... on the invariant-factor generators together with
/// the isomorphism into g (columns = generator coordinates in g).
Subgroup smith_presentation(const AbelianGroup& g);

/// Subgroup of g generated by the given columns (generator coordinates).
Subgroup subgroup_generated(const AbelianGroup& g, const IntMatrix& generators);

/// Every element of a finite group once, as generator-coordinate vectors
/// (zero first). Throws BoundExceededError beyond `limit` elements and
/// std::invalid_argument for infinite groups.
std::vector<IntVector> enumerate_elements(const AbelianGroup& g, const Integer& limit = 1'000'000);

/// g modulo the subgroup generated by the columns; same generators as g.
AbelianGroup quotient(const AbelianGroup& g, const IntMatrix& generators);

struct DirectSum {
  AbelianGroup group;
  std::vector<Index> offsets;  // first generator of each summand
};
DirectSum direct_sum(const std::vector<AbelianGroup>& parts);

/// Block matrix helpers for maps into and out of direct sums.
IntMatrix hstack(const std::vector<IntMatrix>& blocks);
IntMatrix vstack(const std::vector<IntMatrix>& blocks);

struct ExactnessReport {
  bool exact = true;
  /// Index of the failing interior node (target of seq[node]).
  std::optional<std::size_t> node;
  /// "composite" (g o f != 0 on a source generator) or "kernel" (kernel
  /// element outside the image).
  std::string kind;
  std::optional<IntVector> witness;
};

/// Checks image(seq[i]) == kernel(seq[i+1]) at every interior node. Throws
/// std::invalid_argument when consecutive maps are not composable.
ExactnessReport is_exact(const std::vector<GroupHom>& seq);

/// The same sequence with every group replaced by its Smith presentation.
std::vector<GroupHom> to_smith_coordinates(const std::vector<GroupHom>& seq);

std::string to_string(const IntVector& v);

}  // namespace ahom
