#pragma once

// Finite discrete groupoids backed by an explicit composition table.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "forge/report.hpp"

namespace forge {

using ElementId = std::size_t;

class FiniteGroupoid {
 public:
  // table[g * n + h] is gh, or -1 when undefined. Units are the elements
  // listed in `units`; labels are optional and only used for printing.
  FiniteGroupoid(std::vector<ElementId> range, std::vector<ElementId> source, std::vector<ElementId> inverse,
                 std::vector<std::int64_t> table, std::vector<ElementId> units, std::vector<std::string> labels = {});

  // Tabulates `compose` on all pairs with s(g) = r(h).
  static FiniteGroupoid tabulate(std::size_t n, const std::function<ElementId(ElementId)>& range,
                                 const std::function<ElementId(ElementId)>& source,
                                 const std::function<ElementId(ElementId)>& inverse,
                                 const std::function<ElementId(ElementId, ElementId)>& compose,
                                 std::vector<std::string> labels = {});

  std::size_t size() const { return range_.size(); }
  ElementId range(ElementId g) const { return range_.at(g); }
  ElementId source(ElementId g) const { return source_.at(g); }
  ElementId inverse(ElementId g) const { return inverse_.at(g); }
  const std::vector<ElementId>& units() const { return units_; }
  bool is_unit(ElementId g) const;
  bool composable(ElementId g, ElementId h) const { return table_.at(g * size() + h) >= 0; }
  // gh; throws PreconditionError when undefined.
  ElementId compose(ElementId g, ElementId h) const;
  std::optional<ElementId> try_compose(ElementId g, ElementId h) const;
  std::string label(ElementId g) const;
  const std::vector<std::int64_t>& table() const { return table_; }
  // Elements with the given range (resp. source), in id order.
  const std::vector<ElementId>& with_range(ElementId u) const { return by_range_.at(u); }
  const std::vector<ElementId>& with_source(ElementId u) const { return by_source_.at(u); }

  // Test hook: returns a copy whose table entry (g, h) is replaced.
  FiniteGroupoid with_corrupted_entry(ElementId g, ElementId h, std::int64_t value) const;

 private:
  std::vector<ElementId> range_, source_, inverse_;
  std::vector<std::int64_t> table_;
  std::vector<ElementId> units_;
  std::vector<std::string> labels_;
  std::vector<std::vector<ElementId>> by_range_, by_source_;
};

ValidationReport verify_groupoid_axioms(const FiniteGroupoid& g);

// All g with r(g) = s(g) = u. Throws PreconditionError for non-units.
std::vector<ElementId> isotropy_group(const FiniteGroupoid& g, ElementId u);
// r(G_u), sorted.
std::vector<ElementId> orbit(const FiniteGroupoid& g, ElementId u);
// Orbit partition of the unit space.
std::vector<std::vector<ElementId>> orbits(const FiniteGroupoid& g);
bool is_principal(const FiniteGroupoid& g);
// Single orbit.
bool is_minimal(const FiniteGroupoid& g);

// Values in Z, or in Z/modulus when modulus > 0 (stored reduced to
// [0, modulus)). A twisted product only needs alpha^c(h), so a Z/N-valued
// cocycle is enough whenever alpha^N = id.
struct Cocycle {
  std::vector<std::int64_t> values;
  std::int64_t modulus = 0;
  std::int64_t operator()(ElementId g) const { return values.at(g); }
};

ValidationReport verify_cocycle(const FiniteGroupoid& g, const Cocycle& c);

class GroupoidAutomorphism {
 public:
  explicit GroupoidAutomorphism(std::vector<ElementId> map);
  static GroupoidAutomorphism identity(std::size_t n);

  ElementId operator()(ElementId g) const { return map_.at(g); }
  // alpha^k for any integer k.
  ElementId apply(ElementId g, std::int64_t k) const;
  // Least k >= 1 with alpha^k = id.
  std::int64_t order() const { return order_; }
  const std::vector<ElementId>& map() const { return map_; }

 private:
  std::vector<ElementId> map_;
  std::vector<ElementId> inverse_;
  std::vector<std::vector<ElementId>> cycles_;
  std::vector<std::size_t> cycle_of_, position_;
  std::int64_t order_ = 1;
};

ValidationReport verify_automorphism(const FiniteGroupoid& g, const GroupoidAutomorphism& a);

// Cartesian product with the full equivalence relation on {-N, ..., N}.
// Element (g, i, j) has id (g * (2N+1) + (i+N)) * (2N+1) + (j+N).
FiniteGroupoid product_with_full_relation(const FiniteGroupoid& g, std::size_t N);

// ---------------------------------------------------------------- building blocks

// Finite group given by its multiplication table; element 0 is the identity.
struct FiniteGroup {
  std::vector<std::vector<std::size_t>> mul;
  std::string name;

  std::size_t order() const { return mul.size(); }
  std::size_t inverse(std::size_t a) const;
  bool is_abelian() const;
};

FiniteGroup cyclic_group(std::size_t m);
FiniteGroup symmetric_group_3();
// All automorphisms of the group, as permutations of its elements.
std::vector<std::vector<std::size_t>> group_automorphisms(const FiniteGroup& g);

// Transitive groupoid: full relation on k points times a group. The element
// (i, gamma, j) goes from j to i and has id (i * |group| + gamma) * k + j.
struct TransitiveBlock {
  std::size_t points;
  FiniteGroup group;
  std::size_t size() const { return points * points * group.order(); }
};

// Disjoint union of transitive blocks; the ids of block b follow those of
// blocks 0..b-1.
class BlockGroupoid {
 public:
  explicit BlockGroupoid(std::vector<TransitiveBlock> blocks);

  const FiniteGroupoid& groupoid() const { return groupoid_; }
  const std::vector<TransitiveBlock>& blocks() const { return blocks_; }
  std::size_t size() const { return groupoid_.size(); }
  ElementId element(std::size_t block, std::size_t i, std::size_t gamma, std::size_t j) const;
  struct Coordinates {
    std::size_t block, i, gamma, j;
  };
  Coordinates coordinates(ElementId g) const;

  // (b, i, gamma, j) -> (sigma(b), pi_b(i), psi_b(i) phi_b(gamma) psi_b(j)^-1, pi_b(j)).
  // sigma must map blocks to blocks of the same shape; phi_b an automorphism
  // of the group of block b; psi_b a gauge map points -> group.
  struct AutomorphismData {
    std::vector<std::size_t> block_perm;
    std::vector<std::vector<std::size_t>> point_perm;
    std::vector<std::vector<std::size_t>> group_aut;
    std::vector<std::vector<std::size_t>> gauge;
  };
  GroupoidAutomorphism automorphism(const AutomorphismData& data) const;

  // c(b, i, gamma, j) = phi_b(i) - phi_b(j). Every integer cocycle on a finite
  // groupoid is of this form, since finite groups admit no nonzero map to Z.
  Cocycle coboundary(const std::vector<std::vector<std::int64_t>>& potential) const;
  // Z/modulus-valued: phi_b(i) - phi_b(j) + step_b * gamma on blocks whose
  // group is cyclic (gamma read as an integer). Needs order * step_b = 0 mod
  // modulus; blocks with a noncyclic group must have step 0.
  Cocycle cyclic_cocycle(const std::vector<std::vector<std::int64_t>>& potential,
                         const std::vector<std::int64_t>& step, std::int64_t modulus) const;

 private:
  std::vector<TransitiveBlock> blocks_;
  std::vector<std::size_t> offset_;
  FiniteGroupoid groupoid_;
};

FiniteGroupoid full_relation(std::size_t n);
FiniteGroupoid group_as_groupoid(const FiniteGroup& g);

}  // namespace forge
