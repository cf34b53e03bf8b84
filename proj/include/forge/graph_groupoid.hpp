#pragma once

// Symbolic graph groupoids G_E = {(x, m - n, y) : sigma^m x = sigma^n y}.
//
// Infinite paths are never materialized. A point of the path space is a
// finite word followed by a tail that is either nothing (the point is a
// finite path; only valid where receivers are infinite), an opaque variable,
// or a periodic word.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "forge/graph_model.hpp"

namespace forge {

struct EndTail {
  friend bool operator==(const EndTail&, const EndTail&) = default;
};

// An unspecified infinite path z with r(z) = `anchor`, transported by
// alpha^power when an automorphism is applied.
struct VariableTail {
  std::int64_t id = 0;
  std::int64_t power = 0;
  VertexId anchor = 0;
  friend bool operator==(const VariableTail&, const VariableTail&) = default;
};

// word^infinity; the word is a cycle and is kept primitive.
struct PeriodicTail {
  std::vector<EdgeId> word;
  friend bool operator==(const PeriodicTail&, const PeriodicTail&) = default;
};

using Tail = std::variant<EndTail, VariableTail, PeriodicTail>;

// mu . tail
struct PathValue {
  PathWord word;
  Tail tail;

  static PathValue finite(const Graph& g, PathWord mu);
  static PathValue variable(PathWord mu, std::int64_t id);
  static PathValue periodic(const Graph& g, PathWord mu, std::vector<EdgeId> cycle);

  bool is_finite() const { return std::holds_alternative<EndTail>(tail); }
  VertexId range_vertex() const { return word.range_vertex; }
  friend bool operator==(const PathValue&, const PathValue&) = default;
};

// Brings periodic tails to canonical form (primitive word, shortest prefix).
PathValue canonical(const Graph& g, PathValue x);
// First n edges; periodic tails are unrolled as needed.
PathWord path_prefix(const Graph& g, const PathValue& x, std::size_t n);

// sigma^n. Throws PreconditionError for n > |p|, and for shifts into a
// variable tail.
PathWord shift(const Graph& g, const PathWord& p, std::size_t n);
PathValue shift(const Graph& g, const PathValue& x, std::size_t n);

std::string to_string(const Graph& g, const PathValue& x);

// (mu z, |mu| - |nu|, nu z).
struct GermElement {
  PathWord mu;
  PathWord nu;
  Tail tail;

  std::int64_t degree() const {
    return static_cast<std::int64_t>(mu.length()) - static_cast<std::int64_t>(nu.length());
  }
  PathValue range() const { return {mu, tail}; }
  PathValue source() const { return {nu, tail}; }
  friend bool operator==(const GermElement&, const GermElement&) = default;
};

// Validates s(mu) = s(nu) and the tail.
GermElement make_germ(const Graph& g, PathWord mu, PathWord nu, Tail tail);
GermElement germ_inverse(const GermElement& x);
// gh, or nullopt when s(g) != r(h).
std::optional<GermElement> germ_product(const Graph& g, const GermElement& a, const GermElement& b);
GermElement canonical(const Graph& g, const GermElement& x);
std::string to_string(const Graph& g, const GermElement& x);

// Z(mu \ F) = Z(mu) minus the cylinders Z(mu e), e in F.
struct Cylinder {
  PathWord mu;
  std::vector<EdgeId> excluded;

  friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

// Z((alpha, beta) \ F).
struct BasicBisection {
  PathWord alpha;
  PathWord beta;
  std::vector<EdgeId> excluded;

  std::int64_t degree() const {
    return static_cast<std::int64_t>(alpha.length()) - static_cast<std::int64_t>(beta.length());
  }
  friend bool operator==(const BasicBisection&, const BasicBisection&) = default;
  friend auto operator<=>(const BasicBisection&, const BasicBisection&) = default;
};

// Pairwise disjoint basic bisections. Empty means the empty set.
struct BisectionSum {
  std::vector<BasicBisection> terms;
  bool empty() const { return terms.empty(); }
};

Cylinder make_cylinder(const Graph& g, PathWord mu, std::vector<EdgeId> excluded = {});
// Validates s(alpha) = s(beta) and r(F) = s(alpha); sorts F.
BasicBisection make_bisection(const Graph& g, PathWord alpha, PathWord beta, std::vector<EdgeId> excluded = {});
BasicBisection unit_bisection(const Cylinder& c);
BasicBisection bisection_inverse(const BasicBisection& b);
Cylinder range_set(const BasicBisection& b);
Cylinder source_set(const BasicBisection& b);

bool is_empty(const Graph& g, const Cylinder& c);
bool is_empty(const Graph& g, const BasicBisection& b);

BisectionSum bisection_product(const Graph& g, const BasicBisection& a, const BasicBisection& b);
// The intersection of two basic bisections is again basic or empty.
std::optional<BasicBisection> bisection_intersection(const Graph& g, const BasicBisection& a, const BasicBisection& b);
bool disjoint(const Graph& g, const BasicBisection& a, const BasicBisection& b);

bool contains(const Graph& g, const Cylinder& outer, const Cylinder& inner);
bool contains(const Graph& g, const BasicBisection& outer, const BasicBisection& inner);
bool same_set(const Graph& g, const Cylinder& a, const Cylinder& b);
bool same_set(const Graph& g, const BasicBisection& a, const BasicBisection& b);
bool strictly_contains(const Graph& g, const Cylinder& outer, const Cylinder& inner);

// Whether the germ lies in the bisection.
bool contains(const Graph& g, const BasicBisection& b, const GermElement& x);

// Set algebra on finite unions. Results have pairwise disjoint, nonempty terms.
BisectionSum difference(const Graph& g, const BasicBisection& a, const BasicBisection& b);
BisectionSum difference(const Graph& g, const BisectionSum& a, const BisectionSum& b);
BisectionSum disjoint_union(const Graph& g, const BisectionSum& a, const BisectionSum& b);
BisectionSum bisection_product(const Graph& g, const BisectionSum& a, const BisectionSum& b);
BisectionSum bisection_inverse(const BisectionSum& a);
bool subset(const Graph& g, const BisectionSum& a, const BisectionSum& b);
bool same_set(const Graph& g, const BisectionSum& a, const BisectionSum& b);

std::string to_string(const Graph& g, const Cylinder& c);
std::string to_string(const Graph& g, const BasicBisection& b);
std::string to_string(const Graph& g, const BisectionSum& s);

// Returns lambda with Z(lambda) inside Z(u \ F). On a graph whose receiver
// set at s(u) is infinite the choice is u e_{max F + 1} (u itself when F is
// empty); otherwise the first edge of s(u)E^1 outside F is appended.
PathWord find_cylinder_inside(const Graph& g, const Cylinder& w);
// Z(x(0, n)) for a point x: returns x(0, n).
PathWord find_cylinder_inside(const Graph& g, const PathValue& x, std::size_t n);

// A graph automorphism acting on paths, germs and bisections.
class SymbolicAutomorphism {
 public:
  explicit SymbolicAutomorphism(GraphAutomorphism a) : a_(std::move(a)) {}

  const GraphAutomorphism& graph_map() const { return a_; }
  PathWord apply(const PathWord& mu, std::int64_t k = 1) const { return a_.path(mu, k); }
  PathValue apply(const PathValue& x, std::int64_t k = 1) const;
  GermElement apply(const GermElement& x, std::int64_t k = 1) const;
  Cylinder apply(const Cylinder& c, std::int64_t k = 1) const;
  BasicBisection apply(const BasicBisection& b, std::int64_t k = 1) const;
  BisectionSum apply(const BisectionSum& s, std::int64_t k = 1) const;

 private:
  GraphAutomorphism a_;
};

SymbolicAutomorphism lift_graph_automorphism(GraphAutomorphism a);

// The canonical cocycle c(x, m, y) = m.
inline std::int64_t canonical_cocycle(const GermElement& x) { return x.degree(); }
inline std::int64_t canonical_cocycle(const BasicBisection& b) { return b.degree(); }

// Helpers for the one-vertex graph with edges e_0, e_1, ...
PathWord hinf_path(const std::vector<EdgeId>& edges);
inline PathWord hinf_vertex() { return PathWord::vertex(0); }
const DirectedGraph& hinf_graph();

}  // namespace forge
