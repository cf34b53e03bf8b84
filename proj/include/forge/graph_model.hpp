#pragma once

// Directed graphs and Bratteli diagrams.
//
// Conventions: an edge e goes from its source s(e) to its range r(e); a path
// mu_1 ... mu_n satisfies s(mu_i) = r(mu_{i+1}) and r(mu) = r(mu_1). In a
// Bratteli diagram the range of an edge lies in V_n and its source in V_{n+1},
// so paths run from a vertex into deeper levels. The multiplicity matrix of
// level n is c_n x c_{n+1} with entry (v, w) = k_vw = |v E^1 w|.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "forge/linalg.hpp"
#include "forge/report.hpp"

namespace forge {

using VertexId = std::uint64_t;
using EdgeId = std::uint64_t;

// Read-only view of a directed graph without sources. Vertices and edges are
// opaque 64-bit ids; receivers(v) lists v E^1 = r^{-1}(v) in increasing id order.
class Graph {
 public:
  virtual ~Graph() = default;

  virtual VertexId range(EdgeId e) const = 0;
  virtual VertexId source(EdgeId e) const = 0;
  virtual bool has_vertex(VertexId v) const = 0;
  virtual bool has_edge(EdgeId e) const = 0;
  // Whether r^{-1}(v) is finite. Finite paths ending at v belong to the path
  // space exactly when this is false.
  virtual bool finite_receivers(VertexId v) const = 0;
  // v E^1 in increasing id order. For an infinite receiver set an index bound
  // is mandatory and only the first `index_bound` receivers are listed.
  virtual std::vector<EdgeId> receivers(VertexId v, std::optional<std::size_t> index_bound = {}) const = 0;

  virtual std::string vertex_name(VertexId v) const { return "v" + std::to_string(v); }
  virtual std::string edge_name(EdgeId e) const { return "e" + std::to_string(e); }
};

class DirectedGraph : public Graph {
 public:
  struct Edge {
    VertexId range;
    VertexId source;
  };

  DirectedGraph(std::size_t vertex_count, std::vector<Edge> edges);

  // One vertex v and infinitely many loops e_i, i in N. Its groupoid is H_inf.
  static DirectedGraph infinite_rose();

  bool is_infinite_rose() const { return rose_; }
  std::size_t vertex_count() const { return vertex_count_; }
  // Number of edges of a finite graph.
  std::size_t edge_count() const;

  VertexId range(EdgeId e) const override;
  VertexId source(EdgeId e) const override;
  bool has_vertex(VertexId v) const override { return v < vertex_count_; }
  bool has_edge(EdgeId e) const override { return rose_ || e < edges_.size(); }
  bool finite_receivers(VertexId v) const override;
  std::vector<EdgeId> receivers(VertexId v, std::optional<std::size_t> index_bound = {}) const override;
  std::string vertex_name(VertexId v) const override;

  // Every vertex receives at least one edge.
  ValidationReport validate() const;

 private:
  DirectedGraph() = default;

  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> receivers_;
  bool rose_ = false;
};

struct BratteliEdge {
  std::size_t level;      // level of the range vertex
  std::size_t range;      // index in V_level
  std::size_t source;     // index in V_{level+1}
  std::int64_t label;     // 0-based position within v E^1 w
};

// Edge label overrides: for a vertex pair (level, range, source) the vector
// lists the underlying 0-based labels in cyclic order (vw)_1, ..., (vw)_k.
using EdgeLabelling = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<std::int64_t>>;

class BratteliDiagram : public Graph {
 public:
  struct EdgeDeclaration {
    std::size_t level;
    std::size_t range;
    std::size_t source;
    std::int64_t mult;
    std::optional<std::size_t> source_level;
  };

  // multiplicities[n] has shape sizes[n] x sizes[n+1]. With repeat_from = r the
  // matrix sequence from level r to the horizon N repeats forever.
  BratteliDiagram(std::vector<std::size_t> sizes, std::vector<IntMatrix> multiplicities,
                  std::optional<std::size_t> repeat_from = {});

  // Builds a diagram from an edge list. Throws StructuralError for indices
  // out of range, skipped levels and negative multiplicities. Repeated
  // declarations of one vertex pair are kept and reported by validation.
  static BratteliDiagram from_declarations(std::vector<std::size_t> sizes, const std::vector<EdgeDeclaration>& edges,
                                           std::optional<std::size_t> repeat_from = {});

  // Constant diagram: every level has the given multiplicity matrix (square).
  static BratteliDiagram constant(const IntMatrix& k);

  std::size_t horizon() const { return sizes_.size() - 1; }
  std::optional<std::size_t> repeat_from() const { return repeat_from_; }
  bool is_infinite() const { return repeat_from_.has_value(); }
  // Whether level n is defined (explicitly or through the repetition rule).
  bool has_level(std::size_t n) const { return is_infinite() || n <= horizon(); }

  std::size_t size(std::size_t level) const;
  const IntMatrix& multiplicity(std::size_t level) const;
  // Dimension-group connecting matrix Z^{V_n} -> Z^{V_{n+1}}: transpose of multiplicity.
  IntMatrix connecting_matrix(std::size_t level) const { return multiplicity(level).transpose(); }
  // Path counts from level `from` to level `to` (product of multiplicities).
  IntMatrix path_counts(std::size_t from, std::size_t to) const;

  VertexId vertex(std::size_t level, std::size_t index) const;
  VertexId first_vertex(std::size_t level) const { return vertex_offset(level); }
  EdgeId first_edge(std::size_t level) const { return edge_offset(level); }
  std::pair<std::size_t, std::size_t> locate_vertex(VertexId v) const;

  std::int64_t edge_count(std::size_t level) const;
  EdgeId edge(std::size_t level, std::size_t range, std::size_t source, std::int64_t label) const;
  BratteliEdge edge_info(EdgeId e) const;

  VertexId range(EdgeId e) const override;
  VertexId source(EdgeId e) const override;
  bool has_vertex(VertexId v) const override;
  bool has_edge(EdgeId e) const override;
  bool finite_receivers(VertexId) const override { return true; }
  std::vector<EdgeId> receivers(VertexId v, std::optional<std::size_t> index_bound = {}) const override;
  std::string vertex_name(VertexId v) const override;
  std::string edge_name(EdgeId e) const override;

  const std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>& duplicate_declarations() const {
    return duplicates_;
  }

 private:
  std::size_t canonical_level(std::size_t level) const;
  std::size_t canonical_matrix(std::size_t level) const;
  std::uint64_t vertex_offset(std::size_t level) const;
  std::uint64_t edge_offset(std::size_t level) const;

  std::vector<std::size_t> sizes_;
  std::vector<IntMatrix> mult_;
  std::optional<std::size_t> repeat_from_;
  std::vector<std::uint64_t> vertex_prefix_;  // over levels 0..N-1 (or 0..N without repetition)
  std::vector<std::uint64_t> edge_prefix_;    // over matrices 0..N-1
  std::vector<std::vector<std::int64_t>> pair_prefix_;  // per matrix, cumulative over (v, w) row-major
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> duplicates_;
};

// A finite path. Vertex paths have no edges and range = source.
struct PathWord {
  VertexId range_vertex = 0;
  VertexId source_vertex = 0;
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
  bool is_vertex() const { return edges.empty(); }

  static PathWord vertex(VertexId v) { return {v, v, {}}; }
  // Validates s(mu_i) = r(mu_{i+1}).
  static PathWord from_edges(const Graph& g, std::vector<EdgeId> edges);

  friend bool operator==(const PathWord&, const PathWord&) = default;
  friend auto operator<=>(const PathWord& a, const PathWord& b) {
    if (auto c = a.edges <=> b.edges; c != 0) return c;
    return a.range_vertex <=> b.range_vertex;
  }
};

// mu nu; requires s(mu) = r(nu).
PathWord concat(const PathWord& mu, const PathWord& nu);
// mu(0, n).
PathWord prefix(const Graph& g, const PathWord& mu, std::size_t n);
// Whether p is a prefix of w.
bool is_prefix(const PathWord& p, const PathWord& w);
// w = p q; returns q. Requires is_prefix(p, w).
PathWord strip_prefix(const Graph& g, const PathWord& p, const PathWord& w);
std::string to_string(const Graph& g, const PathWord& mu);

ValidationReport validate_bratteli(const BratteliDiagram& d);

// Multiplicities of the telescoped diagram are path counts between the
// chosen levels. The subsequence must start at 0 and increase strictly.
BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<std::size_t>& subsequence);

struct GrowthTelescope {
  std::vector<std::size_t> subsequence;
  BratteliDiagram diagram;
  std::vector<std::int64_t> min_multiplicity;  // per telescoped level n: min_{v,w} k_vw (> n)
};

// Chooses the greedy subsequence 0 = s_0 < s_1 < ... such that every
// telescoped multiplicity k_vw at level n exceeds n, for n < levels.
// Throws HorizonError when the diagram runs out before `search_limit`.
GrowthTelescope telescope_for_growth(const BratteliDiagram& d, std::size_t levels, std::size_t search_limit = 4096);

// True when every k_vw at telescoped level n exceeds n, for all explicit levels.
bool satisfies_growth_condition(const BratteliDiagram& d);

// Paths of exactly `depth` edges with range `anchor`, ordered
// lexicographically by edge id. Infinite receiver sets need an index bound.
std::vector<PathWord> enumerate_paths(const Graph& g, VertexId anchor, std::size_t depth,
                                      std::optional<std::size_t> index_bound = {});

// An automorphism of a graph, given by its action on vertices and edges for
// any integer power (negative powers are inverses).
class GraphAutomorphism {
 public:
  using VertexMap = std::function<VertexId(VertexId, std::int64_t)>;
  using EdgeMap = std::function<EdgeId(EdgeId, std::int64_t)>;

  GraphAutomorphism(VertexMap vertices, EdgeMap edges, std::string description);

  static GraphAutomorphism identity();
  // Finite graph automorphism from explicit permutations; validated.
  static GraphAutomorphism from_permutations(const DirectedGraph& g, std::vector<VertexId> vertex_perm,
                                             std::vector<EdgeId> edge_perm);

  VertexId vertex(VertexId v, std::int64_t power = 1) const { return vertices_(v, power); }
  EdgeId edge(EdgeId e, std::int64_t power = 1) const { return edges_(e, power); }
  PathWord path(const PathWord& mu, std::int64_t power = 1) const;
  const std::string& description() const { return description_; }

 private:
  VertexMap vertices_;
  EdgeMap edges_;
  std::string description_;
};

// alpha((vw)_i) = (vw)_{(i+1) mod k_vw}; fixes every vertex. Throws
// ValidationError when a labelling entry is not a bijection onto v E^1 w.
GraphAutomorphism edge_cycle_automorphism(const BratteliDiagram& d, const EdgeLabelling& labelling = {});

// Checks that alpha preserves r and s on every edge in `edges`.
ValidationReport verify_graph_automorphism(const Graph& g, const GraphAutomorphism& alpha,
                                           const std::vector<EdgeId>& edges);

// All edges of levels [0, levels).
std::vector<EdgeId> edges_up_to(const BratteliDiagram& d, std::size_t levels);

// Size of the orbit of e under alpha (brute force, capped).
std::int64_t orbit_size(const GraphAutomorphism& alpha, EdgeId e, std::int64_t cap = 1'000'000);

}  // namespace forge
