#include "forge/graph_model.hpp"

#include <algorithm>
#include <numeric>

namespace forge {

namespace {

std::uint64_t add_u(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("id overflow");
  return r;
}

std::uint64_t mul_u(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("id overflow");
  return r;
}

// Prefix sums of an eventually periodic sequence of counts. `prefix` covers
// the explicit terms; from `start` on the block [start, prefix.size()-1) repeats.
struct PeriodicPrefix {
  const std::vector<std::uint64_t>& prefix;
  std::optional<std::size_t> start;

  std::size_t period() const { return prefix.size() - 1 - *start; }

  std::uint64_t at(std::size_t n) const {
    if (!start || n < *start) {
      if (n >= prefix.size()) throw HorizonError("level beyond horizon");
      return prefix[n];
    }
    const std::size_t r = *start;
    const std::size_t q = (n - r) / period();
    const std::size_t rem = (n - r) % period();
    const std::uint64_t block = prefix[r + period()] - prefix[r];
    return add_u(add_u(prefix[r], mul_u(q, block)), prefix[r + rem] - prefix[r]);
  }

  // Returns (n, offset within term n) with at(n) <= id < at(n + 1).
  std::pair<std::size_t, std::uint64_t> locate(std::uint64_t id) const {
    auto search = [&](std::size_t lo, std::size_t hi, std::uint64_t x) {
      // largest n in [lo, hi) with prefix[n] <= x and a nonempty term
      auto it = std::upper_bound(prefix.begin() + static_cast<long>(lo), prefix.begin() + static_cast<long>(hi) + 1, x);
      return static_cast<std::size_t>(it - prefix.begin()) - 1;
    };
    if (!start || id < prefix[*start]) {
      if (id >= prefix.back()) throw PreconditionError("id " + std::to_string(id) + " out of range");
      const std::size_t n = search(0, prefix.size() - 1, id);
      return {n, id - prefix[n]};
    }
    const std::size_t r = *start;
    const std::uint64_t block = prefix[r + period()] - prefix[r];
    if (block == 0) throw PreconditionError("id " + std::to_string(id) + " out of range");
    const std::uint64_t q = (id - prefix[r]) / block;
    const std::uint64_t rest = (id - prefix[r]) % block + prefix[r];
    const std::size_t n = search(r, r + period(), rest);
    return {static_cast<std::size_t>(r + q * period() + (n - r)), rest - prefix[n]};
  }
};

// Powers of a finite permutation through its cycle decomposition.
struct PermutationPowers {
  std::vector<std::size_t> cycle_of;
  std::vector<std::size_t> position;
  std::vector<std::vector<std::uint64_t>> cycles;

  explicit PermutationPowers(const std::vector<std::uint64_t>& perm)
      : cycle_of(perm.size()), position(perm.size()) {
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (seen[i]) continue;
      std::vector<std::uint64_t> cyc;
      for (std::size_t j = i; !seen[j]; j = perm[j]) {
        seen[j] = true;
        cycle_of[j] = cycles.size();
        position[j] = cyc.size();
        cyc.push_back(j);
      }
      cycles.push_back(std::move(cyc));
    }
  }

  std::uint64_t apply(std::uint64_t x, std::int64_t power) const {
    if (x >= cycle_of.size()) throw PreconditionError("permutation argument out of range");
    const auto& cyc = cycles[cycle_of[x]];
    const auto len = static_cast<std::int64_t>(cyc.size());
    return cyc[static_cast<std::size_t>(checked::mod(static_cast<std::int64_t>(position[x]) + power % len, len))];
  }
};

void check_bijection(const std::vector<std::uint64_t>& perm, std::size_t n, const char* what) {
  if (perm.size() != n) throw ValidationError(std::string(what) + " permutation has wrong length");
  std::vector<bool> hit(n, false);
  for (auto x : perm) {
    if (x >= n || hit[x]) throw ValidationError(std::string(what) + " map is not a bijection");
    hit[x] = true;
  }
}

}  // namespace

// ---------------------------------------------------------------- DirectedGraph

DirectedGraph::DirectedGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)), receivers_(vertex_count) {
  if (vertex_count == 0) throw StructuralError("graph without vertices");
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].range >= vertex_count || edges_[e].source >= vertex_count)
      throw StructuralError("edge " + std::to_string(e) + " references an undeclared vertex");
    receivers_[edges_[e].range].push_back(e);
  }
}

DirectedGraph DirectedGraph::infinite_rose() {
  DirectedGraph g;
  g.vertex_count_ = 1;
  g.rose_ = true;
  return g;
}

std::size_t DirectedGraph::edge_count() const {
  if (rose_) throw PreconditionError("the infinite rose has infinitely many edges");
  return edges_.size();
}

VertexId DirectedGraph::range(EdgeId e) const {
  if (rose_) return 0;
  if (e >= edges_.size()) throw PreconditionError("unknown edge " + std::to_string(e));
  return edges_[e].range;
}

VertexId DirectedGraph::source(EdgeId e) const {
  if (rose_) return 0;
  if (e >= edges_.size()) throw PreconditionError("unknown edge " + std::to_string(e));
  return edges_[e].source;
}

bool DirectedGraph::finite_receivers(VertexId v) const {
  if (!has_vertex(v)) throw PreconditionError("unknown vertex " + std::to_string(v));
  return !rose_;
}

std::vector<EdgeId> DirectedGraph::receivers(VertexId v, std::optional<std::size_t> index_bound) const {
  if (!has_vertex(v)) throw PreconditionError("unknown vertex " + std::to_string(v));
  if (rose_) {
    if (!index_bound) throw PreconditionError("enumerating an infinite edge family needs an index bound");
    std::vector<EdgeId> out(*index_bound);
    std::iota(out.begin(), out.end(), EdgeId{0});
    return out;
  }
  auto out = receivers_[v];
  if (index_bound && out.size() > *index_bound) out.resize(*index_bound);
  return out;
}

std::string DirectedGraph::vertex_name(VertexId v) const { return rose_ ? "v" : Graph::vertex_name(v); }

ValidationReport DirectedGraph::validate() const {
  ValidationReport report;
  if (rose_) return report;
  for (std::size_t v = 0; v < vertex_count_; ++v)
    if (receivers_[v].empty()) report.add("r^-1(v) nonempty", vertex_name(v));
  return report;
}

// ---------------------------------------------------------------- BratteliDiagram

BratteliDiagram::BratteliDiagram(std::vector<std::size_t> sizes, std::vector<IntMatrix> multiplicities,
                                 std::optional<std::size_t> repeat_from)
    : sizes_(std::move(sizes)), mult_(std::move(multiplicities)), repeat_from_(repeat_from) {
  if (sizes_.empty()) throw StructuralError("diagram without levels");
  if (mult_.size() + 1 != sizes_.size())
    throw StructuralError("need one multiplicity matrix per pair of consecutive levels");
  for (std::size_t n = 0; n < sizes_.size(); ++n)
    if (sizes_[n] == 0) throw StructuralError("level " + std::to_string(n) + " is empty");
  for (std::size_t n = 0; n < mult_.size(); ++n) {
    const auto& m = mult_[n];
    if (static_cast<std::size_t>(m.rows()) != sizes_[n] || static_cast<std::size_t>(m.cols()) != sizes_[n + 1])
      throw StructuralError("multiplicity matrix " + std::to_string(n) + " has the wrong shape");
    if (!is_nonnegative(m)) throw StructuralError("negative multiplicity at level " + std::to_string(n));
  }
  const std::size_t N = horizon();
  if (repeat_from_) {
    if (*repeat_from_ >= N) throw StructuralError("repeat_from must be below the horizon");
    if (sizes_[N] != sizes_[*repeat_from_])
      throw StructuralError("repetition rule: level sizes at repeat_from and horizon differ");
  }
  // Vertex terms: levels 0..N without repetition, 0..N-1 with it (level N
  // coincides with repeat_from).
  const std::size_t vterms = repeat_from_ ? N : N + 1;
  vertex_prefix_.assign(vterms + 1, 0);
  for (std::size_t n = 0; n < vterms; ++n) vertex_prefix_[n + 1] = add_u(vertex_prefix_[n], sizes_[n]);
  edge_prefix_.assign(N + 1, 0);
  pair_prefix_.resize(N);
  for (std::size_t n = 0; n < N; ++n) {
    const auto& m = mult_[n];
    auto& pp = pair_prefix_[n];
    pp.assign(static_cast<std::size_t>(m.size()) + 1, 0);
    std::size_t k = 0;
    for (Eigen::Index v = 0; v < m.rows(); ++v)
      for (Eigen::Index w = 0; w < m.cols(); ++w, ++k) pp[k + 1] = checked::add(pp[k], m(v, w));
    edge_prefix_[n + 1] = add_u(edge_prefix_[n], static_cast<std::uint64_t>(pp.back()));
  }
}

BratteliDiagram BratteliDiagram::from_declarations(std::vector<std::size_t> sizes,
                                                   const std::vector<EdgeDeclaration>& edges,
                                                   std::optional<std::size_t> repeat_from) {
  if (sizes.empty()) throw StructuralError("diagram without levels");
  std::vector<IntMatrix> mult;
  for (std::size_t n = 0; n + 1 < sizes.size(); ++n)
    mult.push_back(IntMatrix::Zero(static_cast<Eigen::Index>(sizes[n]), static_cast<Eigen::Index>(sizes[n + 1])));
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> duplicates;
  std::vector<std::vector<bool>> declared(mult.size());
  for (std::size_t n = 0; n < mult.size(); ++n) declared[n].assign(sizes[n] * sizes[n + 1], false);
  for (const auto& e : edges) {
    const std::string where = "edge at level " + std::to_string(e.level);
    if (e.source_level && *e.source_level != e.level + 1)
      throw StructuralError(where + " connects level " + std::to_string(e.level) + " to level " +
                            std::to_string(*e.source_level) + "; edges must join consecutive levels");
    if (e.level + 1 >= sizes.size()) throw StructuralError(where + ": level index out of range");
    if (e.range >= sizes[e.level]) throw StructuralError(where + ": range index out of range");
    if (e.source >= sizes[e.level + 1]) throw StructuralError(where + ": source index out of range");
    if (e.mult < 0) throw StructuralError(where + ": negative multiplicity");
    const std::size_t cell = e.range * sizes[e.level + 1] + e.source;
    if (declared[e.level][cell]) duplicates.emplace_back(e.level, e.range, e.source);
    declared[e.level][cell] = true;
    auto& slot = mult[e.level](static_cast<Eigen::Index>(e.range), static_cast<Eigen::Index>(e.source));
    slot = checked::add(slot, e.mult);
  }
  BratteliDiagram d(std::move(sizes), std::move(mult), repeat_from);
  d.duplicates_ = std::move(duplicates);
  return d;
}

BratteliDiagram BratteliDiagram::constant(const IntMatrix& k) {
  if (k.rows() != k.cols()) throw StructuralError("constant diagram needs a square matrix");
  const auto c = static_cast<std::size_t>(k.rows());
  return BratteliDiagram({c, c}, {k}, 0);
}

std::size_t BratteliDiagram::canonical_level(std::size_t level) const {
  if (level <= horizon() && (!repeat_from_ || level < horizon())) return level;
  if (!repeat_from_) throw HorizonError("level " + std::to_string(level) + " beyond horizon without repetition rule");
  const std::size_t r = *repeat_from_;
  return r + (level - r) % (horizon() - r);
}

std::size_t BratteliDiagram::canonical_matrix(std::size_t level) const {
  if (level < horizon()) return level;
  if (!repeat_from_) throw HorizonError("level " + std::to_string(level) + " beyond horizon without repetition rule");
  const std::size_t r = *repeat_from_;
  return r + (level - r) % (horizon() - r);
}

std::size_t BratteliDiagram::size(std::size_t level) const { return sizes_[canonical_level(level)]; }

const IntMatrix& BratteliDiagram::multiplicity(std::size_t level) const { return mult_[canonical_matrix(level)]; }

IntMatrix BratteliDiagram::path_counts(std::size_t from, std::size_t to) const {
  if (to < from) throw PreconditionError("path_counts needs from <= to");
  IntMatrix out = IntMatrix::Identity(static_cast<Eigen::Index>(size(from)), static_cast<Eigen::Index>(size(from)));
  for (std::size_t n = from; n < to; ++n) out = checked_product(out, multiplicity(n));
  return out;
}

std::uint64_t BratteliDiagram::vertex_offset(std::size_t level) const {
  return PeriodicPrefix{vertex_prefix_, repeat_from_}.at(level);
}

std::uint64_t BratteliDiagram::edge_offset(std::size_t level) const {
  return PeriodicPrefix{edge_prefix_, repeat_from_}.at(level);
}

VertexId BratteliDiagram::vertex(std::size_t level, std::size_t index) const {
  if (index >= size(level)) throw PreconditionError("vertex index out of range at level " + std::to_string(level));
  return vertex_offset(level) + index;
}

std::pair<std::size_t, std::size_t> BratteliDiagram::locate_vertex(VertexId v) const {
  const auto [level, offset] = PeriodicPrefix{vertex_prefix_, repeat_from_}.locate(v);
  return {level, static_cast<std::size_t>(offset)};
}

std::int64_t BratteliDiagram::edge_count(std::size_t level) const {
  return pair_prefix_[canonical_matrix(level)].back();
}

EdgeId BratteliDiagram::edge(std::size_t level, std::size_t range, std::size_t source, std::int64_t label) const {
  const auto& m = multiplicity(level);
  if (range >= static_cast<std::size_t>(m.rows()) || source >= static_cast<std::size_t>(m.cols()))
    throw PreconditionError("vertex index out of range at level " + std::to_string(level));
  const std::int64_t k = m(static_cast<Eigen::Index>(range), static_cast<Eigen::Index>(source));
  if (label < 0 || label >= k) throw PreconditionError("edge label out of range");
  const auto& pp = pair_prefix_[canonical_matrix(level)];
  return edge_offset(level) + static_cast<std::uint64_t>(pp[range * static_cast<std::size_t>(m.cols()) + source] + label);
}

BratteliEdge BratteliDiagram::edge_info(EdgeId e) const {
  const auto [level, offset] = PeriodicPrefix{edge_prefix_, repeat_from_}.locate(e);
  const auto& pp = pair_prefix_[canonical_matrix(level)];
  const auto local = static_cast<std::int64_t>(offset);
  const auto it = std::upper_bound(pp.begin(), pp.end(), local);
  const auto cell = static_cast<std::size_t>(it - pp.begin()) - 1;
  const std::size_t cols = size(level + 1);
  return {level, cell / cols, cell % cols, local - pp[cell]};
}

VertexId BratteliDiagram::range(EdgeId e) const {
  const auto info = edge_info(e);
  return vertex(info.level, info.range);
}

VertexId BratteliDiagram::source(EdgeId e) const {
  const auto info = edge_info(e);
  return vertex(info.level + 1, info.source);
}

bool BratteliDiagram::has_vertex(VertexId v) const { return is_infinite() || v < vertex_prefix_.back(); }

bool BratteliDiagram::has_edge(EdgeId e) const {
  if (!is_infinite()) return e < edge_prefix_.back();
  return edge_prefix_.back() > edge_prefix_[*repeat_from_] || e < edge_prefix_.back();
}

std::vector<EdgeId> BratteliDiagram::receivers(VertexId v, std::optional<std::size_t> index_bound) const {
  const auto [level, index] = locate_vertex(v);
  if (!has_level(level + 1)) return {};
  const auto& pp = pair_prefix_[canonical_matrix(level)];
  const std::size_t cols = size(level + 1);
  const EdgeId base = edge_offset(level);
  std::vector<EdgeId> out;
  for (auto k = pp[index * cols]; k < pp[(index + 1) * cols]; ++k) {
    if (index_bound && out.size() >= *index_bound) break;
    out.push_back(base + static_cast<EdgeId>(k));
  }
  return out;
}

std::string BratteliDiagram::vertex_name(VertexId v) const {
  const auto [level, index] = locate_vertex(v);
  return "v" + std::to_string(level) + "_" + std::to_string(index);
}

std::string BratteliDiagram::edge_name(EdgeId e) const {
  const auto i = edge_info(e);
  // 1-based label, as in (vw)_i
  return "(" + std::to_string(i.level) + ":" + std::to_string(i.range) + "," + std::to_string(i.source) + ")_" +
         std::to_string(i.label + 1);
}

// ---------------------------------------------------------------- paths

PathWord PathWord::from_edges(const Graph& g, std::vector<EdgeId> edges) {
  if (edges.empty()) throw PreconditionError("empty edge list; use PathWord::vertex");
  for (auto e : edges)
    if (!g.has_edge(e)) throw PreconditionError("unknown edge " + std::to_string(e));
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (g.source(edges[i]) != g.range(edges[i + 1]))
      throw PreconditionError("not a path: s(" + g.edge_name(edges[i]) + ") != r(" + g.edge_name(edges[i + 1]) + ")");
  PathWord p;
  p.range_vertex = g.range(edges.front());
  p.source_vertex = g.source(edges.back());
  p.edges = std::move(edges);
  return p;
}

PathWord concat(const PathWord& mu, const PathWord& nu) {
  if (mu.source_vertex != nu.range_vertex) throw PreconditionError("concat: s(mu) != r(nu)");
  PathWord out = mu;
  out.edges.insert(out.edges.end(), nu.edges.begin(), nu.edges.end());
  out.source_vertex = nu.source_vertex;
  return out;
}

PathWord prefix(const Graph& g, const PathWord& mu, std::size_t n) {
  if (n > mu.length()) throw PreconditionError("prefix longer than path");
  if (n == 0) return PathWord::vertex(mu.range_vertex);
  PathWord out{mu.range_vertex, g.source(mu.edges[n - 1]), {mu.edges.begin(), mu.edges.begin() + static_cast<long>(n)}};
  return out;
}

bool is_prefix(const PathWord& p, const PathWord& w) {
  if (p.range_vertex != w.range_vertex || p.length() > w.length()) return false;
  return std::equal(p.edges.begin(), p.edges.end(), w.edges.begin());
}

PathWord strip_prefix(const Graph& g, const PathWord& p, const PathWord& w) {
  if (!is_prefix(p, w)) throw PreconditionError("strip_prefix: not a prefix");
  if (p.length() == w.length()) return PathWord::vertex(w.source_vertex);
  return PathWord{g.range(w.edges[p.length()]), w.source_vertex,
                  {w.edges.begin() + static_cast<long>(p.length()), w.edges.end()}};
}

std::string to_string(const Graph& g, const PathWord& mu) {
  if (mu.is_vertex()) return g.vertex_name(mu.range_vertex);
  std::string out;
  for (std::size_t i = 0; i < mu.edges.size(); ++i) {
    if (i) out += ".";
    out += g.edge_name(mu.edges[i]);
  }
  return out;
}

std::vector<PathWord> enumerate_paths(const Graph& g, VertexId anchor, std::size_t depth,
                                      std::optional<std::size_t> index_bound) {
  if (!g.has_vertex(anchor)) throw PreconditionError("unknown anchor vertex " + std::to_string(anchor));
  std::vector<PathWord> out;
  PathWord current = PathWord::vertex(anchor);
  auto dfs = [&](auto&& self, VertexId at) -> void {
    if (current.length() == depth) {
      out.push_back(current);
      return;
    }
    for (EdgeId e : g.receivers(at, index_bound)) {
      current.edges.push_back(e);
      const VertexId next = g.source(e);
      const VertexId saved = current.source_vertex;
      current.source_vertex = next;
      self(self, next);
      current.source_vertex = saved;
      current.edges.pop_back();
    }
  };
  dfs(dfs, anchor);
  return out;
}

// ---------------------------------------------------------------- validation and telescoping

ValidationReport validate_bratteli(const BratteliDiagram& d) {
  ValidationReport report;
  const std::size_t N = d.horizon();
  // Without a repetition rule the last level has no outgoing edges in the
  // explicit data; it is a truncation, not a violation.
  for (std::size_t n = 0; n < N; ++n) {
    const auto& m = d.multiplicity(n);
    for (Eigen::Index v = 0; v < m.rows(); ++v)
      if (m.row(v).sum() == 0)
        report.add("vE^1 nonempty", "vertex " + std::to_string(v) + " at level " + std::to_string(n));
    for (Eigen::Index w = 0; w < m.cols(); ++w)
      if (m.col(w).sum() == 0)
        report.add("E^1v nonempty", "vertex " + std::to_string(w) + " at level " + std::to_string(n + 1));
  }
  for (const auto& [level, v, w] : d.duplicate_declarations())
    report.add("k_vw equals the stored multiplicity", "pair (" + std::to_string(v) + "," + std::to_string(w) +
                                                          ") at level " + std::to_string(level) + " declared twice");
  return report;
}

BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<std::size_t>& subsequence) {
  if (subsequence.empty() || subsequence.front() != 0) throw PreconditionError("subsequence must start at level 0");
  for (std::size_t i = 0; i + 1 < subsequence.size(); ++i)
    if (subsequence[i + 1] <= subsequence[i]) throw PreconditionError("subsequence must be strictly increasing");
  if (!d.has_level(subsequence.back())) throw HorizonError("subsequence exceeds the diagram horizon");
  std::vector<std::size_t> sizes;
  std::vector<IntMatrix> mult;
  for (std::size_t i = 0; i < subsequence.size(); ++i) {
    sizes.push_back(d.size(subsequence[i]));
    if (i + 1 < subsequence.size()) mult.push_back(d.path_counts(subsequence[i], subsequence[i + 1]));
  }
  return BratteliDiagram(std::move(sizes), std::move(mult));
}

GrowthTelescope telescope_for_growth(const BratteliDiagram& d, std::size_t levels, std::size_t search_limit) {
  std::vector<std::size_t> subsequence{0};
  std::vector<std::int64_t> mins;
  for (std::size_t n = 0; n < levels; ++n) {
    const std::size_t from = subsequence.back();
    std::size_t to = from + 1;
    if (!d.has_level(to)) throw HorizonError("diagram ends at level " + std::to_string(from));
    IntMatrix p = d.multiplicity(from);
    while (min_entry(p) <= static_cast<std::int64_t>(n)) {
      if (to >= search_limit || !d.has_level(to + 1))
        throw HorizonError("no level after " + std::to_string(from) + " gives multiplicities above " +
                           std::to_string(n) + " within the horizon");
      p = checked_product(p, d.multiplicity(to));
      ++to;
    }
    subsequence.push_back(to);
    mins.push_back(min_entry(p));
  }
  return {subsequence, telescope(d, subsequence), mins};
}

bool satisfies_growth_condition(const BratteliDiagram& d) {
  for (std::size_t n = 0; n < d.horizon(); ++n)
    if (min_entry(d.multiplicity(n)) <= static_cast<std::int64_t>(n)) return false;
  return true;
}

// ---------------------------------------------------------------- automorphisms

GraphAutomorphism::GraphAutomorphism(VertexMap vertices, EdgeMap edges, std::string description)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), description_(std::move(description)) {}

GraphAutomorphism GraphAutomorphism::identity() {
  return {[](VertexId v, std::int64_t) { return v; }, [](EdgeId e, std::int64_t) { return e; }, "identity"};
}

GraphAutomorphism GraphAutomorphism::from_permutations(const DirectedGraph& g, std::vector<VertexId> vertex_perm,
                                                       std::vector<EdgeId> edge_perm) {
  check_bijection(vertex_perm, g.vertex_count(), "vertex");
  check_bijection(edge_perm, g.edge_count(), "edge");
  for (EdgeId e = 0; e < edge_perm.size(); ++e) {
    if (g.range(edge_perm[e]) != vertex_perm[g.range(e)] || g.source(edge_perm[e]) != vertex_perm[g.source(e)])
      throw ValidationError("permutation does not preserve range/source at edge " + std::to_string(e));
  }
  auto vp = std::make_shared<PermutationPowers>(vertex_perm);
  auto ep = std::make_shared<PermutationPowers>(edge_perm);
  return {[vp](VertexId v, std::int64_t k) { return vp->apply(v, k); },
          [ep](EdgeId e, std::int64_t k) { return ep->apply(e, k); }, "explicit permutation"};
}

PathWord GraphAutomorphism::path(const PathWord& mu, std::int64_t power) const {
  PathWord out{vertex(mu.range_vertex, power), vertex(mu.source_vertex, power), {}};
  out.edges.reserve(mu.edges.size());
  for (auto e : mu.edges) out.edges.push_back(edge(e, power));
  return out;
}

GraphAutomorphism edge_cycle_automorphism(const BratteliDiagram& d, const EdgeLabelling& labelling) {
  struct Order {
    std::vector<std::int64_t> labels;    // cyclic order
    std::vector<std::int64_t> position;  // inverse of labels
  };
  auto orders = std::make_shared<std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Order>>();
  for (const auto& [key, labels] : labelling) {
    const auto& [level, v, w] = key;
    if (!d.has_level(level + 1)) throw ValidationError("labelling refers to a level beyond the horizon");
    const auto& m = d.multiplicity(level);
    if (v >= static_cast<std::size_t>(m.rows()) || w >= static_cast<std::size_t>(m.cols()))
      throw ValidationError("labelling refers to an unknown vertex pair");
    const std::int64_t k = m(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w));
    Order o{labels, std::vector<std::int64_t>(static_cast<std::size_t>(k), -1)};
    if (static_cast<std::int64_t>(labels.size()) != k)
      throw ValidationError("labelling of pair (" + std::to_string(v) + "," + std::to_string(w) + ") at level " +
                            std::to_string(level) + " is not a bijection onto vEw");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] < 0 || labels[i] >= k || o.position[static_cast<std::size_t>(labels[i])] >= 0)
        throw ValidationError("labelling of pair (" + std::to_string(v) + "," + std::to_string(w) + ") at level " +
                              std::to_string(level) + " is not a bijection onto vEw");
      o.position[static_cast<std::size_t>(labels[i])] = static_cast<std::int64_t>(i);
    }
    (*orders)[key] = std::move(o);
  }
  auto diagram = std::make_shared<const BratteliDiagram>(d);
  auto edges = [diagram, orders](EdgeId e, std::int64_t power) -> EdgeId {
    const auto info = diagram->edge_info(e);
    const std::int64_t k =
        diagram->multiplicity(info.level)(static_cast<Eigen::Index>(info.range), static_cast<Eigen::Index>(info.source));
    const auto it = orders->find({info.level, info.range, info.source});
    std::int64_t label;
    if (it == orders->end()) {
      label = checked::mod(info.label + power % k, k);
    } else {
      const auto& o = it->second;
      const std::int64_t pos = o.position[static_cast<std::size_t>(info.label)];
      label = o.labels[static_cast<std::size_t>(checked::mod(pos + power % k, k))];
    }
    return diagram->edge(info.level, info.range, info.source, label);
  };
  return {[](VertexId v, std::int64_t) { return v; }, edges, "edge cycling (vw)_i -> (vw)_{i+1 mod k_vw}"};
}

ValidationReport verify_graph_automorphism(const Graph& g, const GraphAutomorphism& alpha,
                                           const std::vector<EdgeId>& edges) {
  ValidationReport report;
  for (auto e : edges) {
    const EdgeId a = alpha.edge(e);
    if (g.range(a) != alpha.vertex(g.range(e))) report.add("r(alpha(e)) = alpha(r(e))", g.edge_name(e));
    if (g.source(a) != alpha.vertex(g.source(e))) report.add("s(alpha(e)) = alpha(s(e))", g.edge_name(e));
    if (alpha.edge(a, -1) != e) report.add("alpha^-1(alpha(e)) = e", g.edge_name(e));
  }
  return report;
}

std::vector<EdgeId> edges_up_to(const BratteliDiagram& d, std::size_t levels) {
  std::vector<EdgeId> out(d.first_edge(levels));
  std::iota(out.begin(), out.end(), EdgeId{0});
  return out;
}

std::int64_t orbit_size(const GraphAutomorphism& alpha, EdgeId e, std::int64_t cap) {
  EdgeId x = alpha.edge(e);
  std::int64_t n = 1;
  while (x != e) {
    if (++n > cap) throw HorizonError("orbit longer than cap");
    x = alpha.edge(x);
  }
  return n;
}

}  // namespace forge
