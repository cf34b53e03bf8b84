#include "forge/graph_groupoid.hpp"

#include <algorithm>

namespace forge {

namespace {

std::vector<EdgeId> primitive_root(const std::vector<EdgeId>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return {w.begin(), w.begin() + static_cast<long>(d)};
  }
  return w;
}

void rotate_right(std::vector<EdgeId>& w) { std::rotate(w.rbegin(), w.rbegin() + 1, w.rend()); }

// Drops the last edge of mu, keeping the cached source vertex consistent.
void drop_last(const Graph& g, PathWord& mu) {
  const EdgeId e = mu.edges.back();
  mu.edges.pop_back();
  mu.source_vertex = g.range(e);
}

std::vector<EdgeId> sorted_union(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  std::vector<EdgeId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool excluded(const std::vector<EdgeId>& f, EdgeId e) { return std::binary_search(f.begin(), f.end(), e); }

bool tails_attach(const Graph& g, VertexId v, const Tail& t) {
  if (std::holds_alternative<EndTail>(t)) return !g.finite_receivers(v);
  if (const auto* var = std::get_if<VariableTail>(&t)) return var->anchor == v;
  const auto& w = std::get<PeriodicTail>(t).word;
  return !w.empty() && g.range(w.front()) == v;
}

PathValue attach(const PathWord& p, const PathValue& t) { return {concat(p, t.word), t.tail}; }

// First edge of a point beyond its word, if determined.
std::optional<EdgeId> first_edge(const PathValue& x) {
  if (!x.word.edges.empty()) return x.word.edges.front();
  if (const auto* p = std::get_if<PeriodicTail>(&x.tail)) return p->word.front();
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------- points

PathValue PathValue::finite(const Graph& g, PathWord mu) {
  if (g.finite_receivers(mu.source_vertex))
    throw PreconditionError("finite path ending at a vertex with finitely many receivers is not a unit");
  return {std::move(mu), EndTail{}};
}

PathValue PathValue::variable(PathWord mu, std::int64_t id) {
  const VertexId v = mu.source_vertex;
  return {std::move(mu), VariableTail{id, 0, v}};
}

PathValue PathValue::periodic(const Graph& g, PathWord mu, std::vector<EdgeId> cycle) {
  if (cycle.empty()) throw PreconditionError("periodic tail needs a nonempty cycle");
  const PathWord c = PathWord::from_edges(g, cycle);
  if (c.source_vertex != c.range_vertex) throw PreconditionError("periodic tail word is not a cycle");
  if (c.range_vertex != mu.source_vertex) throw PreconditionError("periodic tail does not start at s(mu)");
  return canonical(g, PathValue{std::move(mu), PeriodicTail{std::move(cycle)}});
}

PathValue canonical(const Graph& g, PathValue x) {
  auto* p = std::get_if<PeriodicTail>(&x.tail);
  if (!p) return x;
  p->word = primitive_root(p->word);
  while (!x.word.edges.empty() && x.word.edges.back() == p->word.back()) {
    rotate_right(p->word);
    drop_last(g, x.word);
  }
  return x;
}

PathWord path_prefix(const Graph& g, const PathValue& x, std::size_t n) {
  if (n <= x.word.length()) return prefix(g, x.word, n);
  if (const auto* p = std::get_if<PeriodicTail>(&x.tail)) {
    std::vector<EdgeId> edges = x.word.edges;
    for (std::size_t i = 0; edges.size() < n; ++i) edges.push_back(p->word[i % p->word.size()]);
    return PathWord::from_edges(g, std::move(edges));
  }
  if (std::holds_alternative<VariableTail>(x.tail)) throw PreconditionError("prefix reaches into a variable tail");
  throw PreconditionError("prefix longer than the finite path");
}

PathWord shift(const Graph& g, const PathWord& p, std::size_t n) {
  if (n > p.length())
    throw PreconditionError("shift by " + std::to_string(n) + " of a path of length " + std::to_string(p.length()));
  if (n == p.length()) return PathWord::vertex(p.source_vertex);
  return {g.range(p.edges[n]), p.source_vertex, {p.edges.begin() + static_cast<long>(n), p.edges.end()}};
}

PathValue shift(const Graph& g, const PathValue& x, std::size_t n) {
  if (n <= x.word.length()) return canonical(g, PathValue{shift(g, x.word, n), x.tail});
  if (const auto* p = std::get_if<PeriodicTail>(&x.tail)) {
    auto w = p->word;
    std::rotate(w.begin(), w.begin() + static_cast<long>((n - x.word.length()) % w.size()), w.end());
    const VertexId v = g.range(w.front());
    return canonical(g, PathValue{PathWord::vertex(v), PeriodicTail{std::move(w)}});
  }
  if (std::holds_alternative<VariableTail>(x.tail)) throw PreconditionError("positive shift into a variable tail");
  throw PreconditionError("shift by " + std::to_string(n) + " of a finite path of length " +
                          std::to_string(x.word.length()));
}

std::string to_string(const Graph& g, const PathValue& x) {
  std::string out = to_string(g, x.word);
  if (const auto* v = std::get_if<VariableTail>(&x.tail)) {
    out += " z" + std::to_string(v->id);
    if (v->power) out += "^(" + std::to_string(v->power) + ")";
  } else if (const auto* p = std::get_if<PeriodicTail>(&x.tail)) {
    out += " (" + to_string(g, PathWord{g.range(p->word.front()), g.source(p->word.back()), p->word}) + ")^inf";
  }
  return out;
}

// ---------------------------------------------------------------- germs

GermElement make_germ(const Graph& g, PathWord mu, PathWord nu, Tail tail) {
  if (mu.source_vertex != nu.source_vertex) throw PreconditionError("germ needs s(mu) = s(nu)");
  if (!tails_attach(g, mu.source_vertex, tail)) throw PreconditionError("tail does not attach at s(mu)");
  return canonical(g, GermElement{std::move(mu), std::move(nu), std::move(tail)});
}

GermElement canonical(const Graph& g, const GermElement& x) {
  auto* p = std::get_if<PeriodicTail>(&x.tail);
  if (!p) return x;
  GermElement out = x;
  auto& w = std::get<PeriodicTail>(out.tail).word;
  w = primitive_root(w);
  while (!out.mu.edges.empty() && !out.nu.edges.empty() && out.mu.edges.back() == w.back() &&
         out.nu.edges.back() == w.back()) {
    rotate_right(w);
    drop_last(g, out.mu);
    drop_last(g, out.nu);
  }
  return out;
}

GermElement germ_inverse(const GermElement& x) { return {x.nu, x.mu, x.tail}; }

std::optional<GermElement> germ_product(const Graph& g, const GermElement& a, const GermElement& b) {
  if (a.tail.index() != b.tail.index()) return std::nullopt;
  if (!std::holds_alternative<PeriodicTail>(a.tail)) {
    if (!(a.tail == b.tail) || !(a.nu == b.mu)) return std::nullopt;
    return GermElement{a.mu, b.nu, a.tail};
  }
  if (!(canonical(g, a.source()) == canonical(g, b.range()))) return std::nullopt;
  const std::int64_t d = a.degree() + b.degree();
  const PathValue x = a.range();
  const PathValue z = b.source();
  const auto period = std::get<PeriodicTail>(a.tail).word.size();
  const std::int64_t base = std::max<std::int64_t>(static_cast<std::int64_t>(x.word.length()),
                                                   static_cast<std::int64_t>(z.word.length()) + d);
  const auto len = static_cast<std::size_t>(std::max<std::int64_t>(base, d) + static_cast<std::int64_t>(period));
  const auto len_z = static_cast<std::size_t>(static_cast<std::int64_t>(len) - d);
  const PathValue tx = shift(g, x, len);
  if (!(tx == shift(g, z, len_z))) throw InternalError("composable periodic germs with mismatched tails");
  return canonical(g, GermElement{path_prefix(g, x, len), path_prefix(g, z, len_z), tx.tail});
}

std::string to_string(const Graph& g, const GermElement& x) {
  return "(" + to_string(g, x.range()) + ", " + std::to_string(x.degree()) + ", " + to_string(g, x.source()) + ")";
}

// ---------------------------------------------------------------- bisections

Cylinder make_cylinder(const Graph& g, PathWord mu, std::vector<EdgeId> excluded) {
  std::sort(excluded.begin(), excluded.end());
  excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
  for (auto e : excluded)
    if (!g.has_edge(e) || g.range(e) != mu.source_vertex)
      throw PreconditionError("excluded edge " + g.edge_name(e) + " does not start at s(mu)");
  return {std::move(mu), std::move(excluded)};
}

BasicBisection make_bisection(const Graph& g, PathWord alpha, PathWord beta, std::vector<EdgeId> excluded) {
  if (alpha.source_vertex != beta.source_vertex) throw PreconditionError("bisection needs s(alpha) = s(beta)");
  auto c = make_cylinder(g, std::move(alpha), std::move(excluded));
  return {std::move(c.mu), std::move(beta), std::move(c.excluded)};
}

BasicBisection unit_bisection(const Cylinder& c) { return {c.mu, c.mu, c.excluded}; }
BasicBisection bisection_inverse(const BasicBisection& b) { return {b.beta, b.alpha, b.excluded}; }
Cylinder range_set(const BasicBisection& b) { return {b.alpha, b.excluded}; }
Cylinder source_set(const BasicBisection& b) { return {b.beta, b.excluded}; }

bool is_empty(const Graph& g, const Cylinder& c) {
  const VertexId v = c.mu.source_vertex;
  if (!g.finite_receivers(v)) return false;
  for (EdgeId e : g.receivers(v))
    if (!excluded(c.excluded, e)) return false;
  return true;
}

bool is_empty(const Graph& g, const BasicBisection& b) { return is_empty(g, range_set(b)); }

BisectionSum bisection_product(const Graph& g, const BasicBisection& a, const BasicBisection& b) {
  BasicBisection out;
  if (a.beta.length() <= b.alpha.length()) {
    if (!is_prefix(a.beta, b.alpha)) return {};
    const PathWord eta = strip_prefix(g, a.beta, b.alpha);
    if (eta.is_vertex()) {
      out = {a.alpha, b.beta, sorted_union(a.excluded, b.excluded)};
    } else {
      if (excluded(a.excluded, eta.edges.front())) return {};
      out = {concat(a.alpha, eta), b.beta, b.excluded};
    }
  } else {
    if (!is_prefix(b.alpha, a.beta)) return {};
    const PathWord eta = strip_prefix(g, b.alpha, a.beta);
    if (excluded(b.excluded, eta.edges.front())) return {};
    out = {a.alpha, concat(b.beta, eta), a.excluded};
  }
  if (is_empty(g, out)) return {};
  return {{out}};
}

std::optional<BasicBisection> bisection_intersection(const Graph& g, const BasicBisection& a,
                                                     const BasicBisection& b) {
  if (a.degree() != b.degree()) return std::nullopt;
  if (a.alpha.length() > b.alpha.length()) return bisection_intersection(g, b, a);
  if (!is_prefix(a.alpha, b.alpha)) return std::nullopt;
  const PathWord eta = strip_prefix(g, a.alpha, b.alpha);
  if (a.beta.source_vertex != eta.range_vertex || !(concat(a.beta, eta) == b.beta)) return std::nullopt;
  BasicBisection out;
  if (eta.is_vertex()) {
    out = {a.alpha, a.beta, sorted_union(a.excluded, b.excluded)};
  } else {
    if (excluded(a.excluded, eta.edges.front())) return std::nullopt;
    out = b;
  }
  if (is_empty(g, out)) return std::nullopt;
  return out;
}

bool disjoint(const Graph& g, const BasicBisection& a, const BasicBisection& b) {
  return !bisection_intersection(g, a, b).has_value();
}

bool contains(const Graph& g, const Cylinder& outer, const Cylinder& inner) {
  if (is_empty(g, inner)) return true;
  const PathWord& mu = inner.mu;
  const PathWord& nu = outer.mu;
  if (is_prefix(nu, mu)) {
    const PathWord eta = strip_prefix(g, nu, mu);
    if (!eta.is_vertex()) return !excluded(outer.excluded, eta.edges.front());
    return std::includes(inner.excluded.begin(), inner.excluded.end(), outer.excluded.begin(), outer.excluded.end());
  }
  if (is_prefix(mu, nu)) {
    // mu itself lies in Z(mu \ F) when finite paths are units
    if (!g.finite_receivers(mu.source_vertex)) return false;
    const EdgeId next = nu.edges[mu.length()];
    for (EdgeId e : g.receivers(mu.source_vertex))
      if (e != next && !excluded(inner.excluded, e)) return false;
    if (excluded(inner.excluded, next)) return true;  // unreachable: inner would be empty
    return contains(g, outer, Cylinder{concat(mu, PathWord{g.range(next), g.source(next), {next}}), {}});
  }
  return false;
}

bool same_set(const Graph& g, const Cylinder& a, const Cylinder& b) { return contains(g, a, b) && contains(g, b, a); }

bool strictly_contains(const Graph& g, const Cylinder& outer, const Cylinder& inner) {
  return contains(g, outer, inner) && !contains(g, inner, outer);
}

bool contains(const Graph& g, const BasicBisection& outer, const BasicBisection& inner) {
  if (is_empty(g, inner)) return true;
  const auto meet = bisection_intersection(g, outer, inner);
  if (!meet) return false;
  return same_set(g, range_set(*meet), range_set(inner));
}

bool same_set(const Graph& g, const BasicBisection& a, const BasicBisection& b) {
  return contains(g, a, b) && contains(g, b, a);
}

bool contains(const Graph& g, const BasicBisection& b, const GermElement& x) {
  if (x.degree() != b.degree()) return false;
  const PathValue X = canonical(g, x.range());
  const PathValue Y = canonical(g, x.source());
  PathWord head;
  try {
    head = path_prefix(g, X, b.alpha.length());
  } catch (const PreconditionError&) {
    return false;  // the point is too short or generic beyond its word
  }
  if (!(head == b.alpha)) return false;
  const PathValue t = shift(g, X, b.alpha.length());
  if (const auto e = first_edge(t); e && excluded(b.excluded, *e)) return false;
  return canonical(g, attach(b.beta, t)) == Y;
}

std::string to_string(const Graph& g, const Cylinder& c) {
  std::string out = "Z(" + to_string(g, c.mu);
  if (!c.excluded.empty()) {
    out += "∖{";
    for (std::size_t i = 0; i < c.excluded.size(); ++i) out += (i ? "," : "") + g.edge_name(c.excluded[i]);
    out += "}";
  }
  return out + ")";
}

std::string to_string(const Graph& g, const BasicBisection& b) {
  std::string out = "Z((" + to_string(g, b.alpha) + ", " + to_string(g, b.beta) + ")";
  if (!b.excluded.empty()) {
    out += "∖{";
    for (std::size_t i = 0; i < b.excluded.size(); ++i) out += (i ? "," : "") + g.edge_name(b.excluded[i]);
    out += "}";
  }
  return out + ")";
}

// ---------------------------------------------------------------- set algebra on sums

BisectionSum difference(const Graph& g, const BasicBisection& a, const BasicBisection& b) {
  if (is_empty(g, a)) return {};
  const auto meet = bisection_intersection(g, a, b);
  if (!meet) return {{a}};
  BisectionSum out;
  const auto keep = [&](BasicBisection x) {
    if (!is_empty(g, x)) out.terms.push_back(std::move(x));
  };
  const PathWord eta = strip_prefix(g, a.alpha, meet->alpha);
  // peel off the paths that leave eta early
  PathWord alpha = a.alpha, beta = a.beta;
  for (std::size_t i = 0; i < eta.length(); ++i) {
    const EdgeId e = eta.edges[i];
    keep({alpha, beta, sorted_union(i == 0 ? a.excluded : std::vector<EdgeId>{}, {e})});
    const PathWord step{g.range(e), g.source(e), {e}};
    alpha = concat(alpha, step);
    beta = concat(beta, step);
  }
  const std::vector<EdgeId>& base = eta.is_vertex() ? a.excluded : std::vector<EdgeId>{};
  for (EdgeId e : meet->excluded) {
    if (excluded(base, e)) continue;
    const PathWord step{g.range(e), g.source(e), {e}};
    keep({concat(alpha, step), concat(beta, step), {}});
  }
  return out;
}

BisectionSum difference(const Graph& g, const BisectionSum& a, const BisectionSum& b) {
  BisectionSum rest = a;
  for (const auto& t : b.terms) {
    BisectionSum next;
    for (const auto& x : rest.terms)
      for (auto& y : difference(g, x, t).terms) next.terms.push_back(std::move(y));
    rest = std::move(next);
  }
  return rest;
}

BisectionSum disjoint_union(const Graph& g, const BisectionSum& a, const BisectionSum& b) {
  BisectionSum out = a;
  for (auto& t : difference(g, b, a).terms) out.terms.push_back(std::move(t));
  return out;
}

BisectionSum bisection_product(const Graph& g, const BisectionSum& a, const BisectionSum& b) {
  BisectionSum out;
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) out = disjoint_union(g, out, bisection_product(g, x, y));
  return out;
}

BisectionSum bisection_inverse(const BisectionSum& a) {
  BisectionSum out;
  for (const auto& t : a.terms) out.terms.push_back(bisection_inverse(t));
  return out;
}

bool subset(const Graph& g, const BisectionSum& a, const BisectionSum& b) { return difference(g, a, b).empty(); }

bool same_set(const Graph& g, const BisectionSum& a, const BisectionSum& b) {
  return subset(g, a, b) && subset(g, b, a);
}

std::string to_string(const Graph& g, const BisectionSum& s) {
  if (s.empty()) return "∅";
  std::string out;
  for (std::size_t i = 0; i < s.terms.size(); ++i) out += (i ? " + " : "") + to_string(g, s.terms[i]);
  return out;
}

// ---------------------------------------------------------------- cylinders and lifts

PathWord find_cylinder_inside(const Graph& g, const Cylinder& w) {
  if (is_empty(g, w)) throw PreconditionError("basic open set is empty");
  if (w.excluded.empty()) return w.mu;
  const VertexId v = w.mu.source_vertex;
  EdgeId pick;
  if (!g.finite_receivers(v)) {
    // receivers are listed in index order, so this is e_{max F + 1}
    const auto rec = g.receivers(v, static_cast<std::size_t>(w.excluded.back()) + 2);
    pick = rec.back();
  } else {
    const auto rec = g.receivers(v);
    const auto it = std::find_if(rec.begin(), rec.end(), [&](EdgeId e) { return !excluded(w.excluded, e); });
    pick = *it;
  }
  return concat(w.mu, PathWord{g.range(pick), g.source(pick), {pick}});
}

PathWord find_cylinder_inside(const Graph& g, const PathValue& x, std::size_t n) { return path_prefix(g, x, n); }

PathValue SymbolicAutomorphism::apply(const PathValue& x, std::int64_t k) const {
  PathValue out{a_.path(x.word, k), x.tail};
  if (auto* v = std::get_if<VariableTail>(&out.tail)) {
    v->power += k;
    v->anchor = a_.vertex(v->anchor, k);
  } else if (auto* p = std::get_if<PeriodicTail>(&out.tail)) {
    for (auto& e : p->word) e = a_.edge(e, k);
  }
  return out;
}

GermElement SymbolicAutomorphism::apply(const GermElement& x, std::int64_t k) const {
  const PathValue r = apply(x.range(), k);
  const PathValue s = apply(x.source(), k);
  return {r.word, s.word, r.tail};
}

Cylinder SymbolicAutomorphism::apply(const Cylinder& c, std::int64_t k) const {
  Cylinder out{a_.path(c.mu, k), {}};
  for (auto e : c.excluded) out.excluded.push_back(a_.edge(e, k));
  std::sort(out.excluded.begin(), out.excluded.end());
  return out;
}

BisectionSum SymbolicAutomorphism::apply(const BisectionSum& s, std::int64_t k) const {
  BisectionSum out;
  for (const auto& t : s.terms) out.terms.push_back(apply(t, k));
  return out;
}

BasicBisection SymbolicAutomorphism::apply(const BasicBisection& b, std::int64_t k) const {
  const Cylinder r = apply(range_set(b), k);
  return {r.mu, a_.path(b.beta, k), r.excluded};
}

SymbolicAutomorphism lift_graph_automorphism(GraphAutomorphism a) { return SymbolicAutomorphism(std::move(a)); }

const DirectedGraph& hinf_graph() {
  static const DirectedGraph rose = DirectedGraph::infinite_rose();
  return rose;
}

PathWord hinf_path(const std::vector<EdgeId>& edges) {
  if (edges.empty()) return PathWord::vertex(0);
  return {0, 0, edges};
}

}  // namespace forge
