#include "forge/groupoid_core.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "forge/error.hpp"
#include "forge/scalar.hpp"

namespace forge {

namespace {

std::string pair_name(const FiniteGroupoid& g, ElementId a, ElementId b) {
  return "(" + g.label(a) + ", " + g.label(b) + ")";
}

}  // namespace

FiniteGroupoid::FiniteGroupoid(std::vector<ElementId> range, std::vector<ElementId> source,
                               std::vector<ElementId> inverse, std::vector<std::int64_t> table,
                               std::vector<ElementId> units, std::vector<std::string> labels)
    : range_(std::move(range)),
      source_(std::move(source)),
      inverse_(std::move(inverse)),
      table_(std::move(table)),
      units_(std::move(units)),
      labels_(std::move(labels)) {
  const std::size_t n = range_.size();
  if (source_.size() != n || inverse_.size() != n) throw StructuralError("groupoid maps have different lengths");
  if (table_.size() != n * n) throw StructuralError("composition table must be |G| x |G|");
  if (!labels_.empty() && labels_.size() != n) throw StructuralError("label count differs from element count");
  for (std::size_t g = 0; g < n; ++g)
    if (range_[g] >= n || source_[g] >= n || inverse_[g] >= n)
      throw StructuralError("structure map of element " + std::to_string(g) + " out of range");
  for (auto x : table_)
    if (x < -1 || x >= static_cast<std::int64_t>(n)) throw StructuralError("composition table entry out of range");
  std::sort(units_.begin(), units_.end());
  units_.erase(std::unique(units_.begin(), units_.end()), units_.end());
  for (auto u : units_)
    if (u >= n) throw StructuralError("unit id out of range");
  by_range_.resize(n);
  by_source_.resize(n);
  for (std::size_t g = 0; g < n; ++g) {
    by_range_[range_[g]].push_back(g);
    by_source_[source_[g]].push_back(g);
  }
}

FiniteGroupoid FiniteGroupoid::tabulate(std::size_t n, const std::function<ElementId(ElementId)>& range,
                                        const std::function<ElementId(ElementId)>& source,
                                        const std::function<ElementId(ElementId)>& inverse,
                                        const std::function<ElementId(ElementId, ElementId)>& compose,
                                        std::vector<std::string> labels) {
  std::vector<ElementId> r(n), s(n), inv(n);
  std::vector<ElementId> units;
  for (ElementId g = 0; g < n; ++g) {
    r[g] = range(g);
    s[g] = source(g);
    inv[g] = inverse(g);
    if (r[g] == g && s[g] == g) units.push_back(g);
  }
  std::vector<std::vector<ElementId>> by_range(n);
  for (ElementId g = 0; g < n; ++g)
    if (r[g] < n) by_range[r[g]].push_back(g);
  std::vector<std::int64_t> table(n * n, -1);
  for (ElementId g = 0; g < n; ++g) {
    if (s[g] >= n) continue;
    for (ElementId h : by_range[s[g]]) table[g * n + h] = static_cast<std::int64_t>(compose(g, h));
  }
  return FiniteGroupoid(std::move(r), std::move(s), std::move(inv), std::move(table), std::move(units),
                        std::move(labels));
}

bool FiniteGroupoid::is_unit(ElementId g) const { return std::binary_search(units_.begin(), units_.end(), g); }

std::optional<ElementId> FiniteGroupoid::try_compose(ElementId g, ElementId h) const {
  const auto x = table_.at(g * size() + h);
  if (x < 0) return std::nullopt;
  return static_cast<ElementId>(x);
}

ElementId FiniteGroupoid::compose(ElementId g, ElementId h) const {
  const auto x = try_compose(g, h);
  if (!x) throw PreconditionError("composition undefined for " + pair_name(*this, g, h));
  return *x;
}

std::string FiniteGroupoid::label(ElementId g) const {
  if (g < labels_.size()) return labels_[g];
  return "g" + std::to_string(g);
}

FiniteGroupoid FiniteGroupoid::with_corrupted_entry(ElementId g, ElementId h, std::int64_t value) const {
  FiniteGroupoid copy = *this;
  copy.table_.at(g * size() + h) = value;
  return copy;
}

ValidationReport verify_groupoid_axioms(const FiniteGroupoid& G) {
  ValidationReport report;
  const std::size_t n = G.size();
  for (ElementId g = 0; g < n; ++g) {
    const bool looks_unit = G.range(g) == g && G.source(g) == g;
    if (looks_unit != G.is_unit(g)) report.add("unit set = {g : g = r(g) = s(g)}", G.label(g));
    if (!G.is_unit(G.range(g))) report.add("r(g) is a unit", G.label(g));
    if (!G.is_unit(G.source(g))) report.add("s(g) is a unit", G.label(g));
  }
  if (!report.passed()) return report;
  for (ElementId g = 0; g < n; ++g)
    for (ElementId h = 0; h < n; ++h) {
      const bool should = G.source(g) == G.range(h);
      const auto gh = G.try_compose(g, h);
      if (should != gh.has_value()) {
        report.add("composition defined exactly when s(g) = r(h)", pair_name(G, g, h));
        continue;
      }
      if (!gh) continue;
      if (G.range(*gh) != G.range(g)) report.add("r(gh) = r(g)", pair_name(G, g, h));
      if (G.source(*gh) != G.source(h)) report.add("s(gh) = s(h)", pair_name(G, g, h));
    }
  if (!report.passed()) return report;
  for (ElementId g = 0; g < n; ++g) {
    if (G.compose(G.range(g), g) != g) report.add("r(g)g = g", G.label(g));
    if (G.compose(g, G.source(g)) != g) report.add("g s(g) = g", G.label(g));
    const ElementId inv = G.inverse(g);
    if (G.inverse(inv) != g) report.add("inverse is an involution", G.label(g));
    if (G.source(g) != G.range(inv) || G.compose(g, inv) != G.range(g)) report.add("g g^-1 = r(g)", G.label(g));
    if (G.range(g) != G.source(inv) || G.compose(inv, g) != G.source(g)) report.add("g^-1 g = s(g)", G.label(g));
  }
  for (ElementId g = 0; g < n; ++g)
    for (ElementId h : G.with_range(G.source(g))) {
      const ElementId gh = G.compose(g, h);
      for (ElementId k : G.with_range(G.source(h))) {
        if (G.compose(gh, k) != G.compose(g, G.compose(h, k)))
          report.add("associativity (gh)k = g(hk)",
                     "(" + G.label(g) + ", " + G.label(h) + ", " + G.label(k) + ")");
      }
    }
  return report;
}

std::vector<ElementId> isotropy_group(const FiniteGroupoid& g, ElementId u) {
  if (!g.is_unit(u)) throw PreconditionError(g.label(u) + " is not a unit");
  std::vector<ElementId> out;
  for (ElementId x : g.with_range(u))
    if (g.source(x) == u) out.push_back(x);
  return out;
}

std::vector<ElementId> orbit(const FiniteGroupoid& g, ElementId u) {
  if (!g.is_unit(u)) throw PreconditionError(g.label(u) + " is not a unit");
  std::set<ElementId> out;
  for (ElementId x : g.with_source(u)) out.insert(g.range(x));
  return {out.begin(), out.end()};
}

std::vector<std::vector<ElementId>> orbits(const FiniteGroupoid& g) {
  std::vector<std::vector<ElementId>> out;
  std::set<ElementId> seen;
  for (ElementId u : g.units()) {
    if (seen.count(u)) continue;
    auto o = orbit(g, u);
    seen.insert(o.begin(), o.end());
    out.push_back(std::move(o));
  }
  return out;
}

bool is_principal(const FiniteGroupoid& g) {
  for (ElementId u : g.units())
    if (isotropy_group(g, u).size() != 1) return false;
  return true;
}

bool is_minimal(const FiniteGroupoid& g) { return orbits(g).size() <= 1; }

ValidationReport verify_cocycle(const FiniteGroupoid& G, const Cocycle& c) {
  ValidationReport report;
  if (c.values.size() != G.size()) {
    report.add("cocycle defined on every element", "length " + std::to_string(c.values.size()));
    return report;
  }
  const auto reduce = [&](std::int64_t x) { return c.modulus > 0 ? checked::mod(x, c.modulus) : x; };
  if (c.modulus < 0) report.add("cocycle modulus is nonnegative", std::to_string(c.modulus));
  for (ElementId u : G.units())
    if (reduce(c(u)) != 0) report.add("c(u) = 0 on units", G.label(u));
  for (ElementId g = 0; g < G.size(); ++g)
    for (ElementId h : G.with_range(G.source(g)))
      if (reduce(c(G.compose(g, h))) != reduce(checked::add(c(g), c(h))))
        report.add("c(gh) = c(g) + c(h)", pair_name(G, g, h));
  return report;
}

GroupoidAutomorphism::GroupoidAutomorphism(std::vector<ElementId> map)
    : map_(std::move(map)), inverse_(map_.size(), map_.size()), cycle_of_(map_.size()), position_(map_.size()) {
  for (ElementId g = 0; g < map_.size(); ++g) {
    if (map_[g] >= map_.size() || inverse_[map_[g]] != map_.size())
      throw ValidationError("automorphism map is not a bijection");
    inverse_[map_[g]] = g;
  }
  std::vector<bool> seen(map_.size(), false);
  for (ElementId g = 0; g < map_.size(); ++g) {
    if (seen[g]) continue;
    std::vector<ElementId> cyc;
    for (ElementId x = g; !seen[x]; x = map_[x]) {
      seen[x] = true;
      cycle_of_[x] = cycles_.size();
      position_[x] = cyc.size();
      cyc.push_back(x);
    }
    order_ = checked::lcm(order_, static_cast<std::int64_t>(cyc.size()));
    cycles_.push_back(std::move(cyc));
  }
}

GroupoidAutomorphism GroupoidAutomorphism::identity(std::size_t n) {
  std::vector<ElementId> m(n);
  std::iota(m.begin(), m.end(), ElementId{0});
  return GroupoidAutomorphism(std::move(m));
}

ElementId GroupoidAutomorphism::apply(ElementId g, std::int64_t k) const {
  const auto& cyc = cycles_.at(cycle_of_.at(g));
  const auto len = static_cast<std::int64_t>(cyc.size());
  return cyc[static_cast<std::size_t>(checked::mod(static_cast<std::int64_t>(position_[g]) + k % len, len))];
}

ValidationReport verify_automorphism(const FiniteGroupoid& G, const GroupoidAutomorphism& a) {
  ValidationReport report;
  if (a.map().size() != G.size()) {
    report.add("automorphism defined on every element", "length " + std::to_string(a.map().size()));
    return report;
  }
  for (ElementId g = 0; g < G.size(); ++g) {
    if (G.is_unit(g) != G.is_unit(a(g))) report.add("alpha preserves units", G.label(g));
    if (G.range(a(g)) != a(G.range(g))) report.add("r(alpha(g)) = alpha(r(g))", G.label(g));
    if (G.source(a(g)) != a(G.source(g))) report.add("s(alpha(g)) = alpha(s(g))", G.label(g));
    if (G.inverse(a(g)) != a(G.inverse(g))) report.add("alpha(g^-1) = alpha(g)^-1", G.label(g));
  }
  if (!report.passed()) return report;
  for (ElementId g = 0; g < G.size(); ++g)
    for (ElementId h : G.with_range(G.source(g)))
      if (a(G.compose(g, h)) != G.compose(a(g), a(h))) report.add("alpha(gh) = alpha(g)alpha(h)", pair_name(G, g, h));
  return report;
}

FiniteGroupoid product_with_full_relation(const FiniteGroupoid& G, std::size_t N) {
  const std::size_t w = 2 * N + 1;
  const std::size_t n = G.size() * w * w;
  auto id = [w](ElementId g, std::size_t i, std::size_t j) { return (g * w + i) * w + j; };
  auto g_of = [w](ElementId x) { return x / (w * w); };
  auto i_of = [w](ElementId x) { return (x / w) % w; };
  auto j_of = [w](ElementId x) { return x % w; };
  std::vector<std::string> labels(n);
  const auto shift = static_cast<std::int64_t>(N);
  for (ElementId x = 0; x < n; ++x)
    labels[x] = "(" + G.label(g_of(x)) + ", " + std::to_string(static_cast<std::int64_t>(i_of(x)) - shift) + ", " +
                std::to_string(static_cast<std::int64_t>(j_of(x)) - shift) + ")";
  return FiniteGroupoid::tabulate(
      n, [&](ElementId x) { return id(G.range(g_of(x)), i_of(x), i_of(x)); },
      [&](ElementId x) { return id(G.source(g_of(x)), j_of(x), j_of(x)); },
      [&](ElementId x) { return id(G.inverse(g_of(x)), j_of(x), i_of(x)); },
      [&](ElementId x, ElementId y) {
        if (j_of(x) != i_of(y)) throw InternalError("full relation coordinates not composable");
        return id(G.compose(g_of(x), g_of(y)), i_of(x), j_of(y));
      },
      std::move(labels));
}

// ---------------------------------------------------------------- groups and blocks

std::size_t FiniteGroup::inverse(std::size_t a) const {
  for (std::size_t b = 0; b < order(); ++b)
    if (mul[a][b] == 0) return b;
  throw InternalError("group element without inverse");
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < order(); ++b)
      if (mul[a][b] != mul[b][a]) return false;
  return true;
}

FiniteGroup cyclic_group(std::size_t m) {
  if (m == 0) throw PreconditionError("cyclic group of order 0");
  FiniteGroup g{std::vector<std::vector<std::size_t>>(m, std::vector<std::size_t>(m)), "Z/" + std::to_string(m)};
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) g.mul[a][b] = (a + b) % m;
  return g;
}

FiniteGroup symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  FiniteGroup g{std::vector<std::vector<std::size_t>>(6, std::vector<std::size_t>(6)), "S3"};
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(i)])];
      g.mul[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return g;
}

std::vector<std::vector<std::size_t>> group_automorphisms(const FiniteGroup& g) {
  if (g.order() > 8) throw PreconditionError("brute-force automorphism search limited to order 8");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> p(g.order());
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    bool hom = true;
    for (std::size_t a = 0; a < g.order() && hom; ++a)
      for (std::size_t b = 0; b < g.order() && hom; ++b) hom = p[g.mul[a][b]] == g.mul[p[a]][p[b]];
    if (hom) out.push_back(p);
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return out;
}

BlockGroupoid::BlockGroupoid(std::vector<TransitiveBlock> blocks)
    : blocks_(std::move(blocks)), groupoid_(std::vector<ElementId>{}, {}, {}, {}, {}) {
  if (blocks_.empty()) throw StructuralError("groupoid without blocks");
  std::size_t total = 0;
  for (const auto& b : blocks_) {
    if (b.points == 0 || b.group.order() == 0) throw StructuralError("empty transitive block");
    offset_.push_back(total);
    total += b.size();
  }
  std::vector<std::string> labels(total);
  for (ElementId x = 0; x < total; ++x) {
    const auto c = coordinates(x);
    labels[x] = (blocks_.size() > 1 ? "b" + std::to_string(c.block) + ":" : std::string()) + "(" +
                std::to_string(c.i) + "," + std::to_string(c.gamma) + "," + std::to_string(c.j) + ")";
  }
  groupoid_ = FiniteGroupoid::tabulate(
      total,
      [&](ElementId x) {
        const auto c = coordinates(x);
        return element(c.block, c.i, 0, c.i);
      },
      [&](ElementId x) {
        const auto c = coordinates(x);
        return element(c.block, c.j, 0, c.j);
      },
      [&](ElementId x) {
        const auto c = coordinates(x);
        return element(c.block, c.j, blocks_[c.block].group.inverse(c.gamma), c.i);
      },
      [&](ElementId x, ElementId y) {
        const auto a = coordinates(x);
        const auto b = coordinates(y);
        return element(a.block, a.i, blocks_[a.block].group.mul[a.gamma][b.gamma], b.j);
      },
      std::move(labels));
}

ElementId BlockGroupoid::element(std::size_t block, std::size_t i, std::size_t gamma, std::size_t j) const {
  const auto& b = blocks_.at(block);
  if (i >= b.points || j >= b.points || gamma >= b.group.order())
    throw PreconditionError("block coordinates out of range");
  return offset_[block] + (i * b.group.order() + gamma) * b.points + j;
}

BlockGroupoid::Coordinates BlockGroupoid::coordinates(ElementId g) const {
  const auto it = std::upper_bound(offset_.begin(), offset_.end(), g);
  const auto block = static_cast<std::size_t>(it - offset_.begin()) - 1;
  const auto& b = blocks_.at(block);
  std::size_t local = g - offset_[block];
  if (local >= b.size()) throw PreconditionError("element id out of range");
  const std::size_t j = local % b.points;
  local /= b.points;
  return {block, local / b.group.order(), local % b.group.order(), j};
}

GroupoidAutomorphism BlockGroupoid::automorphism(const AutomorphismData& d) const {
  const std::size_t nb = blocks_.size();
  if (d.block_perm.size() != nb || d.point_perm.size() != nb || d.group_aut.size() != nb || d.gauge.size() != nb)
    throw ValidationError("automorphism data must cover every block");
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& src = blocks_[b];
    const auto& dst = blocks_.at(d.block_perm[b]);
    if (src.points != dst.points || src.group.mul != dst.group.mul)
      throw ValidationError("block permutation maps block " + std::to_string(b) + " onto a block of another shape");
    if (d.point_perm[b].size() != src.points || d.gauge[b].size() != src.points ||
        d.group_aut[b].size() != src.group.order())
      throw ValidationError("automorphism data of block " + std::to_string(b) + " has wrong length");
  }
  std::vector<ElementId> map(size());
  for (ElementId x = 0; x < size(); ++x) {
    const auto c = coordinates(x);
    const auto& grp = blocks_[c.block].group;
    const auto& psi = d.gauge[c.block];
    const std::size_t gamma = grp.mul[grp.mul[psi[c.i]][d.group_aut[c.block][c.gamma]]][grp.inverse(psi[c.j])];
    map[x] = element(d.block_perm[c.block], d.point_perm[c.block][c.i], gamma, d.point_perm[c.block][c.j]);
  }
  return GroupoidAutomorphism(std::move(map));
}

Cocycle BlockGroupoid::coboundary(const std::vector<std::vector<std::int64_t>>& potential) const {
  if (potential.size() != blocks_.size()) throw PreconditionError("potential must cover every block");
  Cocycle c{std::vector<std::int64_t>(size())};
  for (ElementId x = 0; x < size(); ++x) {
    const auto k = coordinates(x);
    c.values[x] = checked::sub(potential[k.block].at(k.i), potential[k.block].at(k.j));
  }
  return c;
}

Cocycle BlockGroupoid::cyclic_cocycle(const std::vector<std::vector<std::int64_t>>& potential,
                                      const std::vector<std::int64_t>& step, std::int64_t modulus) const {
  if (modulus <= 0) throw PreconditionError("cyclic cocycle needs a positive modulus");
  if (potential.size() != blocks_.size() || step.size() != blocks_.size())
    throw PreconditionError("potential and step must cover every block");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto order = static_cast<std::int64_t>(blocks_[b].group.order());
    const bool cyclic = blocks_[b].group.name == "Z/" + std::to_string(order);
    if (step[b] != 0 && !cyclic) throw PreconditionError("nonzero step on a noncyclic block");
    if (checked::mod(checked::mul(order, step[b]), modulus) != 0)
      throw PreconditionError("step does not define a homomorphism Z/" + std::to_string(order) + " -> Z/" +
                              std::to_string(modulus));
  }
  Cocycle c{std::vector<std::int64_t>(size()), modulus};
  for (ElementId x = 0; x < size(); ++x) {
    const auto k = coordinates(x);
    const std::int64_t v = checked::sub(potential[k.block].at(k.i), potential[k.block].at(k.j));
    c.values[x] = checked::mod(checked::add(v, checked::mul(step[k.block], static_cast<std::int64_t>(k.gamma))), modulus);
  }
  return c;
}

FiniteGroupoid full_relation(std::size_t n) { return BlockGroupoid({{n, cyclic_group(1)}}).groupoid(); }

FiniteGroupoid group_as_groupoid(const FiniteGroup& g) { return BlockGroupoid({{1, g}}).groupoid(); }

}  // namespace forge
