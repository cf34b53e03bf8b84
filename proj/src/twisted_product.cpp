#include "forge/twisted_product.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "forge/error.hpp"
#include "forge/scalar.hpp"

namespace forge {

namespace {

// orbit index of every unit, indexed by element id
std::vector<std::size_t> orbit_index(const FiniteGroupoid& G) {
  std::vector<std::size_t> idx(G.size(), G.size());
  const auto all = orbits(G);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (ElementId u : all[i]) idx[u] = i;
  return idx;
}

std::string set_name(const FiniteGroupoid& G, const std::vector<ElementId>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + G.label(s[i]);
  return out + "}";
}

}  // namespace

TwistedProduct::TwistedProduct(FiniteGroupoid H, Cocycle c, FiniteGroupoid G, GroupoidAutomorphism alpha)
    : H_(std::move(H)), c_(std::move(c)), G_(std::move(G)), alpha_(std::move(alpha)), product_(full_relation(1)) {
  const auto cr = verify_cocycle(H_, c_);
  if (!cr.passed()) throw ValidationError("cocycle rejected: " + cr.summary());
  if (alpha_.map().size() != G_.size()) throw ValidationError("automorphism acts on a different groupoid");
  const auto ar = verify_automorphism(G_, alpha_);
  if (!ar.passed()) throw ValidationError("automorphism rejected: " + ar.summary());
  if (c_.modulus > 0 && c_.modulus % alpha_.order() != 0)
    throw PreconditionError("Z/" + std::to_string(c_.modulus) + "-valued cocycle needs alpha^" +
                            std::to_string(c_.modulus) + " = id; alpha has order " + std::to_string(alpha_.order()));

  const std::size_t n = H_.size() * G_.size();
  std::vector<std::string> labels(n);
  for (ElementId x = 0; x < n; ++x) {
    const auto [h, g] = split(x);
    labels[x] = "(" + H_.label(h) + ", " + G_.label(g) + ")";
  }
  product_ = FiniteGroupoid::tabulate(
      n,
      [&](ElementId x) {
        const auto [h, g] = split(x);
        return element(H_.range(h), G_.range(g));
      },
      [&](ElementId x) {
        const auto [h, g] = split(x);
        return element(H_.source(h), alpha_.apply(G_.source(g), c_(h)));
      },
      [&](ElementId x) {
        const auto [h, g] = split(x);
        return element(H_.inverse(h), alpha_.apply(G_.inverse(g), c_(h)));
      },
      [&](ElementId x, ElementId y) {
        const auto [h1, g1] = split(x);
        const auto [h2, g2] = split(y);
        return element(H_.compose(h1, h2), G_.compose(g1, alpha_.apply(g2, -c_(h1))));
      },
      std::move(labels));
}

PrincipalityAnalysis analyze_principality(const TwistedProduct& t) {
  const auto& H = t.H();
  const auto& G = t.G();
  const auto& c = t.cocycle();
  PrincipalityAnalysis a;
  a.g_principal = is_principal(G);
  std::set<std::int64_t> degrees;
  for (ElementId h = 0; h < H.size(); ++h)
    if (!H.is_unit(h) && H.range(h) == H.source(h)) degrees.insert(c(h));
  a.isotropy_degrees.assign(degrees.begin(), degrees.end());

  if (!a.g_principal) {
    for (ElementId g = 0; g < G.size() && !a.exhibit; ++g)
      if (!G.is_unit(g) && G.range(g) == G.source(g)) a.exhibit = t.element(H.units().front(), g);
  }
  const auto idx = orbit_index(G);
  for (std::int64_t l : a.isotropy_degrees) {
    for (ElementId x : G.units())
      if (idx[t.alpha().apply(x, l)] == idx[x]) {
        a.collision = {x, l};
        break;
      }
    if (a.collision) break;
  }
  if (a.collision && !a.exhibit) {
    const auto [x, l] = *a.collision;
    const std::int64_t target = c.modulus > 0 ? checked::mod(-l, c.modulus) : -l;
    std::optional<ElementId> h0;
    for (ElementId h = 0; h < H.size() && !h0; ++h)
      if (!H.is_unit(h) && H.range(h) == H.source(h) && c(h) == target) h0 = h;
    const ElementId y = t.alpha().apply(x, l);
    std::optional<ElementId> g0;
    for (ElementId g : G.with_range(x))
      if (G.source(g) == y) g0 = g;
    if (!h0 || !g0) throw InternalError("collision without an isotropy exhibit");
    a.exhibit = t.element(*h0, *g0);
  }
  return a;
}

// ---------------------------------------------------------------- G^inf over a finite G

GinfFinite::GinfFinite(FiniteGroupoid G, GroupoidAutomorphism alpha) : G_(std::move(G)), alpha_(std::move(alpha)) {
  const auto ar = verify_automorphism(G_, alpha_);
  if (!ar.passed()) throw ValidationError("automorphism rejected: " + ar.summary());
}

GinfElement GinfFinite::make(GermElement h, ElementId g) const {
  if (g >= G_.size()) throw PreconditionError("no element " + std::to_string(g) + " in G");
  return {canonical(hinf_graph(), h), g};
}

GinfUnit GinfFinite::range(const GinfElement& a) const {
  return {canonical(hinf_graph(), a.h.range()), G_.range(a.g)};
}

GinfUnit GinfFinite::source(const GinfElement& a) const {
  return {canonical(hinf_graph(), a.h.source()), alpha_.apply(G_.source(a.g), a.h.degree())};
}

std::optional<GinfElement> GinfFinite::product(const GinfElement& a, const GinfElement& b) const {
  if (!(source(a) == range(b))) return std::nullopt;
  const auto h = germ_product(hinf_graph(), a.h, b.h);
  if (!h) throw InternalError("germ product undefined on matching units");
  return GinfElement{*h, G_.compose(a.g, alpha_.apply(b.g, -a.h.degree()))};
}

GinfElement GinfFinite::inverse(const GinfElement& a) const {
  return {germ_inverse(a.h), alpha_.apply(G_.inverse(a.g), a.h.degree())};
}

bool GinfFinite::is_unit(const GinfElement& a) const {
  return a.h.degree() == 0 && canonical(hinf_graph(), a.h.range()) == canonical(hinf_graph(), a.h.source()) &&
         G_.is_unit(a.g);
}

std::string GinfFinite::to_string(const GinfElement& a) const {
  return "(" + forge::to_string(hinf_graph(), a.h) + ", " + G_.label(a.g) + ")";
}

GinfElement isotropy_exhibit(const GinfFinite& ginf, ElementId g0, std::int64_t l) {
  const auto& rose = hinf_graph();
  const PathWord power = hinf_path(std::vector<EdgeId>(static_cast<std::size_t>(l < 0 ? -l : l), 0));
  const PathWord v = hinf_vertex();
  const GermElement h0 = l >= 0 ? make_germ(rose, v, power, PeriodicTail{{0}}) : make_germ(rose, power, v, PeriodicTail{{0}});
  return ginf.make(h0, g0);
}

// ---------------------------------------------------------------- (wfc)

bool WfcCertificate::well_formed() const {
  const bool has_cert = !witnesses.empty();
  const bool has_ce = counterexample.has_value();
  switch (verdict) {
    case Decision::Yes:
      return has_cert && !has_ce;
    case Decision::No:
      return has_ce && !has_cert;
    case Decision::Unknown:
      return !has_ce && !has_cert;
  }
  return false;
}

std::string to_string(WfcWitnessKind k) {
  switch (k) {
    case WfcWitnessKind::Exhaustive:
      return "exhaustive";
    case WfcWitnessKind::Growth:
      return "growth";
    case WfcWitnessKind::Periodic:
      return "periodic";
    case WfcWitnessKind::OrderBound:
      return "order-bound";
  }
  return "?";
}

WfcCertificate check_wfc(const FiniteGroupoid& G, const GroupoidAutomorphism& alpha, std::int64_t L) {
  if (L < 1) throw PreconditionError("shift bound L must be positive");
  WfcCertificate cert;
  cert.lbound = L;
  const auto idx = orbit_index(G);
  for (std::int64_t l = 1; l <= L; ++l) {
    for (ElementId x : G.units()) {
      const ElementId y = alpha.apply(x, l);
      if (idx[y] != idx[x]) continue;
      WfcCounterexample ce;
      ce.l = l;
      ce.unit = x;
      for (ElementId g : G.with_range(x))
        if (G.source(g) == y) ce.arrow = g;
      ce.description = "[" + G.label(x) + "] = [alpha^" + std::to_string(l) + "(" + G.label(x) + ")] via " +
                       G.label(*ce.arrow);
      cert.witnesses.clear();
      cert.counterexample = ce;
      cert.verdict = Decision::No;
      return cert;
    }
    cert.witnesses.push_back({l, WfcWitnessKind::Exhaustive, 0, "alpha^l(x) outside [x] for every unit x"});
  }
  cert.verdict = Decision::Yes;
  cert.note = "exhaustive over all units for 0 < |l| <= " + std::to_string(L) +
              " (l and -l are equivalent: [x] = [alpha^l x] iff [y] = [alpha^-l y] with y = alpha^l x)";
  return cert;
}

namespace {

std::int64_t min_nonzero(const IntMatrix& m) {
  std::int64_t best = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && (best == 0 || m(i, j) < best)) best = m(i, j);
  return best;
}

// Levels of the periodic block with the state graph restricted to pairs whose
// multiplicity divides l. Returns one period of a fixed path when a cycle exists.
std::optional<std::vector<EdgeId>> periodic_fixed_cycle(const BratteliDiagram& d, std::int64_t l) {
  const std::size_t r = *d.repeat_from();
  const std::size_t N = d.horizon();
  // states (q, i) for q in [r, N)
  std::vector<std::size_t> base(N - r + 1, 0);
  for (std::size_t q = r; q < N; ++q) base[q - r + 1] = base[q - r] + d.size(q);
  const std::size_t total = base.back();
  const auto state_of = [&](std::size_t q, std::size_t i) { return base[q - r] + i; };
  std::vector<std::pair<std::size_t, std::size_t>> where(total);
  for (std::size_t q = r; q < N; ++q)
    for (std::size_t i = 0; i < d.size(q); ++i) where[state_of(q, i)] = {q, i};
  const auto next = [&](std::size_t s) {
    const auto [q, i] = where[s];
    const IntMatrix& k = d.multiplicity(q);
    const std::size_t q2 = q + 1 < N ? q + 1 : r;
    std::vector<std::size_t> out;
    for (Eigen::Index j = 0; j < k.cols(); ++j)
      if (k(static_cast<Eigen::Index>(i), j) != 0 && l % k(static_cast<Eigen::Index>(i), j) == 0)
        out.push_back(state_of(q2, static_cast<std::size_t>(j)));
    return out;
  };
  // iterative DFS with colors
  std::vector<int> color(total, 0);
  std::vector<std::size_t> parent(total, total);
  for (std::size_t root = 0; root < total; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> stack;
    stack.push_back({root, next(root)});
    color[root] = 1;
    while (!stack.empty()) {
      auto& [s, succ] = stack.back();
      if (succ.empty()) {
        color[s] = 2;
        stack.pop_back();
        continue;
      }
      const std::size_t t = succ.back();
      succ.pop_back();
      if (color[t] == 1) {
        // cycle t -> ... -> s -> t; collect states in order
        std::vector<std::size_t> cycle;
        for (auto it = stack.begin(); it != stack.end(); ++it)
          if (it->first == t) {
            for (auto jt = it; jt != stack.end(); ++jt) cycle.push_back(jt->first);
            break;
          }
        // realize at actual levels starting from where[t].first
        std::vector<EdgeId> period;
        std::size_t level = where[cycle.front()].first;
        for (std::size_t p = 0; p < cycle.size(); ++p) {
          const auto from = where[cycle[p]];
          const auto to = where[cycle[(p + 1) % cycle.size()]];
          period.push_back(d.edge(level, from.second, to.second, 0));
          ++level;
        }
        return period;
      }
      if (color[t] == 0) {
        color[t] = 1;
        parent[t] = s;
        stack.push_back({t, next(t)});
      }
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> growth_level(const BratteliDiagram& d, std::size_t D, std::int64_t l) {
  std::optional<std::size_t> p;
  for (std::size_t t = D; t-- > 0;) {
    if (min_nonzero(d.multiplicity(t)) <= l) break;
    p = t;
  }
  return p;
}

}  // namespace

WfcCertificate check_wfc(const BratteliDiagram& d, std::size_t D, std::int64_t L) {
  if (L < 1) throw PreconditionError("shift bound L must be positive");
  if (D < 1) throw PreconditionError("depth D must be positive");
  if (!d.is_infinite() && d.horizon() < D)
    throw HorizonError("diagram horizon " + std::to_string(d.horizon()) + " is below depth " + std::to_string(D));
  WfcCertificate cert;
  cert.depth = D;
  cert.lbound = L;
  for (std::int64_t l = 1; l <= L; ++l) {
    if (d.is_infinite()) {
      if (auto period = periodic_fixed_cycle(d, l)) {
        WfcCounterexample ce;
        ce.l = l;
        ce.period = *period;
        std::string path;
        for (EdgeId e : ce.period) path += (path.empty() ? "" : ".") + d.edge_name(e);
        ce.description = "x = (" + path + ")... repeated with the period of the diagram; alpha^" +
                         std::to_string(l) + " fixes every edge, so [x] = [alpha^l(x)]";
        cert.witnesses.clear();
        cert.counterexample = ce;
        cert.verdict = Decision::No;
        return cert;
      }
      cert.witnesses.push_back({l, WfcWitnessKind::Periodic, *d.repeat_from(),
                                "no cycle of the periodic block uses only pairs with k_vw dividing l"});
      continue;
    }
    const auto p = growth_level(d, D, l);
    if (!p) {
      cert.witnesses.clear();
      cert.verdict = Decision::Unknown;
      cert.note = "no level p < " + std::to_string(D) + " with every multiplicity at levels p.." +
                  std::to_string(D - 1) + " above " + std::to_string(l) + "; increase D or telescope further";
      return cert;
    }
    cert.witnesses.push_back({l, WfcWitnessKind::Growth, *p,
                              "every nonzero k_vw at levels " + std::to_string(*p) + ".." + std::to_string(D - 1) +
                                  " exceeds " + std::to_string(l) + ", so k_vw does not divide l there"});
  }
  cert.verdict = Decision::Yes;
  cert.note = d.is_infinite() ? "exact: every infinite path eventually runs through the periodic block"
                              : "bounded: rules out alpha^l-fixed paths through the checked levels";
  return cert;
}

bool verify_counterexample(const FiniteGroupoid& G, const GroupoidAutomorphism& alpha, const WfcCounterexample& ce) {
  if (!ce.unit || !ce.arrow || ce.l == 0) return false;
  if (!G.is_unit(*ce.unit) || *ce.arrow >= G.size()) return false;
  return G.range(*ce.arrow) == *ce.unit && G.source(*ce.arrow) == alpha.apply(*ce.unit, ce.l);
}

bool verify_counterexample(const BratteliDiagram& d, const WfcCounterexample& ce) {
  if (ce.period.empty() || ce.l == 0 || !d.repeat_from()) return false;
  const std::size_t r = *d.repeat_from();
  const std::size_t period_len = d.horizon() - r;
  const auto alpha = edge_cycle_automorphism(d);
  std::vector<BratteliEdge> info;
  for (EdgeId e : ce.period) info.push_back(d.edge_info(e));
  if (info.front().level < r || ce.period.size() % period_len != 0) return false;
  for (std::size_t i = 0; i < info.size(); ++i) {
    if (alpha.edge(ce.period[i], ce.l) != ce.period[i]) return false;
    const auto& next = info[(i + 1) % info.size()];
    if (info[i].source != next.range) return false;
    if (i + 1 < info.size() && next.level != info[i].level + 1) return false;
  }
  return true;
}

ValidationReport reverify(const BratteliDiagram& d, const WfcCertificate& cert) {
  ValidationReport report;
  if (!cert.well_formed()) report.add("certificate xor counterexample", "verdict " + std::string(to_string(cert.verdict)));
  if (cert.counterexample && !verify_counterexample(d, *cert.counterexample))
    report.add("counterexample path is alpha^l-fixed", "l = " + std::to_string(cert.counterexample->l));
  for (const auto& w : cert.witnesses) {
    const std::string where = "l = " + std::to_string(w.l);
    switch (w.kind) {
      case WfcWitnessKind::Growth:
        for (std::size_t t = w.level; t < cert.depth; ++t)
          if (min_nonzero(d.multiplicity(t)) <= w.l) report.add("multiplicities exceed l", where);
        break;
      case WfcWitnessKind::Periodic:
        if (!d.repeat_from() || periodic_fixed_cycle(d, w.l)) report.add("no fixed cycle in the periodic block", where);
        break;
      default:
        report.add("witness kind applies to Bratteli diagrams", where);
    }
  }
  return report;
}

// ---------------------------------------------------------------- (lc)

bool LcWitness::all_verified() const {
  return std::all_of(entries.begin(), entries.end(), [](const LcEntry& e) { return e.verified && e.l >= 1; });
}

LcWitness check_lc(const FiniteGroupoid& G, const GroupoidAutomorphism& alpha,
                   const std::vector<std::vector<ElementId>>& basis) {
  LcWitness out;
  for (auto V : basis) {
    std::sort(V.begin(), V.end());
    for (ElementId u : V)
      if (!G.is_unit(u)) throw PreconditionError("basis element contains the non-unit " + G.label(u));
    LcEntry e{set_name(G, V)};
    for (std::int64_t l = 1; l <= alpha.order(); ++l) {
      const bool inside = std::all_of(V.begin(), V.end(), [&](ElementId u) {
        return std::binary_search(V.begin(), V.end(), alpha.apply(u, -l));
      });
      if (inside) {
        e.l = l;
        e.verified = true;
        break;
      }
    }
    if (!e.verified) throw InternalError("alpha^-order(V) = V must hold");
    out.entries.push_back(e);
  }
  return out;
}

LcWitness check_lc(const Graph& g, const SymbolicAutomorphism& alpha, const std::vector<PathWord>& basis,
                   std::int64_t cap) {
  LcWitness out;
  for (const auto& mu : basis) {
    const Cylinder V = make_cylinder(g, mu);
    LcEntry e{to_string(g, V)};
    for (std::int64_t l = 1; l <= cap; ++l)
      if (alpha.apply(mu, -l) == mu) {
        e.l = l;
        e.verified = contains(g, V, alpha.apply(V, -l));
        break;
      }
    if (e.l == 0) throw InternalError("orbit of " + to_string(g, mu) + " exceeds " + std::to_string(cap));
    out.entries.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------- backends

FiniteGBackend::Set FiniteGBackend::apply(const Set& a, std::int64_t k) const {
  Set out;
  for (ElementId x : a) out.push_back(alpha_->apply(x, k));
  std::sort(out.begin(), out.end());
  return out;
}

FiniteGBackend::Set FiniteGBackend::product(const Set& a, const Set& b) const {
  std::set<ElementId> out;
  for (ElementId x : a)
    for (ElementId y : b)
      if (auto xy = G_->try_compose(x, y)) out.insert(*xy);
  return {out.begin(), out.end()};
}

FiniteGBackend::Set FiniteGBackend::inverse(const Set& a) const {
  Set out;
  for (ElementId x : a) out.push_back(G_->inverse(x));
  std::sort(out.begin(), out.end());
  return out;
}

FiniteGBackend::Set FiniteGBackend::range(const Set& a) const {
  std::set<ElementId> out;
  for (ElementId x : a) out.insert(G_->range(x));
  return {out.begin(), out.end()};
}

FiniteGBackend::Set FiniteGBackend::source(const Set& a) const {
  std::set<ElementId> out;
  for (ElementId x : a) out.insert(G_->source(x));
  return {out.begin(), out.end()};
}

bool FiniteGBackend::subset(const Set& a, const Set& b) const {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string FiniteGBackend::describe(const Set& a) const { return set_name(*G_, a); }

GraphGBackend::Set GraphGBackend::range(const Set& a) const {
  Set out;
  for (const auto& t : a.terms) out = disjoint_union(*g_, out, {{unit_bisection(range_set(t))}});
  return out;
}

GraphGBackend::Set GraphGBackend::source(const Set& a) const {
  Set out;
  for (const auto& t : a.terms) out = disjoint_union(*g_, out, {{unit_bisection(source_set(t))}});
  return out;
}

BasicBisection hinf_contracting_bisection(const Cylinder& w) {
  const auto& rose = hinf_graph();
  const PathWord lambda = find_cylinder_inside(rose, w);
  return make_bisection(rose, concat(lambda, hinf_path({1})), lambda);
}

// ---------------------------------------------------------------- minimality and stabilization

Verdict minimality_verdict(const FiniteGroupoid& G, const GroupoidAutomorphism& alpha) {
  const auto idx = orbit_index(G);
  const std::size_t orbit_count = orbits(G).size();
  for (ElementId y : G.units()) {
    std::set<std::size_t> hit;
    for (std::int64_t n = 0; n < alpha.order(); ++n) hit.insert(idx[alpha.apply(y, -n)]);
    if (hit.size() != orbit_count)
      return Verdict::no("the union of alpha^n([" + G.label(y) + "]), n <= 0, meets " + std::to_string(hit.size()) +
                         " of " + std::to_string(orbit_count) + " orbits");
  }
  return Verdict::yes("for every unit y the union of alpha^n([y]), n <= 0, is the whole unit space");
}

Verdict minimality_verdict(const BratteliDiagram& d, std::size_t D) {
  if (!d.is_infinite() && d.horizon() < D)
    throw HorizonError("diagram horizon " + std::to_string(d.horizon()) + " is below depth " + std::to_string(D));
  // reach[n] = boolean path pattern from level n to the current level m
  for (std::size_t n = 0; n < D; ++n) {
    std::vector<std::vector<char>> reach(d.size(n), std::vector<char>(d.size(n), 0));
    for (std::size_t i = 0; i < d.size(n); ++i) reach[i][i] = 1;
    bool full = false;
    for (std::size_t m = n; m < D && !full; ++m) {
      const IntMatrix& k = d.multiplicity(m);
      std::vector<std::vector<char>> next(d.size(n), std::vector<char>(d.size(m + 1), 0));
      for (std::size_t i = 0; i < d.size(n); ++i)
        for (std::size_t v = 0; v < d.size(m); ++v)
          if (reach[i][v])
            for (std::size_t w = 0; w < d.size(m + 1); ++w)
              if (k(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w)) != 0) next[i][w] = 1;
      reach = std::move(next);
      full = std::all_of(reach.begin(), reach.end(),
                         [](const std::vector<char>& row) { return std::all_of(row.begin(), row.end(), [](char c) { return c != 0; }); });
    }
    if (!full)
      return Verdict::unknown("level " + std::to_string(n) + " does not reach every vertex of a level <= " +
                              std::to_string(D));
  }
  return Verdict::yes("cofinal through depth " + std::to_string(D) +
                      ": every level n < D reaches every vertex of some level m <= D");
}

GroupoidAutomorphism stabilize(const GroupoidAutomorphism& alpha, std::size_t N) {
  const std::size_t w = 2 * N + 1;
  const std::size_t n = alpha.map().size();
  std::vector<ElementId> map(n * w * w);
  for (ElementId g = 0; g < n; ++g)
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < w; ++j) map[(g * w + i) * w + j] = (alpha(g) * w + i) * w + j;
  return GroupoidAutomorphism(std::move(map));
}

}  // namespace forge
