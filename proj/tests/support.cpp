#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace forge::testing {

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

BlockGroupoid random_block_groupoid(Rng& rng, std::size_t max_elements, bool principal_only) {
  const std::vector<FiniteGroup> groups = principal_only
                                              ? std::vector<FiniteGroup>{cyclic_group(1)}
                                              : std::vector<FiniteGroup>{cyclic_group(1), cyclic_group(2),
                                                                         cyclic_group(3), symmetric_group_3()};
  std::vector<TransitiveBlock> blocks;
  std::size_t total = 0;
  const std::size_t count = pick(rng, 1, 3);
  for (std::size_t b = 0; b < count; ++b) {
    TransitiveBlock shape{1, cyclic_group(1)};
    if (!blocks.empty() && pick(rng, 0, 2) == 0) {
      shape = blocks.back();
    } else {
      shape = {pick(rng, 1, 3), groups[pick(rng, 0, groups.size() - 1)]};
    }
    while (total + shape.size() > max_elements && shape.size() > 1) {
      if (shape.group.order() > 1)
        shape.group = cyclic_group(1);
      else
        --shape.points;
    }
    if (total + shape.size() > max_elements) break;
    total += shape.size();
    blocks.push_back(shape);
  }
  if (blocks.empty()) blocks.push_back({1, cyclic_group(1)});
  return BlockGroupoid(std::move(blocks));
}

GroupoidAutomorphism random_block_automorphism(Rng& rng, const BlockGroupoid& g) {
  const auto& blocks = g.blocks();
  BlockGroupoid::AutomorphismData d;
  d.block_perm.resize(blocks.size());
  std::map<std::pair<std::size_t, std::string>, std::vector<std::size_t>> classes;
  for (std::size_t b = 0; b < blocks.size(); ++b) classes[{blocks[b].points, blocks[b].group.name}].push_back(b);
  for (auto& [shape, members] : classes) {
    auto image = members;
    std::shuffle(image.begin(), image.end(), rng);
    for (std::size_t i = 0; i < members.size(); ++i) d.block_perm[members[i]] = image[i];
  }
  for (const auto& b : blocks) {
    d.point_perm.push_back(random_permutation(rng, b.points));
    const auto auts = group_automorphisms(b.group);
    d.group_aut.push_back(auts[pick(rng, 0, auts.size() - 1)]);
    std::vector<std::size_t> gauge(b.points);
    for (auto& x : gauge) x = pick(rng, 0, b.group.order() - 1);
    d.gauge.push_back(gauge);
  }
  return g.automorphism(d);
}

Cocycle random_coboundary(Rng& rng, const BlockGroupoid& g, std::int64_t spread) {
  std::vector<std::vector<std::int64_t>> potential;
  for (const auto& b : g.blocks()) {
    std::vector<std::int64_t> p(b.points);
    for (auto& x : p) x = pick_int(rng, -spread, spread);
    potential.push_back(p);
  }
  return g.coboundary(potential);
}

TwistedInstance random_twisted_instance(Rng& rng, std::size_t max_elements) {
  auto H = random_block_groupoid(rng, max_elements);
  auto G = random_block_groupoid(rng, max_elements, pick(rng, 0, 1) == 0);
  auto alpha = random_block_automorphism(rng, G);
  if (pick(rng, 0, 1) == 0) {
    auto c = random_coboundary(rng, H);
    return {std::move(H), std::move(c), std::move(G), std::move(alpha)};
  }
  const std::int64_t modulus = alpha.order() * static_cast<std::int64_t>(pick(rng, 1, 2));
  std::vector<std::vector<std::int64_t>> potential;
  std::vector<std::int64_t> step;
  for (const auto& b : H.blocks()) {
    std::vector<std::int64_t> p(b.points);
    for (auto& x : p) x = pick_int(rng, 0, modulus - 1);
    potential.push_back(p);
    const auto m = static_cast<std::int64_t>(b.group.order());
    const bool cyclic = b.group.name == "Z/" + std::to_string(m);
    step.push_back(cyclic ? pick_int(rng, 0, m) * (modulus / std::gcd(modulus, m)) : 0);
  }
  auto c = H.cyclic_cocycle(potential, step, modulus);
  return {std::move(H), std::move(c), std::move(G), std::move(alpha)};
}

// ---------------------------------------------------------------- windows

std::vector<std::vector<EdgeId>> WindowOracle::words(std::size_t length) const {
  std::vector<std::vector<EdgeId>> out{{}};
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<std::vector<EdgeId>> next;
    for (const auto& w : out)
      for (EdgeId e = 0; e < alphabet_; ++e) {
        next.push_back(w);
        next.back().push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

namespace {

std::vector<EdgeId> cat(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  std::vector<EdgeId> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

WindowSet WindowOracle::expand(const BasicBisection& b, Side side, std::size_t depth) const {
  const std::size_t base = side == Side::Range ? b.alpha.length() : b.beta.length();
  if (depth < base || (depth == base && !b.excluded.empty())) throw PreconditionError("window depth too small");
  const bool finite_units = !g_.finite_receivers(0);
  WindowSet out;
  for (std::size_t len = 0; len <= depth - base; ++len) {
    if (len < depth - base && !finite_units) continue;
    for (const auto& w : words(len)) {
      if (!w.empty() && std::binary_search(b.excluded.begin(), b.excluded.end(), w.front())) continue;
      out.insert({cat(b.alpha.edges, w), cat(b.beta.edges, w), len < depth - base});
    }
  }
  return out;
}

WindowSet WindowOracle::refine(const WindowSet& s, std::size_t depth) const {
  const bool finite_units = !g_.finite_receivers(0);
  WindowSet out;
  for (const auto& w : s) {
    if (w.finite) {
      out.insert(w);
      continue;
    }
    if (w.a.size() > depth) throw PreconditionError("cannot refine to a smaller depth");
    for (std::size_t len = 0; len <= depth - w.a.size(); ++len) {
      if (len < depth - w.a.size() && !finite_units) continue;
      for (const auto& u : words(len)) out.insert({cat(w.a, u), cat(w.b, u), len < depth - w.a.size()});
    }
  }
  return out;
}

WindowSet WindowOracle::product(const BasicBisection& x, const BasicBisection& y) const {
  const std::size_t k = std::max(x.beta.length(), y.alpha.length()) + 1;
  const WindowSet left = expand(x, Side::Source, k);
  const WindowSet right = expand(y, Side::Range, k);
  std::map<std::pair<std::vector<EdgeId>, bool>, std::vector<const Window*>> by_range;
  for (const auto& w : right) by_range[{w.a, w.finite}].push_back(&w);
  WindowSet out;
  for (const auto& w : left) {
    const auto it = by_range.find({w.b, w.finite});
    if (it == by_range.end()) continue;
    for (const Window* v : it->second) out.insert({w.a, v->b, w.finite});
  }
  return out;
}

WindowSet WindowOracle::as_windows(const BasicBisection& b) const {
  return expand(b, Side::Range, b.alpha.length() + 1);
}

WindowSet WindowOracle::sum(const BisectionSum& s) const {
  WindowSet out;
  for (const auto& t : s.terms) {
    const auto w = as_windows(t);
    out.insert(w.begin(), w.end());
  }
  return out;
}

std::size_t WindowOracle::common_depth(const WindowSet& x, const WindowSet& y) const {
  std::size_t d = 0;
  for (const auto* s : {&x, &y})
    for (const auto& w : *s) d = std::max(d, w.finite ? w.a.size() + 1 : w.a.size());
  return d;
}

bool WindowOracle::equal(const WindowSet& x, const WindowSet& y) const {
  const std::size_t d = common_depth(x, y);
  return refine(x, d) == refine(y, d);
}

bool WindowOracle::subset(const WindowSet& x, const WindowSet& y) const {
  const std::size_t d = common_depth(x, y);
  const auto rx = refine(x, d);
  const auto ry = refine(y, d);
  return std::includes(ry.begin(), ry.end(), rx.begin(), rx.end());
}

WindowSet WindowOracle::intersect(const WindowSet& x, const WindowSet& y) const {
  const std::size_t d = common_depth(x, y);
  const auto rx = refine(x, d);
  const auto ry = refine(y, d);
  WindowSet out;
  std::set_intersection(rx.begin(), rx.end(), ry.begin(), ry.end(), std::inserter(out, out.end()));
  return out;
}

std::vector<EdgeId> random_word(Rng& rng, std::size_t alphabet, std::size_t max_length) {
  std::vector<EdgeId> w(pick(rng, 0, max_length));
  for (auto& e : w) e = pick(rng, 0, alphabet - 1);
  return w;
}

BasicBisection random_bisection(Rng& rng, std::size_t alphabet, std::size_t max_length) {
  BasicBisection b{hinf_path(random_word(rng, alphabet, max_length)), hinf_path(random_word(rng, alphabet, max_length)),
                   {}};
  for (EdgeId e = 0; e < alphabet; ++e)
    if (pick(rng, 0, 2) == 0) b.excluded.push_back(e);
  return b;
}

std::vector<BasicBisection> all_bisections(std::size_t alphabet, std::size_t max_length) {
  std::vector<std::vector<EdgeId>> all_words{{}};
  std::vector<std::vector<EdgeId>> layer{{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<std::vector<EdgeId>> next;
    for (const auto& w : layer)
      for (EdgeId e = 0; e < alphabet; ++e) {
        next.push_back(w);
        next.back().push_back(e);
      }
    all_words.insert(all_words.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::vector<BasicBisection> out;
  for (const auto& a : all_words)
    for (const auto& b : all_words)
      for (unsigned mask = 0; mask < (1u << alphabet); ++mask) {
        BasicBisection x{hinf_path(a), hinf_path(b), {}};
        for (EdgeId e = 0; e < alphabet; ++e)
          if (mask & (1u << e)) x.excluded.push_back(e);
        out.push_back(std::move(x));
      }
  return out;
}

Rank2Data random_rank2_data(Rng& rng, std::size_t gaps) {
  Rank2Data d;
  d.orientation = pick(rng, 0, 1) ? 1 : -1;
  std::vector<std::size_t> c;
  for (std::size_t n = 0; n <= gaps; ++n) {
    c.push_back(pick(rng, 1, 3));
    IntMatrix T = IntMatrix::Zero(c.back(), c.back());
    for (std::size_t j = 0; j < c.back(); ++j) T(j, j) = pick_int(rng, 1, 4);
    d.T.push_back(T);
  }
  for (std::size_t n = 0; n < gaps; ++n) {
    IntMatrix A = IntMatrix::Zero(c[n + 1], c[n]), B = A;
    for (std::size_t i = 0; i < c[n + 1]; ++i)
      for (std::size_t j = 0; j < c[n]; ++j) {
        if (pick(rng, 0, 3) == 0 && i != j) continue;
        const std::int64_t Tn = d.T[n](j, j), Tm = d.T[n + 1](i, i);
        A(i, j) = Tm / std::gcd(Tm, Tn) * pick_int(rng, 1, 2);
      }
    // keep A proper
    for (std::size_t i = 0; i < c[n + 1]; ++i)
      if (A.row(i).isZero()) A(i, 0) = d.T[n + 1](i, i) / std::gcd(d.T[n + 1](i, i), d.T[n](0, 0));
    for (std::size_t j = 0; j < c[n]; ++j)
      if (A.col(j).isZero()) A(0, j) = d.T[n + 1](0, 0) / std::gcd(d.T[n + 1](0, 0), d.T[n](j, j));
    for (std::size_t i = 0; i < c[n + 1]; ++i)
      for (std::size_t j = 0; j < c[n]; ++j) B(i, j) = A(i, j) * d.T[n](j, j) / d.T[n + 1](i, i);
    d.A.push_back(A);
    d.B.push_back(B);
  }
  return d;
}


}  // namespace forge::testing
