#include <doctest.h>

#include <set>

#include "forge/groupoid_core.hpp"
#include "support.hpp"

using namespace forge;
using forge::testing::Rng;

TEST_CASE("full equivalence relation passes the axioms") {
  const auto g = full_relation(3);
  CHECK(g.size() == 9);
  CHECK(verify_groupoid_axioms(g).passed());
  CHECK(is_principal(g));
  CHECK(is_minimal(g));
  for (auto u : g.units()) {
    CHECK(isotropy_group(g, u) == std::vector<ElementId>{u});
    CHECK(orbit(g, u).size() == 3);
  }
}

TEST_CASE("a corrupted associativity cell is named") {
  const auto g = full_relation(3);
  // (0,1)(1,2) should be (0,2); point it at (0,0) instead, which has the right range only
  const BlockGroupoid b({{3, cyclic_group(1)}});
  const auto x = b.element(0, 0, 0, 1), y = b.element(0, 1, 0, 2), wrong = b.element(0, 0, 0, 0);
  const auto bad = g.with_corrupted_entry(x, y, static_cast<std::int64_t>(wrong));
  const auto report = verify_groupoid_axioms(bad);
  CHECK_FALSE(report.passed());
  CHECK(report.mentions("s(gh) = s(h)"));

  // a corruption that keeps ranges and sources but breaks associativity
  const BlockGroupoid z3({{1, cyclic_group(3)}});
  const auto one = z3.element(0, 0, 1, 0), two = z3.element(0, 0, 2, 0), zero = z3.element(0, 0, 0, 0);
  const auto bad2 = z3.groupoid().with_corrupted_entry(one, one, static_cast<std::int64_t>(one));
  const auto r2 = verify_groupoid_axioms(bad2);
  CHECK(r2.mentions("associativity (gh)k = g(hk)"));
  bool named = false;
  for (const auto& v : r2.violations)
    named = named || (v.invariant == "associativity (gh)k = g(hk)" && v.location.find("(0,1,0)") != std::string::npos);
  CHECK(named);
  (void)two;
  (void)zero;
}

TEST_CASE("group bundle isotropy") {
  const BlockGroupoid bundle({{1, cyclic_group(2)}, {1, cyclic_group(1)}});
  const auto& g = bundle.groupoid();
  CHECK(verify_groupoid_axioms(g).passed());
  CHECK(isotropy_group(g, bundle.element(0, 0, 0, 0)).size() == 2);
  CHECK(isotropy_group(g, bundle.element(1, 0, 0, 0)).size() == 1);
  CHECK_FALSE(is_principal(g));
  CHECK_THROWS_AS(isotropy_group(g, bundle.element(0, 0, 1, 0)), PreconditionError);
  CHECK_THROWS_AS(orbit(g, bundle.element(0, 0, 1, 0)), PreconditionError);
}

TEST_CASE("orbits of a disjoint union") {
  const BlockGroupoid two({{2, cyclic_group(1)}, {3, cyclic_group(1)}});
  const auto& g = two.groupoid();
  CHECK(orbit(g, two.element(0, 1, 0, 1)) ==
        std::vector<ElementId>{two.element(0, 0, 0, 0), two.element(0, 1, 0, 1)});
  CHECK(orbit(g, two.element(1, 0, 0, 0)).size() == 3);
  CHECK_FALSE(is_minimal(g));
}

TEST_CASE("product with the truncated full relation") {
  Rng rng(5);
  for (int round = 0; round < 20; ++round) {
    const auto b = forge::testing::random_block_groupoid(rng, 12, round % 2 == 0);
    const std::size_t N = forge::testing::pick(rng, 0, 2);
    const auto p = product_with_full_relation(b.groupoid(), N);
    CHECK(p.size() == b.size() * (2 * N + 1) * (2 * N + 1));
    CHECK(verify_groupoid_axioms(p).passed());
    if (is_principal(b.groupoid())) CHECK(is_principal(p));
    CHECK(is_principal(p) == is_principal(b.groupoid()));
  }
  // orbit of the truncated K alone is the whole unit set
  const auto k = product_with_full_relation(full_relation(1), 2);
  CHECK(orbit(k, k.units().front()).size() == 5);
}

TEST_CASE("seeded groupoids satisfy the structural invariants") {
  Rng rng(77);
  for (int round = 0; round < 40; ++round) {
    const auto b = forge::testing::random_block_groupoid(rng, 24);
    const auto& g = b.groupoid();
    CHECK(verify_groupoid_axioms(g).passed());
    // inverse is an involution, units are exactly the fixed points of r and s
    std::set<ElementId> units;
    for (ElementId x = 0; x < g.size(); ++x) {
      CHECK(g.inverse(g.inverse(x)) == x);
      if (g.range(x) == x && g.source(x) == x) units.insert(x);
    }
    CHECK(std::vector<ElementId>(units.begin(), units.end()) == g.units());
    // orbits partition the unit space
    std::set<ElementId> covered;
    std::size_t total = 0;
    for (const auto& o : orbits(g)) {
      total += o.size();
      covered.insert(o.begin(), o.end());
    }
    CHECK(total == g.units().size());
    CHECK(covered == units);

    const auto a = forge::testing::random_block_automorphism(rng, b);
    CHECK(verify_automorphism(g, a).passed());
    for (ElementId x = 0; x < g.size(); ++x) CHECK(a.apply(a.apply(x, 3), -3) == x);
    CHECK(a.apply(0, a.order()) == 0);
    const auto c = forge::testing::random_coboundary(rng, b);
    CHECK(verify_cocycle(g, c).passed());
  }
}

TEST_CASE("broken cocycles and automorphisms are caught") {
  const BlockGroupoid b({{2, cyclic_group(1)}});
  const auto& g = b.groupoid();
  Cocycle c{std::vector<std::int64_t>(g.size(), 1)};
  const auto r = verify_cocycle(g, c);
  CHECK(r.mentions("c(u) = 0 on units"));
  CHECK(r.mentions("c(gh) = c(g) + c(h)"));
  // swapping a unit with a non-unit is not an automorphism
  std::vector<ElementId> m(g.size());
  for (ElementId x = 0; x < g.size(); ++x) m[x] = x;
  std::swap(m[b.element(0, 0, 0, 0)], m[b.element(0, 0, 0, 1)]);
  CHECK_FALSE(verify_automorphism(g, GroupoidAutomorphism(m)).passed());
  CHECK_THROWS_AS(GroupoidAutomorphism({0, 0}), ValidationError);
}

TEST_CASE("group automorphism counts") {
  CHECK(group_automorphisms(cyclic_group(3)).size() == 2);
  CHECK(group_automorphisms(cyclic_group(4)).size() == 2);
  CHECK(group_automorphisms(symmetric_group_3()).size() == 6);
  CHECK_FALSE(symmetric_group_3().is_abelian());
}
