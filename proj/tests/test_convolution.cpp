#include <doctest.h>

#include "forge/convolution.hpp"
#include "support.hpp"

using namespace forge;
using forge::testing::pick;
using forge::testing::pick_int;
using forge::testing::Rng;

namespace {

GaussRational random_coeff(Rng& rng) {
  return {Rational(pick_int(rng, -3, 3), pick_int(rng, 1, 2)), Rational(pick_int(rng, -2, 2))};
}

FiniteConv random_function(Rng& rng, const FiniteGroupoid& G, std::size_t terms = 4) {
  FiniteConv f(G);
  for (std::size_t i = 0; i < terms; ++i) f.add(pick(rng, 0, G.size() - 1), random_coeff(rng));
  return f;
}

// Small groupoids with an automorphism, at most 6 elements each.
struct Example {
  std::string name;
  FiniteGroupoid G;
  GroupoidAutomorphism alpha;
};

std::vector<Example> small_examples() {
  std::vector<Example> out;
  {
    const BlockGroupoid z3({{1, cyclic_group(3)}});
    out.push_back({"Z/3, negation", z3.groupoid(), z3.automorphism({{0}, {{0}}, {{0, 2, 1}}, {{0}}})});
  }
  {
    const BlockGroupoid k2({{2, cyclic_group(1)}});
    out.push_back({"K_2, swap", k2.groupoid(), k2.automorphism({{0}, {{1, 0}}, {{0}}, {{0, 0}}})});
  }
  {
    const BlockGroupoid pts(std::vector<TransitiveBlock>(2, {1, cyclic_group(1)}));
    out.push_back({"two points, swap", pts.groupoid(), GroupoidAutomorphism({1, 0})});
  }
  {
    const BlockGroupoid s3({{1, symmetric_group_3()}});
    const auto auts = group_automorphisms(symmetric_group_3());
    out.push_back({"S_3, inner", s3.groupoid(), s3.automorphism({{0}, {{0}}, {auts.back()}, {{0}}})});
  }
  {
    const BlockGroupoid mixed({{1, cyclic_group(2)}, {2, cyclic_group(1)}});
    Rng rng(3);
    out.push_back({"Z/2 + K_2", mixed.groupoid(), forge::testing::random_block_automorphism(rng, mixed)});
  }
  return out;
}

// ---------------------------------------------------------------- pointwise oracle
//
// (x * y)(h'', g'') = sum over the terms 1_U x d_a of x of coeff * y(h^-1 h'', alpha^c(h)(a^-1 g'')),
// where h is the unique element of U with r(h) = r(h''), when there is one.

std::optional<GermElement> element_with_range(const BasicBisection& U, const PathValue& x) {
  const auto& rose = hinf_graph();
  const auto n = U.alpha.length();
  if (x.is_finite() && x.word.length() < n) return std::nullopt;
  if (!(path_prefix(rose, x, n) == U.alpha)) return std::nullopt;
  const PathValue z = shift(rose, x, n);
  if (!(z.is_finite() && z.word.is_vertex())) {
    const EdgeId first = path_prefix(rose, z, 1).edges.front();
    if (std::find(U.excluded.begin(), U.excluded.end(), first) != U.excluded.end()) return std::nullopt;
  }
  return make_germ(rose, concat(U.alpha, z.word), concat(U.beta, z.word), z.tail);
}

GaussRational convolve_at(const SymbolicConv& x, const SymbolicConv& y, const GinfElement& e) {
  const auto& A = x.algebra();
  const auto& G = A.G();
  GaussRational v(0);
  for (const auto& t : x.terms()) {
    if (G.range(t.a) != G.range(e.g)) continue;
    const auto h = element_with_range(t.U, e.h.range());
    if (!h) continue;
    const auto rest = germ_product(hinf_graph(), germ_inverse(*h), e.h);
    REQUIRE(rest);
    const ElementId g2 = A.alpha().apply(G.compose(G.inverse(t.a), e.g), h->degree());
    v += t.coeff * evaluate(y, {*rest, g2});
  }
  return v;
}

std::vector<GinfElement> sample_points(Rng& rng, const GinfAlgebra& A, std::size_t alphabet, std::size_t count) {
  const auto& rose = hinf_graph();
  const std::vector<Tail> tails{PeriodicTail{{0}}, PeriodicTail{{1, 0}}, EndTail{}, PeriodicTail{{alphabet - 1}}};
  std::vector<GinfElement> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto mu = hinf_path(forge::testing::random_word(rng, alphabet, 2));
    const auto nu = hinf_path(forge::testing::random_word(rng, alphabet, 2));
    const auto& tail = tails[pick(rng, 0, tails.size() - 1)];
    out.push_back({make_germ(rose, mu, nu, tail), pick(rng, 0, A.G().size() - 1)});
  }
  return out;
}

SymbolicConv random_symbolic(Rng& rng, const GinfAlgebra& A, std::size_t alphabet, std::size_t terms) {
  SymbolicConv x(A);
  for (std::size_t i = 0; i < terms; ++i)
    x.add({forge::testing::random_bisection(rng, alphabet, 2), pick(rng, 0, A.G().size() - 1), random_coeff(rng)});
  return x;
}

}  // namespace

TEST_CASE("matrix units on the full relation") {
  const BlockGroupoid K({{3, cyclic_group(1)}});
  const auto& G = K.groupoid();
  const auto e = [&](std::size_t i, std::size_t j) { return K.element(0, i, 0, j); };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t w = 0; w < 3; ++w)
        for (std::size_t z = 0; z < 3; ++z) {
          const auto p = convolve(FiniteConv::delta(G, e(i, j)), FiniteConv::delta(G, e(w, z)));
          if (j == w)
            CHECK(p == FiniteConv::delta(G, e(i, z)));
          else
            CHECK(p.is_zero());
        }
  // R_u is the isomorphism onto M_3: d(i,j) -> E_ij in the basis (0,u), (1,u), (2,u)
  for (std::size_t u = 0; u < 3; ++u) {
    const auto fiber = regular_fiber(G, e(u, u));
    REQUIRE(fiber.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const auto R = regular_representation(FiniteConv::delta(G, e(i, j)), e(u, u));
        for (Eigen::Index r = 0; r < 3; ++r)
          for (Eigen::Index c = 0; c < 3; ++c)
            CHECK(R(r, c) == GaussRational(fiber[r] == e(i, u) && fiber[c] == e(j, u) ? 1 : 0));
      }
  }
  CHECK((FiniteConv::delta(G, e(0, 1)) == involution(FiniteConv::delta(G, e(1, 0)))));
}

TEST_CASE("finite convolution is a *-algebra") {
  Rng rng(100);
  for (int round = 0; round < 100; ++round) {
    const auto b = forge::testing::random_block_groupoid(rng, 12);
    const auto& G = b.groupoid();
    const auto x = random_function(rng, G), y = random_function(rng, G), z = random_function(rng, G);
    CHECK(involution(convolve(x, y)) == convolve(involution(y), involution(x)));
    CHECK(convolve(convolve(x, y), z) == convolve(x, convolve(y, z)));
    CHECK(involution(involution(x)) == x);
    CHECK(convolve(FiniteConv::unit(G), x) == x);
    CHECK(convolve(x, FiniteConv::unit(G)) == x);
    const auto xs = involution(x);
    for (const auto& [g, c] : xs.values()) CHECK(c == conj(x(G.inverse(g))));
  }
  const auto g1 = full_relation(2), g2 = full_relation(2);
  CHECK_NOTHROW(convolve(FiniteConv::unit(g1), FiniteConv::unit(g2)));
  CHECK_THROWS_AS(convolve(FiniteConv::unit(g1), FiniteConv::unit(full_relation(3))), PreconditionError);
}

TEST_CASE("regular representations are *-homomorphisms") {
  Rng rng(21);
  for (int round = 0; round < 100; ++round) {
    const auto b = forge::testing::random_block_groupoid(rng, 12);
    const auto& G = b.groupoid();
    const auto x = random_function(rng, G, 6), y = random_function(rng, G, 6);
    for (ElementId u : G.units()) {
      const auto Rx = regular_representation(x, u), Ry = regular_representation(y, u);
      CHECK(regular_representation(convolve(x, y), u) == exact_product(Rx, Ry));
      CHECK(regular_representation(involution(x), u) == adjoint(Rx));
    }
  }
}

TEST_CASE("iota on finite twisted products") {
  Rng rng(612);
  for (int round = 0; round < 100; ++round) {
    const auto inst = forge::testing::random_twisted_instance(rng, 8);
    const TwistedProduct t(inst.H.groupoid(), inst.c, inst.G.groupoid(), inst.alpha);
    const auto f = random_function(rng, t.G()), f2 = random_function(rng, t.G());
    CHECK(iota(t, convolve(f, f2)) == convolve(iota(t, f), iota(t, f2)));
    CHECK(iota(t, involution(f)) == involution(iota(t, f)));
    const auto img = iota(t, f);
    for (const auto& [x, c] : img.values()) CHECK(t.H().is_unit(t.split(x).first));
  }
}

TEST_CASE("composition with powers of alpha") {
  const auto examples = small_examples();
  for (const auto& ex : examples) {
    Rng rng(1);
    const auto f = random_function(rng, ex.G);
    for (std::int64_t k = -2; k <= 2; ++k) {
      const auto fk = compose_automorphism(f, ex.alpha, k);
      for (ElementId g = 0; g < ex.G.size(); ++g) CHECK(fk(g) == f(ex.alpha.apply(g, k)));
    }
  }
}

TEST_CASE("symbolic equality by disjoint refinement") {
  const GinfAlgebra A(full_relation(1), GroupoidAutomorphism::identity(1));
  const auto& rose = hinf_graph();
  const auto whole = unit_bisection(make_cylinder(rose, hinf_vertex()));
  const SymbolicConv one(A, {{whole, 0, 1}});
  const SymbolicConv split(A, {{unit_bisection(make_cylinder(rose, hinf_vertex(), {0})), 0, 1},
                               {unit_bisection(make_cylinder(rose, hinf_path({0}))), 0, 1}});
  CHECK(equal(one, split));
  CHECK_FALSE(equal(one, SymbolicConv(A, {{unit_bisection(make_cylinder(rose, hinf_path({0}))), 0, 1}})));
  const SymbolicConv overlap(A, {{whole, 0, 2}, {unit_bisection(make_cylinder(rose, hinf_path({1}))), 0, -2}});
  CHECK(equal(overlap, SymbolicConv(A, {{unit_bisection(make_cylinder(rose, hinf_vertex(), {1})), 0, 2}})));
  CHECK(is_zero(one - split));
  CHECK_THROWS_AS(regular_representation(one, 0), PreconditionError);
  const GinfAlgebra B(full_relation(1), GroupoidAutomorphism::identity(1));
  CHECK_THROWS_AS(convolve(one, SymbolicConv(B, {{whole, 0, 1}})), PreconditionError);
}

TEST_CASE("symbolic products agree with pointwise convolution") {
  Rng rng(909);
  const auto examples = small_examples();
  for (int round = 0; round < 60; ++round) {
    const auto& ex = examples[round % examples.size()];
    const GinfAlgebra A(ex.G, ex.alpha);
    const auto x = random_symbolic(rng, A, 3, 3), y = random_symbolic(rng, A, 3, 3);
    const auto xy = convolve(x, y);
    for (const auto& e : sample_points(rng, A, 3, 120)) {
      CHECK(evaluate(xy, e) == convolve_at(x, y, e));
      // x*(e) = conj x(e^-1)
      const GinfElement inv{germ_inverse(e.h), ex.alpha.apply(ex.G.inverse(e.g), e.h.degree())};
      CHECK(evaluate(involution(x), e) == conj(evaluate(x, inv)));
    }
    CHECK(equal(involution(xy), convolve(involution(y), involution(x))));
    const auto z = random_symbolic(rng, A, 3, 2);
    CHECK(equal(convolve(xy, z), convolve(x, convolve(y, z))));
    CHECK(equal(canonical(x), x));
  }
}

TEST_CASE("module identities hold exactly on point masses") {
  for (const auto& ex : small_examples()) {
    const GinfAlgebra A(ex.G, ex.alpha);
    const auto& G = A.G();
    INFO(ex.name);
    for (ElementId a = 0; a < G.size(); ++a)
      for (ElementId b = 0; b < G.size(); ++b) {
        const auto f = FiniteConv::delta(G, a), f2 = FiniteConv::delta(G, b);
        const auto fa = compose_automorphism(f, ex.alpha, -1), f2a = compose_automorphism(f2, ex.alpha, -1);
        for (EdgeId i = 0; i <= 3; ++i) {
          for (EdgeId j = 0; j <= 3; ++j) {
            const auto lhs = convolve(involution(generator(A, i, f)), generator(A, j, f2));
            const auto rhs = i == j ? iota(A, convolve(involution(fa), f2a)) : SymbolicConv(A);
            CHECK(equal(lhs, rhs));
          }
          CHECK(equal(convolve(iota(A, f2), generator(A, i, f)), generator(A, i, convolve(f2, f))));
          CHECK(equal(convolve(generator(A, i, f), iota(A, f2)),
                      generator(A, i, convolve(f, compose_automorphism(f2, ex.alpha, 1)))));
        }
      }
  }
}

TEST_CASE("left and right actions commute") {
  Rng rng(31);
  for (const auto& ex : small_examples()) {
    const GinfAlgebra A(ex.G, ex.alpha);
    for (int round = 0; round < 10; ++round) {
      const auto f = random_function(rng, A.G()), f1 = random_function(rng, A.G()), f2 = random_function(rng, A.G());
      const auto x = generator(A, pick(rng, 0, 3), f);
      CHECK(equal(convolve(convolve(iota(A, f1), x), iota(A, f2)), convolve(iota(A, f1), convolve(x, iota(A, f2)))));
    }
  }
  // alpha = id: the right action is plain convolution
  const BlockGroupoid z3({{1, cyclic_group(3)}});
  const GinfAlgebra I(z3.groupoid(), GroupoidAutomorphism::identity(3));
  for (ElementId a = 0; a < 3; ++a)
    for (ElementId b = 0; b < 3; ++b) {
      const auto f = FiniteConv::delta(I.G(), a), f2 = FiniteConv::delta(I.G(), b);
      CHECK(equal(convolve(generator(I, 2, f), iota(I, f2)), generator(I, 2, convolve(f, f2))));
    }
}

TEST_CASE("inner products on the generators") {
  Rng rng(77);
  for (const auto& ex : small_examples()) {
    const GinfAlgebra A(ex.G, ex.alpha);
    const auto& G = A.G();
    // s_i* s_i = 1 and orthogonality
    for (EdgeId i = 0; i <= 3; ++i)
      for (EdgeId j = 0; j <= 3; ++j) {
        const auto ip = module_inner_product(generator(A, i), generator(A, j));
        if (i == j)
          CHECK(ip == FiniteConv::unit(G));
        else
          CHECK(ip.is_zero());
      }
    // Gram matrix of x_1 x f, x_2 x f under every R_u
    const auto f = random_function(rng, G);
    const std::vector<SymbolicConv> xs{generator(A, 1, f), generator(A, 2, f)};
    for (ElementId u : G.units()) {
      const auto n = static_cast<Eigen::Index>(regular_fiber(G, u).size());
      GaussMatrix gram = GaussMatrix::Constant(2 * n, 2 * n, GaussRational(0));
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          gram.block(p * n, q * n, n, n) = regular_representation(module_inner_product(xs[p], xs[q]), u);
      CHECK(gram.block(0, n, n, n) == GaussMatrix::Constant(n, n, GaussRational(0)));
      CHECK(is_hermitian(gram));
      CHECK(is_positive_semidefinite(gram));
    }
  }
  // x_i x f itself is not in the image of iota
  const GinfAlgebra A(full_relation(1), GroupoidAutomorphism::identity(1));
  CHECK_THROWS_AS(iota_inverse(generator(A, 0)), InternalError);
}
