#include <doctest.h>

#include "forge/dimension_groups.hpp"
#include "forge/error.hpp"
#include "support.hpp"

using namespace forge;
using forge::testing::pick;
using forge::testing::pick_int;
using forge::testing::random_rank2_data;
using forge::testing::Rng;

namespace {

IntMatrix m1(std::int64_t x) { return IntMatrix::Constant(1, 1, x); }

DimensionGroupSpec dyadic() { return DimensionGroupSpec({1, 1}, {m1(2)}, 0); }

IntMatrix mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IntMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// plain nested-loop product, independent of checked_product
std::vector<std::int64_t> mat_apply(const IntMatrix& A, const std::vector<std::int64_t>& v) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(A.rows()), 0);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) out[i] += A(i, j) * v[j];
  return out;
}

}  // namespace

TEST_CASE("pushes") {
  const auto s = dyadic();
  const auto a = dg_element(s, 0, {1});
  CHECK(dg_push_to_level(s, a, 0) == a);
  CHECK(dg_push_to_level(s, a, 3) == dg_element(s, 3, {8}));
  CHECK_THROWS_AS(dg_push_to_level(s, dg_push_to_level(s, a, 2), 1), PreconditionError);
  const DimensionGroupSpec finite({1, 1, 1}, {m1(2), m1(3)});
  CHECK_THROWS_AS(dg_push_to_level(finite, dg_element(finite, 0, {1}), 3), HorizonError);
  CHECK_THROWS_AS(dg_element(s, 0, {1, 2}), PreconditionError);
}

TEST_CASE("composite pushes agree with a single push") {
  Rng rng(3);
  for (int round = 0; round < 40; ++round) {
    std::vector<std::size_t> sizes;
    for (int n = 0; n < 6; ++n) sizes.push_back(pick(rng, 1, 3));
    std::vector<IntMatrix> mats;
    for (int n = 0; n < 5; ++n) {
      IntMatrix A(static_cast<Eigen::Index>(sizes[n + 1]), static_cast<Eigen::Index>(sizes[n]));
      for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = pick_int(rng, 0, 3);
      mats.push_back(A);
    }
    const DimensionGroupSpec s(sizes, mats);
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < sizes[0]; ++i) v.push_back(pick_int(rng, -5, 5));
    const auto a = dg_element(s, 0, v);
    const std::size_t m = pick(rng, 0, 5), p = pick(rng, m, 5);
    CHECK(dg_push_to_level(s, dg_push_to_level(s, a, m), p) == dg_push_to_level(s, a, p));
    auto w = v;
    for (std::size_t n = 0; n < p; ++n) w = mat_apply(mats[n], w);
    CHECK(dg_push_to_level(s, a, p) == dg_element(s, p, w));
  }
}

TEST_CASE("dyadic rationals") {
  const auto s = dyadic();
  CHECK(dg_equal(s, dg_element(s, 0, {1}), dg_element(s, 1, {2}), 5).is_yes());
  const auto no = dg_equal(s, dg_element(s, 0, {1}), dg_element(s, 0, {3}), 5);
  CHECK(no.is_no());
  CHECK(no.justification.find("full column rank") != std::string::npos);
  CHECK(dg_is_positive(s, dg_element(s, 0, {1}), 5).is_yes());
  CHECK(dg_is_positive(s, dg_element(s, 0, {-1}), 5).is_no());
  CHECK(dg_is_positive(s, dg_element(s, 0, {0}), 5).is_yes());

  // 50 samples a / 2^n against exact rationals
  Rng rng(11);
  std::vector<DimGroupElement> sample;
  for (int k = 0; k < 50; ++k) sample.push_back(dg_element(s, pick(rng, 0, 5), {pick_int(rng, -12, 12)}));
  auto value = [](const DimGroupElement& x) { return Rational(x.v(0), std::int64_t{1} << x.level); };
  for (const auto& x : sample) {
    const auto pos = dg_is_positive(s, x, 8);
    CHECK(pos.decision == (value(x) >= Rational(0) ? Decision::Yes : Decision::No));
    for (const auto& y : sample) {
      const auto eq = dg_equal(s, x, y, 8);
      CHECK(eq.decision == (value(x) == value(y) ? Decision::Yes : Decision::No));
      // order: x <= y iff y - x positive
      const auto le = dg_is_positive(s, dg_sub(s, y, x), 8);
      CHECK(le.is_yes() == (value(x) <= value(y)));
    }
  }
}

TEST_CASE("kernel of a non-injective map") {
  IntMatrix A0(1, 2);
  A0 << 1, 1;
  const DimensionGroupSpec s({2, 1, 1}, {A0, m1(2)}, 1);
  const auto v = dg_equal(s, dg_element(s, 0, {1, 0}), dg_element(s, 0, {0, 1}), 3);
  CHECK(v.is_yes());
  CHECK(v.justification.find("level 1") != std::string::npos);
  // from level 1 on the maps are injective
  CHECK(dg_equal(s, dg_element(s, 0, {1, 0}), dg_element(s, 0, {0, 2}), 3).is_no());
}

TEST_CASE("positivity after one multiplication") {
  const DimensionGroupSpec s({2, 2}, {mat2(2, 1, 1, 1)}, 0);
  const auto a = dg_element(s, 0, {1, -1});
  const auto v = dg_is_positive(s, a, 4);
  CHECK(v.is_yes());
  CHECK(dg_push_to_level(s, a, 1) == dg_element(s, 1, {1, 0}));
  CHECK(dg_is_positive(s, dg_element(s, 0, {1, -2}), 4).is_no());
}

TEST_CASE("undecided cases stay Unknown") {
  const DimensionGroupSpec finite({1, 1, 1, 1}, {m1(2), m1(2), m1(2)});
  CHECK(dg_equal(finite, dg_element(finite, 0, {1}), dg_element(finite, 0, {3}), 10).is_unknown());
  CHECK(dg_is_positive(finite, dg_element(finite, 0, {-1}), 10).is_unknown());
  const DimensionGroupSpec rank1({2, 2}, {mat2(1, 1, 1, 1)}, 0);
  CHECK(dg_equal(rank1, dg_element(rank1, 0, {1, 0}), dg_element(rank1, 0, {0, 1}), 4).is_yes());
  CHECK(dg_equal(rank1, dg_element(rank1, 0, {1, 0}), dg_element(rank1, 0, {0, 2}), 4).is_unknown());
  const DimensionGroupSpec id({2, 2}, {mat2(1, 0, 0, 1)}, 0);
  CHECK(dg_is_positive(id, dg_element(id, 0, {1, -1}), 6).is_unknown());
}

TEST_CASE("equality is an equivalence on decided pairs and pushes keep verdicts") {
  Rng rng(17);
  const DimensionGroupSpec s({2, 2}, {mat2(2, 1, 1, 1)}, 0);
  std::vector<DimGroupElement> xs;
  for (int k = 0; k < 25; ++k)
    xs.push_back(dg_element(s, pick(rng, 0, 2), {pick_int(rng, -4, 4), pick_int(rng, -4, 4)}));
  for (const auto& x : xs) {
    CHECK(dg_equal(s, x, x, 4).is_yes());
    const auto px = dg_push_to_level(s, x, x.level + 2);
    CHECK(dg_equal(s, x, px, 4).is_yes());
    CHECK(dg_is_positive(s, x, 6).decision == dg_is_positive(s, px, 6).decision);
    for (const auto& y : xs) {
      const auto xy = dg_equal(s, x, y, 4);
      CHECK(xy.decision == dg_equal(s, y, x, 4).decision);
      CHECK(xy.decision == dg_equal(s, px, y, 4).decision);
      if (!xy.is_yes()) continue;
      for (const auto& z : xs)
        if (dg_equal(s, y, z, 4).is_yes()) CHECK(dg_equal(s, x, z, 4).is_yes());
    }
  }
}

TEST_CASE("vertex classes and corners of a Bratteli diagram") {
  const auto d = BratteliDiagram::constant(m1(2));
  const auto s = DimensionGroupSpec::from_bratteli(d);
  CHECK(k0_vertex_class(d, 0, 0) == dg_element(s, 0, {1}));
  const auto corner = corner_class(d, 0, {2});
  CHECK(corner == dg_element(s, 0, {2}));
  CHECK(dg_equal(s, corner, dg_element(s, 1, {4}), 3).is_yes());
  CHECK(dg_equal(s, corner, dg_add(s, k0_vertex_class(d, 0, 0), k0_vertex_class(d, 0, 0)), 3).is_yes());
  // [p_v] at level 1 is half of [p_v] at level 0
  CHECK(dg_equal(s, dg_add(s, k0_vertex_class(d, 1, 0), k0_vertex_class(d, 1, 0)), k0_vertex_class(d, 0, 0), 3).is_yes());
  CHECK_THROWS_AS(k0_vertex_class(d, 0, 1), PreconditionError);
  CHECK_THROWS_AS(corner_class(d, 0, {-1}), PreconditionError);
}

TEST_CASE("vertex classes survive telescoping") {
  Rng rng(23);
  const auto d = BratteliDiagram::constant(mat2(1, 1, 1, 0));
  const auto s = DimensionGroupSpec::from_bratteli(d);
  const auto t = telescope_for_growth(d, 5);
  const auto st = DimensionGroupSpec::from_bratteli(t.diagram);
  // telescoped connecting maps are the collapsed products
  for (std::size_t k = 0; k + 1 < t.subsequence.size(); ++k)
    for (std::size_t i = 0; i < 2; ++i) {
      const auto a = k0_vertex_class(t.diagram, k, i);
      const auto pushed = dg_push_to_level(st, a, k + 1);
      CHECK(dg_from_telescoped(t.subsequence, pushed) ==
            dg_push_to_level(s, dg_from_telescoped(t.subsequence, a), t.subsequence[k + 1]));
    }
  for (std::size_t n = 0; n <= t.subsequence.back(); ++n)
    for (std::size_t i = 0; i < 2; ++i) {
      const auto a = k0_vertex_class(d, n, i);
      const auto image = dg_to_telescoped(s, t.subsequence, a);
      CHECK(dg_equal(s, a, dg_from_telescoped(t.subsequence, image), 20).is_yes());
    }
}

TEST_CASE("rank-2 K matrices") {
  Rank2Data f;
  f.A = {m1(3), m1(4)};
  f.B = {m1(1), m1(2)};
  f.T = {m1(1), m1(3), m1(6)};
  const auto k = rank2_k_matrices(build_rank2(f, 2));
  CHECK(k.A == f.A);
  CHECK(k.B == f.B);
  CHECK(k.T == f.T);
  CHECK(k.A[0](0, 0) * k.T[0](0, 0) == k.T[1](0, 0) * k.B[0](0, 0));
  CHECK(k.A[1](0, 0) * k.T[1](0, 0) == k.T[2](0, 0) * k.B[1](0, 0));
  CHECK(check_k_compatibility(k).passed());

  auto broken = k;
  broken.B[1] = m1(3);
  CHECK(check_k_compatibility(broken).mentions("A_n T_n = T_{n+1} B_n"));
  auto bad = f;
  bad.B[1] = m1(3);
  CHECK_THROWS_AS(build_rank2(bad, 2), ValidationError);

  Rng rng(29);
  for (int round = 0; round < 20; ++round) {
    const auto data = random_rank2_data(rng, 3);
    const auto kk = rank2_k_matrices(build_rank2(data, 3));
    CHECK(kk.A == data.A);
    CHECK(kk.B == data.B);
    CHECK(kk.T == data.T);
  }
}

TEST_CASE("K-theory specs of rank-2 data and the simplicity condition") {
  Rank2Data c;
  c.A = {m1(2)};
  c.B = {m1(2)};
  c.T = {m1(1), m1(1)};
  c.periodic = true;
  const auto k0 = DimensionGroupSpec::k0_of(c);
  CHECK(k0.is_infinite());
  CHECK(dg_equal(k0, dg_element(k0, 0, {1}), dg_element(k0, 4, {16}), 5).is_yes());
  CHECK(simple_not_z(k0).is_yes());
  CHECK(simple_not_z(DimensionGroupSpec({1, 1}, {m1(1)}, 0)).is_unknown());
  CHECK(simple_not_z(DimensionGroupSpec({2, 2}, {mat2(1, 1, 1, 0)}, 0)).is_yes());
  CHECK(simple_not_z(DimensionGroupSpec({2, 2}, {mat2(0, 1, 1, 0)}, 0)).is_unknown());
  CHECK(simple_not_z(DimensionGroupSpec({1, 1}, {m1(2)})).is_unknown());
}
