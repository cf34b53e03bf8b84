#pragma once

// Seeded generators and brute-force oracles shared by the unit tests and the
// acceptance suite. Nothing here is used by the library itself.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "forge/graph_groupoid.hpp"
#include "forge/groupoid_core.hpp"
#include "forge/rank2.hpp"

namespace forge::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}
inline std::int64_t pick_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// ---------------------------------------------------------------- finite groupoids

// Disjoint union of 1..3 transitive blocks, at most `max_elements` elements.
// Shapes are repeated now and then so that block permutations occur.
BlockGroupoid random_block_groupoid(Rng& rng, std::size_t max_elements, bool principal_only = false);
GroupoidAutomorphism random_block_automorphism(Rng& rng, const BlockGroupoid& g);
Cocycle random_coboundary(Rng& rng, const BlockGroupoid& g, std::int64_t spread = 3);
std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

// Inputs for a twisted product: the cocycle is an integer coboundary or,
// about half the time, Z/N-valued with N a multiple of the order of alpha.
struct TwistedInstance {
  BlockGroupoid H;
  Cocycle c;
  BlockGroupoid G;
  GroupoidAutomorphism alpha;
};
TwistedInstance random_twisted_instance(Rng& rng, std::size_t max_elements);

// ---------------------------------------------------------------- rank-2 data

// Compatible (A, B, T) with 1..3 cycles per level and cycle lengths 1..4:
// B(i, j) = A(i, j) T_n(j) / T_{n+1}(i). Orientation is random.
Rank2Data random_rank2_data(Rng& rng, std::size_t gaps);

// ---------------------------------------------------------------- windowed germs
//
// Oracle for the bisection calculus on a one-vertex graph whose edges are
// the ids 0..alphabet-1 (a finite bouquet, or the infinite rose truncated to
// that alphabet). A set of groupoid elements is described by windows: an atom
// (a, b) stands for {(a t, |a| - |b|, b t)} with t ranging over all tails,
// and a finite window is the single element (a, |a| - |b|, b) with a, b
// finite paths (only present when finite paths are units).

struct Window {
  std::vector<EdgeId> a, b;
  bool finite = false;
  friend auto operator<=>(const Window&, const Window&) = default;
};
using WindowSet = std::set<Window>;

enum class Side { Range, Source };

class WindowOracle {
 public:
  WindowOracle(const Graph& g, std::size_t alphabet) : g_(g), alphabet_(alphabet) {}

  // Atoms have |a| = depth (Side::Range) or |b| = depth (Side::Source).
  WindowSet expand(const BasicBisection& b, Side side, std::size_t depth) const;
  // Brings every atom to |a| = depth.
  WindowSet refine(const WindowSet& s, std::size_t depth) const;
  WindowSet product(const BasicBisection& x, const BasicBisection& y) const;
  WindowSet sum(const BisectionSum& s) const;
  WindowSet as_windows(const BasicBisection& b) const;
  // Compares after refining both to a common depth.
  bool equal(const WindowSet& x, const WindowSet& y) const;
  bool subset(const WindowSet& x, const WindowSet& y) const;
  WindowSet intersect(const WindowSet& x, const WindowSet& y) const;

 private:
  std::size_t common_depth(const WindowSet& x, const WindowSet& y) const;
  std::vector<std::vector<EdgeId>> words(std::size_t length) const;

  const Graph& g_;
  std::size_t alphabet_;
};

std::vector<EdgeId> random_word(Rng& rng, std::size_t alphabet, std::size_t max_length);
// A basic bisection over the one-vertex graph with random words and F.
BasicBisection random_bisection(Rng& rng, std::size_t alphabet, std::size_t max_length);
// All basic bisections with |alpha|, |beta| <= max_length and any F.
std::vector<BasicBisection> all_bisections(std::size_t alphabet, std::size_t max_length);

}  // namespace forge::testing
