#pragma once

// Rank-2 Bratteli diagrams: levels of isolated red cycles joined by blue
// edges, the factorization permutation F of blue edges, edge orders
// o(e), O_n, m_n, telescoping of (A, B, T) data, and the automorphism
// alpha(e) = F^{m_n}(e).
//
// A_n(i, j) counts blue edges from a vertex v of cycle j at level n to cycle i
// at level n+1 (range v); B_n(i, j) counts blue edges from cycle j into a
// vertex w of cycle i. Both are c_{n+1} x c_n.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forge/graph_model.hpp"
#include "forge/twisted_product.hpp"

namespace forge {

struct Rank2Data {
  std::vector<IntMatrix> A, B;  // A[n], B[n]: c_{n+1} x c_n
  std::vector<IntMatrix> T;     // diagonal c_n x c_n; one more entry than A
  // When set, the last A, B and T repeat forever (all square of one size).
  bool periodic = false;
  int orientation = 1;  // +1: the red predecessor of index t is t + 1

  const IntMatrix& a(std::size_t n) const;
  const IntMatrix& b(std::size_t n) const;
  const IntMatrix& t(std::size_t n) const;
  // Number of connecting matrices available; nullopt when periodic.
  std::optional<std::size_t> horizon() const;
  std::size_t cycles(std::size_t n) const { return static_cast<std::size_t>(t(n).rows()); }
};

// Shapes chain, A and B proper and nonnegative, T diagonal with positive
// diagonal, and A_n T_n = T_{n+1} B_n, for every stored level.
ValidationReport validate_rank2_data(const Rank2Data& d);

class Rank2Diagram : public Graph {
 public:
  struct EdgeInfo {
    std::size_t level;   // level of the range
    std::size_t i;       // cycle at level + 1
    std::size_t j;       // cycle at level
    std::int64_t index;  // 0 .. A(i, j) T(j) - 1
  };

  std::size_t horizon() const { return cycle_len_.size() - 1; }
  std::size_t cycles(std::size_t level) const { return cycle_len_.at(level).size(); }
  std::int64_t cycle_length(std::size_t level, std::size_t j) const { return cycle_len_.at(level).at(j); }
  int orientation() const { return orientation_; }

  VertexId vertex(std::size_t level, std::size_t j, std::int64_t t) const;
  struct VertexInfo {
    std::size_t level, j;
    std::int64_t t;
  };
  VertexInfo vertex_info(VertexId v) const;
  // The red-cycle predecessor of v (index + orientation).
  VertexId red_predecessor(VertexId v) const;

  std::size_t edge_count() const { return range_.size(); }
  EdgeId edge(std::size_t level, std::size_t i, std::size_t j, std::int64_t index) const;
  const EdgeInfo& edge_info(EdgeId e) const { return info_.at(e); }
  // Blue edges with range at `level`, in id order.
  std::vector<EdgeId> level_edges(std::size_t level) const;

  EdgeId factorization(EdgeId e) const { return F_.at(e); }
  // F^k for any integer k.
  EdgeId factorization(EdgeId e, std::int64_t k) const;

  VertexId range(EdgeId e) const override { return range_.at(e); }
  VertexId source(EdgeId e) const override { return source_.at(e); }
  bool has_vertex(VertexId v) const override { return v < vertex_count_; }
  bool has_edge(EdgeId e) const override { return e < range_.size(); }
  bool finite_receivers(VertexId) const override { return true; }
  std::vector<EdgeId> receivers(VertexId v, std::optional<std::size_t> index_bound = {}) const override;
  std::string vertex_name(VertexId v) const override;
  std::string edge_name(EdgeId e) const override;

  // Test hook: the same diagram with F replaced.
  Rank2Diagram with_factorization(std::vector<EdgeId> F) const;

 private:
  friend Rank2Diagram build_rank2(const Rank2Data& data, std::size_t horizon);
  Rank2Diagram() = default;
  void index_cycles();

  std::vector<std::vector<std::int64_t>> cycle_len_;
  std::vector<std::vector<VertexId>> cycle_offset_;
  std::vector<VertexInfo> vinfo_;
  std::size_t vertex_count_ = 0;
  int orientation_ = 1;
  std::vector<std::vector<EdgeId>> pair_offset_;  // per level, (i * c_n + j)
  std::vector<EdgeId> level_offset_;
  std::vector<EdgeInfo> info_;
  std::vector<VertexId> range_, source_;
  std::vector<EdgeId> F_;
  std::vector<std::vector<EdgeId>> receivers_;
  // cycles of F
  std::vector<std::vector<EdgeId>> f_cycles_;
  std::vector<std::size_t> f_cycle_of_, f_position_;
};

// Edge k between cycle j (level n) and cycle i (level n+1):
// r = vertex k mod T_n(j), s = vertex k mod T_{n+1}(i), F(k) = k + orientation.
// Throws ValidationError when the data fail validate_rank2_data, HorizonError
// when the data stop before `horizon`.
Rank2Diagram build_rank2(const Rank2Data& data, std::size_t horizon);

// F is a bijection, and r(F(e)), s(F(e)) are the red predecessors of r(e), s(e).
ValidationReport validate_rank2(const Rank2Diagram& d);

struct OrderData {
  std::vector<std::int64_t> o;  // per blue edge
  std::vector<std::int64_t> O;  // per level 0 .. horizon - 1
  std::vector<std::int64_t> m;  // per level 0 .. horizon
};

OrderData compute_orders(const Rank2Diagram& d);

struct Rank2TelescopeResult {
  struct Entry {
    std::size_t n;
    std::int64_t min_entry;  // min entry of A_{l(n+2), l(n+1)}
    std::int64_t bound;      // (n + 1) M_{n+1}
  };
  std::vector<std::size_t> lprime;  // l'(1), l'(2), ...
  std::vector<std::size_t> l;       // l(0), l(1), ...
  std::vector<std::int64_t> M;      // M_0, M_1, ...
  std::vector<Entry> entries;
  Rank2Data data;  // A'_n = A_{l(n+1), l(n)}, B'_n, T'_n = T_{l(n)}
  Decision verdict = Decision::Unknown;
  std::string note;
};

// A_{n,m} = A_{n-1} ... A_m and B_{n,m} likewise (identity for n = m).
IntMatrix a_product(const Rank2Data& d, std::size_t n, std::size_t m);
IntMatrix b_product(const Rank2Data& d, std::size_t n, std::size_t m);

// Chooses l', l and M as in the construction: every entry of A_{l'(n+1), l'(n)}
// is at least n; M_0 = M_1 = 0; M_{n+1} = M_n + n prod_{i,j} A_{l(n+1), l(n)}(i, j) T_{l(n)}(j, j);
// every entry of A_{l(n+2), l(n+1)} exceeds (n + 1) M_{n+1}. Produces
// `levels` telescoped matrices. Unknown when the data run out.
Rank2TelescopeResult telescope_rank2(const Rank2Data& d, std::size_t levels, std::size_t search_limit = 4096);
// Recomputes every entry, M and the telescoped matrices from the input data.
ValidationReport reverify(const Rank2Data& d, const Rank2TelescopeResult& r);

struct OrderGrowth {
  std::size_t level;
  std::int64_t min_order;  // min o(e) over blue edges at the level
  std::int64_t bound;      // level * m_level
  bool holds() const { return min_order > bound; }
};
// o(e) > n m_n, level by level.
std::vector<OrderGrowth> order_growth(const Rank2Diagram& d, const OrderData& orders);

// alpha^k(e) = F^{k m_n}(e) on blue edges of level n; a vertex of level n
// moves k m_n steps back along its red cycle. The diagram must outlive the
// returned map.
GraphAutomorphism rank2_automorphism(const Rank2Diagram& d, const OrderData& orders);
// s(alpha e) = r(alpha f) for composable blue pairs, alpha F = F alpha, red
// cycles mapped to themselves, r and s preserved.
ValidationReport verify_rank2_automorphism(const Rank2Diagram& d, const GraphAutomorphism& alpha);

// Bounded (wfc) certificate. For every 0 < |l| <= L and 0 <= s <= S some
// level t <= D has (l m_t - s) mod o(e) != 0 for every blue edge e at level
// t. Unknown when a pair (l, s) survives every level. Needs horizon > D.
WfcCertificate check_wfc(const Rank2Diagram& d, const OrderData& orders, std::size_t D, std::int64_t L,
                         std::optional<std::int64_t> S = {});
ValidationReport reverify(const Rank2Diagram& d, const OrderData& orders, const WfcCertificate& cert,
                          std::optional<std::int64_t> S = {});

// For blue paths lambda: least l >= 1 with alpha^l(lambda) = lambda, from the
// orders (lcm over edges of o(e) / gcd(m_n, o(e))) and checked by iterating alpha.
LcWitness check_lc(const Rank2Diagram& d, const OrderData& orders, const std::vector<PathWord>& paths);

}  // namespace forge
