#include "forge/rank2.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "forge/error.hpp"
#include "forge/graph_groupoid.hpp"

namespace forge {

namespace {

constexpr std::size_t kMaxEdges = 4'000'000;

std::string lvl(std::size_t n) { return "level " + std::to_string(n); }

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  const __int128 p = static_cast<__int128>(checked::mod(a, m)) * checked::mod(b, m);
  return static_cast<std::int64_t>(p % m);
}

}  // namespace

// ---------------------------------------------------------------- data

const IntMatrix& Rank2Data::a(std::size_t n) const {
  if (n < A.size()) return A[n];
  if (periodic && !A.empty()) return A.back();
  throw HorizonError("no A_" + std::to_string(n) + ": data stop at " + std::to_string(A.size()));
}

const IntMatrix& Rank2Data::b(std::size_t n) const {
  if (n < B.size()) return B[n];
  if (periodic && !B.empty()) return B.back();
  throw HorizonError("no B_" + std::to_string(n) + ": data stop at " + std::to_string(B.size()));
}

const IntMatrix& Rank2Data::t(std::size_t n) const {
  if (n < T.size()) return T[n];
  if (periodic && !T.empty()) return T.back();
  throw HorizonError("no T_" + std::to_string(n) + ": data stop at " + std::to_string(T.size()));
}

std::optional<std::size_t> Rank2Data::horizon() const {
  if (periodic) return std::nullopt;
  return A.size();
}

ValidationReport validate_rank2_data(const Rank2Data& d) {
  ValidationReport r;
  if (d.orientation != 1 && d.orientation != -1) r.add("orientation is +1 or -1", std::to_string(d.orientation));
  if (d.T.empty() || d.A.size() != d.B.size() || d.T.size() != d.A.size() + 1) {
    r.add("one T per level and one A, B per gap",
          "|A| = " + std::to_string(d.A.size()) + ", |B| = " + std::to_string(d.B.size()) +
              ", |T| = " + std::to_string(d.T.size()));
    return r;
  }
  for (std::size_t n = 0; n < d.T.size(); ++n) {
    const auto& T = d.T[n];
    if (T.rows() != T.cols() || T.rows() == 0) {
      r.add("T_n square and nonempty", lvl(n));
      return r;
    }
    if (!is_diagonal(T)) r.add("T_n diagonal", lvl(n));
    for (Eigen::Index j = 0; j < T.rows(); ++j)
      if (T(j, j) <= 0) r.add("cycle lengths positive", lvl(n) + " cycle " + std::to_string(j));
  }
  if (!r.passed()) return r;
  const std::size_t gaps = d.A.size() + (d.periodic ? 1 : 0);
  if (d.periodic && (d.A.empty() || d.T.back().rows() != d.T[d.T.size() - 2].rows()))
    r.add("periodic data end in a square block", "last level");
  if (!r.passed()) return r;
  for (std::size_t n = 0; n < gaps; ++n) {
    const auto& A = d.a(n);
    const auto& B = d.b(n);
    const auto& Tn = d.t(n);
    const auto& Tm = d.t(n + 1);
    const std::string where = "A_" + std::to_string(n) + ", B_" + std::to_string(n);
    if (A.rows() != Tm.rows() || A.cols() != Tn.rows() || B.rows() != Tm.rows() || B.cols() != Tn.rows()) {
      r.add("A_n and B_n are c_{n+1} x c_n", where);
      continue;
    }
    if (!is_nonnegative(A) || !is_nonnegative(B)) r.add("A_n and B_n nonnegative", where);
    if (!is_proper(A) || !is_proper(B)) r.add("A_n and B_n proper", where);
    try {
      if (checked_product(A, Tn) != checked_product(Tm, B)) r.add("A_n T_n = T_{n+1} B_n", lvl(n));
    } catch (const OverflowError&) {
      r.add("A_n T_n = T_{n+1} B_n", lvl(n) + " overflows int64");
    }
  }
  return r;
}

// ---------------------------------------------------------------- diagram

VertexId Rank2Diagram::vertex(std::size_t level, std::size_t j, std::int64_t t) const {
  if (level > horizon() || j >= cycles(level) || t < 0 || t >= cycle_length(level, j))
    throw PreconditionError("no vertex (" + std::to_string(level) + ", " + std::to_string(j) + ", " +
                            std::to_string(t) + ")");
  return cycle_offset_[level][j] + static_cast<VertexId>(t);
}

Rank2Diagram::VertexInfo Rank2Diagram::vertex_info(VertexId v) const {
  if (v >= vertex_count_) throw PreconditionError("no vertex " + std::to_string(v));
  return vinfo_[v];
}

VertexId Rank2Diagram::red_predecessor(VertexId v) const {
  const auto i = vertex_info(v);
  return vertex(i.level, i.j, checked::mod(i.t + orientation_, cycle_length(i.level, i.j)));
}

EdgeId Rank2Diagram::edge(std::size_t level, std::size_t i, std::size_t j, std::int64_t index) const {
  if (level >= horizon() || i >= cycles(level + 1) || j >= cycles(level))
    throw PreconditionError("no blue edges at (" + std::to_string(level) + ", " + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
  const std::size_t p = i * cycles(level) + j;
  const EdgeId start = pair_offset_[level][p];
  const EdgeId end = pair_offset_[level][p + 1];
  if (index < 0 || static_cast<EdgeId>(index) >= end - start)
    throw PreconditionError("edge index " + std::to_string(index) + " out of range");
  return start + static_cast<EdgeId>(index);
}

std::vector<EdgeId> Rank2Diagram::level_edges(std::size_t level) const {
  if (level >= horizon()) throw PreconditionError("no blue edges at " + lvl(level));
  std::vector<EdgeId> out(level_offset_[level + 1] - level_offset_[level]);
  std::iota(out.begin(), out.end(), level_offset_[level]);
  return out;
}

EdgeId Rank2Diagram::factorization(EdgeId e, std::int64_t k) const {
  if (e >= F_.size()) throw PreconditionError("no blue edge " + std::to_string(e));
  if (f_cycles_.empty()) throw PreconditionError("F is not a permutation");
  const auto& c = f_cycles_[f_cycle_of_[e]];
  const auto len = static_cast<std::int64_t>(c.size());
  const auto pos = checked::mod(static_cast<std::int64_t>(f_position_[e]) + checked::mod(k, len), len);
  return c[static_cast<std::size_t>(pos)];
}

std::vector<EdgeId> Rank2Diagram::receivers(VertexId v, std::optional<std::size_t> index_bound) const {
  if (v >= vertex_count_) throw PreconditionError("no vertex " + std::to_string(v));
  auto out = receivers_[v];
  if (index_bound && out.size() > *index_bound) out.resize(*index_bound);
  return out;
}

std::string Rank2Diagram::vertex_name(VertexId v) const {
  const auto i = vertex_info(v);
  return "v[" + std::to_string(i.level) + ";" + std::to_string(i.j) + ";" + std::to_string(i.t) + "]";
}

std::string Rank2Diagram::edge_name(EdgeId e) const {
  const auto& i = edge_info(e);
  return "e[" + std::to_string(i.level) + ";" + std::to_string(i.j) + "<-" + std::to_string(i.i) + ";" +
         std::to_string(i.index) + "]";
}

void Rank2Diagram::index_cycles() {
  f_cycles_.clear();
  f_cycle_of_.assign(F_.size(), 0);
  f_position_.assign(F_.size(), 0);
  std::vector<char> hit(F_.size(), 0);
  for (EdgeId f : F_) {
    if (f >= F_.size() || hit[f]) {
      f_cycles_.clear();
      return;
    }
    hit[f] = 1;
  }
  std::vector<char> seen(F_.size(), 0);
  for (EdgeId e = 0; e < F_.size(); ++e) {
    if (seen[e]) continue;
    std::vector<EdgeId> c;
    for (EdgeId x = e; !seen[x]; x = F_[x]) {
      seen[x] = 1;
      f_cycle_of_[x] = f_cycles_.size();
      f_position_[x] = c.size();
      c.push_back(x);
    }
    f_cycles_.push_back(std::move(c));
  }
}

Rank2Diagram Rank2Diagram::with_factorization(std::vector<EdgeId> F) const {
  if (F.size() != F_.size()) throw PreconditionError("F must list one image per blue edge");
  Rank2Diagram out = *this;
  out.F_ = std::move(F);
  out.index_cycles();
  return out;
}

Rank2Diagram build_rank2(const Rank2Data& data, std::size_t horizon) {
  const auto report = validate_rank2_data(data);
  if (!report.passed()) throw ValidationError("rank-2 data rejected: " + report.summary());
  if (!data.periodic && horizon > data.A.size())
    throw HorizonError("data define " + std::to_string(data.A.size()) + " gaps, " + std::to_string(horizon) +
                       " requested");
  Rank2Diagram d;
  d.orientation_ = data.orientation;
  for (std::size_t n = 0; n <= horizon; ++n) {
    const auto& T = data.t(n);
    std::vector<std::int64_t> lens;
    std::vector<VertexId> offs;
    for (Eigen::Index j = 0; j < T.rows(); ++j) {
      offs.push_back(d.vertex_count_);
      lens.push_back(T(j, j));
      for (std::int64_t t = 0; t < T(j, j); ++t) d.vinfo_.push_back({n, static_cast<std::size_t>(j), t});
      d.vertex_count_ += static_cast<std::size_t>(T(j, j));
    }
    d.cycle_len_.push_back(std::move(lens));
    d.cycle_offset_.push_back(std::move(offs));
  }
  d.receivers_.assign(d.vertex_count_, {});
  for (std::size_t n = 0; n < horizon; ++n) {
    d.level_offset_.push_back(d.range_.size());
    const auto& A = data.a(n);
    std::vector<EdgeId> pairs;
    for (std::size_t i = 0; i < d.cycles(n + 1); ++i)
      for (std::size_t j = 0; j < d.cycles(n); ++j) {
        const EdgeId start = d.range_.size();
        pairs.push_back(start);
        const std::int64_t Tn = d.cycle_len_[n][j];
        const std::int64_t Tm = d.cycle_len_[n + 1][i];
        const std::int64_t K = checked::mul(A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), Tn);
        if (start + static_cast<std::size_t>(K) > kMaxEdges)
          throw PreconditionError("rank-2 diagram exceeds " + std::to_string(kMaxEdges) + " blue edges");
        for (std::int64_t k = 0; k < K; ++k) {
          const EdgeId e = d.range_.size();
          d.info_.push_back({n, i, j, k});
          d.range_.push_back(d.cycle_offset_[n][j] + static_cast<VertexId>(k % Tn));
          d.source_.push_back(d.cycle_offset_[n + 1][i] + static_cast<VertexId>(k % Tm));
          d.F_.push_back(start + static_cast<EdgeId>(checked::mod(k + d.orientation_, K)));
          d.receivers_[d.range_.back()].push_back(e);
        }
      }
    pairs.push_back(d.range_.size());
    d.pair_offset_.push_back(std::move(pairs));
  }
  d.level_offset_.push_back(d.range_.size());
  d.index_cycles();
  return d;
}

ValidationReport validate_rank2(const Rank2Diagram& d) {
  ValidationReport r;
  const std::size_t E = d.edge_count();
  std::vector<char> hit(E, 0);
  for (EdgeId e = 0; e < E; ++e) {
    const EdgeId f = d.factorization(e);
    const std::string where = d.edge_name(e);
    if (f >= E) {
      r.add("F maps blue edges to blue edges", where);
      continue;
    }
    if (hit[f]) r.add("F is a bijection of blue edges", d.edge_name(f) + " hit twice");
    hit[f] = 1;
    if (d.edge_info(f).level != d.edge_info(e).level) r.add("F preserves the level", where);
    if (d.range(f) != d.red_predecessor(d.range(e))) r.add("r(F(e)) is the red predecessor of r(e)", where);
    if (d.source(f) != d.red_predecessor(d.source(e))) r.add("s(F(e)) is the red predecessor of s(e)", where);
  }
  for (std::size_t n = 0; n <= d.horizon(); ++n)
    for (std::size_t j = 0; j < d.cycles(n); ++j)
      for (std::int64_t t = 0; t < d.cycle_length(n, j); ++t) {
        const VertexId v = d.vertex(n, j, t);
        if (n < d.horizon() && d.receivers(v).empty()) r.add("every vertex receives a blue edge", d.vertex_name(v));
      }
  return r;
}

OrderData compute_orders(const Rank2Diagram& d) {
  const auto report = validate_rank2(d);
  if (!report.passed()) throw ValidationError("rank-2 diagram rejected: " + report.summary());
  OrderData out;
  out.o.resize(d.edge_count());
  std::vector<char> seen(d.edge_count(), 0);
  for (EdgeId e = 0; e < d.edge_count(); ++e) {
    if (seen[e]) continue;
    std::vector<EdgeId> cycle{e};
    for (EdgeId x = d.factorization(e); x != e; x = d.factorization(x)) cycle.push_back(x);
    for (EdgeId x : cycle) {
      seen[x] = 1;
      out.o[x] = static_cast<std::int64_t>(cycle.size());
    }
  }
  out.m.push_back(0);
  for (std::size_t n = 0; n < d.horizon(); ++n) {
    std::int64_t O = 1;
    for (EdgeId e : d.level_edges(n)) O = checked::lcm(O, out.o[e]);
    out.O.push_back(O);
    out.m.push_back(checked::add(out.m.back(), checked::mul(static_cast<std::int64_t>(n), O)));
  }
  return out;
}

// ---------------------------------------------------------------- telescoping

namespace {

IntMatrix product_of(const Rank2Data& d, bool use_a, std::size_t n, std::size_t m) {
  if (n < m) throw PreconditionError("product needs n >= m");
  IntMatrix P = IntMatrix::Identity(static_cast<Eigen::Index>(d.cycles(m)), static_cast<Eigen::Index>(d.cycles(m)));
  for (std::size_t k = m; k < n; ++k) P = checked_product(use_a ? d.a(k) : d.b(k), P);
  return P;
}

bool defined_gap(const Rank2Data& d, std::size_t k) { return d.periodic || k < d.A.size(); }

std::int64_t entry_product(const IntMatrix& A, const IntMatrix& T) {
  std::int64_t p = 1;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) p = checked::mul(p, checked::mul(A(i, j), T(j, j)));
  return p;
}

}  // namespace

IntMatrix a_product(const Rank2Data& d, std::size_t n, std::size_t m) { return product_of(d, true, n, m); }
IntMatrix b_product(const Rank2Data& d, std::size_t n, std::size_t m) { return product_of(d, false, n, m); }

Rank2TelescopeResult telescope_rank2(const Rank2Data& d, std::size_t levels, std::size_t search_limit) {
  const auto report = validate_rank2_data(d);
  if (!report.passed()) throw ValidationError("rank-2 data rejected: " + report.summary());
  Rank2TelescopeResult out;
  out.data.orientation = d.orientation;

  // least k > from with every entry of A_{k, from} > bound; nullopt when the data run out
  std::string why;
  auto search = [&](std::size_t from, std::int64_t bound) -> std::optional<std::pair<std::size_t, std::int64_t>> {
    why = "search limit " + std::to_string(search_limit) + " reached";
    IntMatrix P = IntMatrix::Identity(static_cast<Eigen::Index>(d.cycles(from)),
                                      static_cast<Eigen::Index>(d.cycles(from)));
    for (std::size_t k = from + 1; k <= from + search_limit; ++k) {
      if (!defined_gap(d, k - 1)) {
        why = "data exhausted";
        return std::nullopt;
      }
      P = checked_product(d.a(k - 1), P);
      const std::int64_t least = min_entry(P);
      if (least > bound) return std::make_pair(k, least);
    }
    return std::nullopt;
  };

  try {
    // l'(1) = 0; every entry of A_{l'(n+1), l'(n)} >= n
    out.lprime.push_back(0);
    const std::size_t needed = std::min<std::size_t>(levels + 1, 3);
    while (out.lprime.size() < needed) {
      const auto n = static_cast<std::int64_t>(out.lprime.size());
      const auto next = search(out.lprime.back(), n - 1);
      if (!next) {
        out.note = why + " while choosing l'(" + std::to_string(n + 1) + ")";
        out.l = out.lprime;
        return out;
      }
      out.lprime.push_back(next->first);
    }
    out.l = out.lprime;
    out.M = {0, 0};
    while (out.l.size() < levels + 1) {
      const std::size_t n = out.l.size() - 2;
      const IntMatrix A = a_product(d, out.l[n + 1], out.l[n]);
      out.M.push_back(checked::add(out.M[n], checked::mul(static_cast<std::int64_t>(n), entry_product(A, d.t(out.l[n])))));
      const std::int64_t bound = checked::mul(static_cast<std::int64_t>(n + 1), out.M[n + 1]);
      const auto next = search(out.l[n + 1], bound);
      if (!next) {
        out.note = why + " while choosing l(" + std::to_string(n + 2) + ")";
        return out;
      }
      out.entries.push_back({n, next->second, bound});
      out.l.push_back(next->first);
    }
    for (std::size_t n = 0; n + 1 < out.l.size(); ++n) {
      out.data.A.push_back(a_product(d, out.l[n + 1], out.l[n]));
      out.data.B.push_back(b_product(d, out.l[n + 1], out.l[n]));
    }
    for (std::size_t n : out.l) out.data.T.push_back(d.t(n));
  } catch (const OverflowError& e) {
    out.note = std::string("int64 overflow: ") + e.what();
    out.data = Rank2Data{};
    out.data.orientation = d.orientation;
    return out;
  }
  out.verdict = Decision::Yes;
  return out;
}

ValidationReport reverify(const Rank2Data& d, const Rank2TelescopeResult& res) {
  ValidationReport r;
  if (res.verdict != Decision::Yes) {
    r.add("telescoping completed", res.note);
    return r;
  }
  const auto& l = res.l;
  for (std::size_t n = 0; n + 1 < l.size(); ++n)
    if (l[n + 1] <= l[n]) r.add("l increases strictly", "l(" + std::to_string(n + 1) + ")");
  for (std::size_t n = 0; n < std::min<std::size_t>(l.size(), res.lprime.size()); ++n)
    if (l[n] != res.lprime[n]) r.add("l(n) = l'(n + 1) for n <= 2", "n = " + std::to_string(n));
  if (!r.passed()) return r;
  for (std::size_t n = 1; n < res.lprime.size(); ++n)
    if (min_entry(a_product(d, res.lprime[n], res.lprime[n - 1])) < static_cast<std::int64_t>(n))
      r.add("entries of A_{l'(n+1), l'(n)} >= n", "n = " + std::to_string(n));
  if (l.size() >= 3 && (res.M.size() + 1 != l.size() || res.M[0] != 0 || res.M[1] != 0))
    r.add("M_0 = M_1 = 0 and M_0 .. M_{N-1}", std::to_string(res.M.size()) + " values");
  if (!r.passed()) return r;
  for (std::size_t n = 1; n + 1 < res.M.size(); ++n) {
    const auto expect = checked::add(
        res.M[n], checked::mul(static_cast<std::int64_t>(n), entry_product(a_product(d, l[n + 1], l[n]), d.t(l[n]))));
    if (res.M[n + 1] != expect) r.add("M recursion", "M_" + std::to_string(n + 1));
  }
  for (const auto& e : res.entries) {
    const auto least = min_entry(a_product(d, l[e.n + 2], l[e.n + 1]));
    const auto bound = checked::mul(static_cast<std::int64_t>(e.n + 1), res.M.at(e.n + 1));
    if (least != e.min_entry || bound != e.bound || least <= bound)
      r.add("entries of A_{l(n+2), l(n+1)} exceed (n + 1) M_{n+1}", "n = " + std::to_string(e.n));
  }
  for (std::size_t n = 0; n + 1 < l.size(); ++n) {
    if (n >= res.data.A.size() || res.data.A[n] != a_product(d, l[n + 1], l[n]) ||
        res.data.B[n] != b_product(d, l[n + 1], l[n]))
      r.add("telescoped A'_n, B'_n are the products", lvl(n));
  }
  for (std::size_t n = 0; n < l.size(); ++n)
    if (n >= res.data.T.size() || res.data.T[n] != d.t(l[n])) r.add("T'_n = T_{l(n)}", lvl(n));
  const auto again = validate_rank2_data(res.data);
  for (const auto& v : again.violations) r.add("telescoped data: " + v.invariant, v.location);
  return r;
}

std::vector<OrderGrowth> order_growth(const Rank2Diagram& d, const OrderData& orders) {
  std::vector<OrderGrowth> out;
  for (std::size_t t = 0; t < d.horizon(); ++t) {
    std::int64_t least = -1;
    for (EdgeId e : d.level_edges(t)) least = least < 0 ? orders.o[e] : std::min(least, orders.o[e]);
    out.push_back({t, least, checked::mul(static_cast<std::int64_t>(t), orders.m[t])});
  }
  return out;
}

// ---------------------------------------------------------------- automorphism

GraphAutomorphism rank2_automorphism(const Rank2Diagram& d, const OrderData& orders) {
  if (orders.o.size() != d.edge_count()) throw PreconditionError("orders belong to a different diagram");
  const Rank2Diagram* D = &d;
  auto m = orders.m;
  auto o = orders.o;
  // a vertex of level n moves m_n steps back along its red cycle
  auto vertices = [D, m](VertexId v, std::int64_t k) {
    const auto i = D->vertex_info(v);
    const std::int64_t T = D->cycle_length(i.level, i.j);
    const std::int64_t step = mulmod(mulmod(m[i.level], k, T), D->orientation(), T);
    return D->vertex(i.level, i.j, checked::mod(i.t + step, T));
  };
  auto edges = [D, m, o](EdgeId e, std::int64_t k) {
    return D->factorization(e, mulmod(m[D->edge_info(e).level], k, o.at(e)));
  };
  return GraphAutomorphism(vertices, edges, "F^{m_n} on blue edges of level n");
}

ValidationReport verify_rank2_automorphism(const Rank2Diagram& d, const GraphAutomorphism& alpha) {
  std::vector<EdgeId> all(d.edge_count());
  std::iota(all.begin(), all.end(), EdgeId{0});
  auto r = verify_graph_automorphism(d, alpha, all);
  for (VertexId v = 0; d.has_vertex(v); ++v) {
    const VertexId a = alpha.vertex(v);
    if (!d.has_vertex(a) || d.vertex_info(a).level != d.vertex_info(v).level ||
        d.vertex_info(a).j != d.vertex_info(v).j)
      r.add("alpha maps each red cycle to itself", d.vertex_name(v));
    else if (alpha.vertex(a, -1) != v)
      r.add("alpha^-1 inverts alpha", d.vertex_name(v));
    else if (alpha.vertex(d.red_predecessor(v)) != d.red_predecessor(a))
      r.add("alpha commutes with the red edges", d.vertex_name(v));
  }
  for (EdgeId e : all) {
    const EdgeId a = alpha.edge(e);
    if (!d.has_edge(a)) {
      r.add("alpha maps blue edges to blue edges", d.edge_name(e));
      continue;
    }
    if (alpha.edge(a, -1) != e) r.add("alpha^-1 inverts alpha", d.edge_name(e));
    if (alpha.edge(d.factorization(e)) != d.factorization(a)) r.add("alpha F = F alpha", d.edge_name(e));
  }
  // all pairs e f with s(e) = w at once: the r(alpha f), f in w Lambda, must
  // agree with each other and with s(alpha e)
  std::vector<std::optional<VertexId>> common(d.edge_count() ? d.range(all.back()) + 1 : 0);
  std::vector<char> split(common.size(), 0);
  for (EdgeId f : all) {
    const VertexId w = d.range(f), x = d.range(alpha.edge(f));
    if (common[w] && *common[w] != x) split[w] = 1;
    common[w] = x;
  }
  for (EdgeId e : all) {
    const VertexId w = d.source(e);
    if (w >= common.size() || !common[w]) continue;
    if (split[w] || d.source(alpha.edge(e)) != *common[w])
      r.add("s(alpha e) = r(alpha f) for composable e f", d.edge_name(e));
  }
  return r;
}

// ---------------------------------------------------------------- (wfc) and (lc)

namespace {

// (l m_t - s) mod o(e) != 0 for every blue e at level t
bool level_separates(const Rank2Diagram& d, const OrderData& orders, std::size_t t, std::int64_t l, std::int64_t s) {
  const std::int64_t x = checked::sub(checked::mul(l, orders.m[t]), s);
  for (EdgeId e : d.level_edges(t))
    if (checked::mod(x, orders.o[e]) == 0) return false;
  return true;
}

std::optional<std::size_t> separating_level(const Rank2Diagram& d, const OrderData& orders, std::size_t D,
                                            std::int64_t l, std::int64_t s) {
  for (std::size_t t = 0; t <= D; ++t)
    if (level_separates(d, orders, t, l, s)) return t;
  return std::nullopt;
}

std::vector<std::int64_t> signed_range(std::int64_t L) {
  std::vector<std::int64_t> out;
  for (std::int64_t l = 1; l <= L; ++l) {
    out.push_back(l);
    out.push_back(-l);
  }
  return out;
}

}  // namespace

WfcCertificate check_wfc(const Rank2Diagram& d, const OrderData& orders, std::size_t D, std::int64_t L,
                         std::optional<std::int64_t> S) {
  if (L < 1) throw PreconditionError("wfc needs L >= 1");
  if (D >= d.horizon())
    throw HorizonError("rank-2 wfc to depth " + std::to_string(D) + " needs horizon > D, have " +
                       std::to_string(d.horizon()));
  if (orders.o.size() != d.edge_count()) throw PreconditionError("orders belong to a different diagram");
  const std::int64_t smax = S.value_or(L);
  if (smax < 0) throw PreconditionError("wfc needs S >= 0");
  WfcCertificate cert;
  cert.depth = D;
  cert.lbound = L;
  for (std::int64_t l : signed_range(L)) {
    std::size_t deepest = 0;
    for (std::int64_t s = 0; s <= smax; ++s) {
      const auto t = separating_level(d, orders, D, l, s);
      if (!t) {
        cert.witnesses.clear();
        cert.verdict = Decision::Unknown;
        cert.note = "l = " + std::to_string(l) + ", s = " + std::to_string(s) +
                    ": l m_t - s vanishes mod some o(e) at every level t <= " + std::to_string(D);
        return cert;
      }
      deepest = std::max(deepest, *t);
    }
    cert.witnesses.push_back({l, WfcWitnessKind::OrderBound, deepest,
                              "every 0 <= s <= " + std::to_string(smax) + " separated at a level <= " +
                                  std::to_string(deepest)});
  }
  cert.verdict = Decision::Yes;
  cert.note = "paths whose blue edges from level " + std::to_string(D) + " on are alpha^l-fixed up to shifts s <= " +
              std::to_string(smax);
  return cert;
}

ValidationReport reverify(const Rank2Diagram& d, const OrderData& orders, const WfcCertificate& cert,
                          std::optional<std::int64_t> S) {
  ValidationReport r;
  const std::int64_t smax = S.value_or(cert.lbound);
  if (!cert.well_formed()) r.add("certificate xor counterexample", std::string("verdict ") + to_string(cert.verdict));
  if (cert.verdict == Decision::Yes && cert.witnesses.size() != 2 * static_cast<std::size_t>(cert.lbound))
    r.add("one witness per l with 0 < |l| <= L", std::to_string(cert.witnesses.size()) + " witnesses");
  for (const auto& w : cert.witnesses) {
    const std::string where = "l = " + std::to_string(w.l);
    if (w.kind != WfcWitnessKind::OrderBound || w.level > cert.depth || w.level >= d.horizon()) {
      r.add("order-bound witness within the depth", where);
      continue;
    }
    for (std::int64_t s = 0; s <= smax; ++s)
      if (!separating_level(d, orders, w.level, w.l, s)) r.add("l m_t - s nonzero mod o(e)", where + ", s = " + std::to_string(s));
  }
  return r;
}

LcWitness check_lc(const Rank2Diagram& d, const OrderData& orders, const std::vector<PathWord>& paths) {
  const auto alpha = rank2_automorphism(d, orders);
  LcWitness out;
  for (const auto& mu : paths) {
    for (EdgeId e : mu.edges)
      if (!d.has_edge(e)) throw PreconditionError("no blue edge " + std::to_string(e));
    std::int64_t l = 1;
    for (EdgeId e : mu.edges) {
      const std::int64_t oe = orders.o[e];
      l = checked::lcm(l, oe / std::gcd(checked::mod(orders.m[d.edge_info(e).level], oe), oe));
    }
    bool ok = alpha.path(mu, l) == mu;
    for (std::int64_t k = 1; ok && k < l; ++k) ok = !(alpha.path(mu, k) == mu);
    out.entries.push_back({to_string(d, mu), l, ok});
  }
  return out;
}

}  // namespace forge
