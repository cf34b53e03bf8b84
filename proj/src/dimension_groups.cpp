#include "forge/dimension_groups.hpp"

#include <map>
#include <sstream>

#include "forge/error.hpp"

namespace forge {

DimensionGroupSpec::DimensionGroupSpec(std::vector<std::size_t> sizes, std::vector<IntMatrix> matrices,
                                       std::optional<std::size_t> repeat_from, bool declared_proper)
    : sizes_(std::move(sizes)), mats_(std::move(matrices)), repeat_from_(repeat_from), proper_(declared_proper) {
  if (sizes_.empty()) throw ValidationError("dimension group spec needs at least one level");
  if (mats_.size() + 1 != sizes_.size())
    throw ValidationError("dimension group spec needs one matrix per gap: " + std::to_string(mats_.size()) +
                          " matrices for " + std::to_string(sizes_.size()) + " levels");
  for (std::size_t n = 0; n < mats_.size(); ++n) {
    const auto& A = mats_[n];
    if (A.rows() != static_cast<Eigen::Index>(sizes_[n + 1]) || A.cols() != static_cast<Eigen::Index>(sizes_[n]))
      throw ValidationError("A_" + std::to_string(n) + " is " + std::to_string(A.rows()) + "x" +
                            std::to_string(A.cols()) + ", expected " + std::to_string(sizes_[n + 1]) + "x" +
                            std::to_string(sizes_[n]));
    if (!is_nonnegative(A)) throw ValidationError("A_" + std::to_string(n) + " has a negative entry");
    if (proper_ && !is_proper(A)) throw ValidationError("A_" + std::to_string(n) + " is declared proper but is not");
  }
  if (repeat_from_) {
    if (*repeat_from_ >= mats_.size()) throw ValidationError("repetition must start before the horizon");
    if (sizes_[*repeat_from_] != sizes_.back()) throw ValidationError("repeated block must return to its first size");
  }
}

DimensionGroupSpec DimensionGroupSpec::from_bratteli(const BratteliDiagram& d) {
  std::vector<std::size_t> sizes;
  std::vector<IntMatrix> mats;
  for (std::size_t n = 0; n <= d.horizon(); ++n) sizes.push_back(d.size(n));
  for (std::size_t n = 0; n < d.horizon(); ++n) mats.push_back(d.connecting_matrix(n));
  return DimensionGroupSpec(std::move(sizes), std::move(mats), d.repeat_from());
}

namespace {

DimensionGroupSpec rank2_spec(const Rank2Data& d, bool k0) {
  const auto report = validate_rank2_data(d);
  if (!report.passed()) throw ValidationError("rank-2 data rejected: " + report.summary());
  std::vector<std::size_t> sizes;
  for (std::size_t n = 0; n <= d.A.size(); ++n) sizes.push_back(d.cycles(n));
  std::optional<std::size_t> r;
  if (d.periodic) r = d.A.size() - 1;
  return DimensionGroupSpec(std::move(sizes), k0 ? d.A : d.B, r, true);
}

}  // namespace

DimensionGroupSpec DimensionGroupSpec::k0_of(const Rank2Data& d) { return rank2_spec(d, true); }
DimensionGroupSpec DimensionGroupSpec::k1_of(const Rank2Data& d) { return rank2_spec(d, false); }

std::size_t DimensionGroupSpec::canonical(std::size_t n) const {
  if (n < mats_.size()) return n;
  if (!repeat_from_) throw HorizonError("level " + std::to_string(n) + " is past the horizon " + std::to_string(horizon()));
  const std::size_t r = *repeat_from_;
  return r + (n - r) % (mats_.size() - r);
}

std::size_t DimensionGroupSpec::size(std::size_t n) const {
  if (n <= horizon()) return sizes_[n];
  return sizes_[canonical(n)];
}

const IntMatrix& DimensionGroupSpec::matrix(std::size_t n) const { return mats_[canonical(n)]; }

DimGroupElement dg_element(const DimensionGroupSpec& s, std::size_t level, const std::vector<std::int64_t>& v) {
  if (!s.has_level(level)) throw HorizonError("level " + std::to_string(level) + " is past the horizon");
  if (v.size() != s.size(level))
    throw PreconditionError("vector of length " + std::to_string(v.size()) + " at a level of size " +
                            std::to_string(s.size(level)));
  return {level, from_std(v)};
}

std::string to_string(const DimGroupElement& a) {
  std::ostringstream os;
  os << "(" << a.level << ", [";
  for (Eigen::Index i = 0; i < a.v.size(); ++i) os << (i ? ", " : "") << a.v(i);
  os << "])";
  return os.str();
}

namespace {

void require_fits(const DimensionGroupSpec& s, const DimGroupElement& a) {
  if (!s.has_level(a.level)) throw HorizonError("level " + std::to_string(a.level) + " is past the horizon");
  if (static_cast<std::size_t>(a.v.size()) != s.size(a.level))
    throw PreconditionError(to_string(a) + " does not fit level " + std::to_string(a.level));
}

// highest level the scan may reach
std::size_t scan_limit(const DimensionGroupSpec& s, std::size_t horizon) {
  return s.is_infinite() ? horizon : std::min(horizon, s.horizon());
}

bool all_negative(const IntVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) >= 0) return false;
  return v.size() > 0;
}

bool all_nonnegative(const IntVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) < 0) return false;
  return true;
}

// Every matrix from level q on satisfies pred (decided through the periodic block).
template <class Pred>
bool holds_from(const DimensionGroupSpec& s, std::size_t q, Pred pred) {
  if (!s.is_infinite()) return false;
  const std::size_t end = std::max(q, *s.repeat_from()) + (s.horizon() - *s.repeat_from());
  for (std::size_t n = q; n < end; ++n)
    if (!pred(s.matrix(n))) return false;
  return true;
}

}  // namespace

DimGroupElement dg_push_to_level(const DimensionGroupSpec& s, const DimGroupElement& a, std::size_t m) {
  require_fits(s, a);
  if (m < a.level) throw PreconditionError("cannot push " + to_string(a) + " down to level " + std::to_string(m));
  if (!s.has_level(m)) throw HorizonError("level " + std::to_string(m) + " is past the horizon " + std::to_string(s.horizon()));
  DimGroupElement out = a;
  for (std::size_t n = a.level; n < m; ++n) {
    out.v = checked_product(s.matrix(n), out.v);
    out.level = n + 1;
  }
  return out;
}

DimGroupElement dg_add(const DimensionGroupSpec& s, const DimGroupElement& a, const DimGroupElement& b) {
  const std::size_t m = std::max(a.level, b.level);
  auto x = dg_push_to_level(s, a, m);
  const auto y = dg_push_to_level(s, b, m);
  for (Eigen::Index i = 0; i < x.v.size(); ++i) x.v(i) = checked::add(x.v(i), y.v(i));
  return x;
}

DimGroupElement dg_sub(const DimensionGroupSpec& s, const DimGroupElement& a, const DimGroupElement& b) {
  const std::size_t m = std::max(a.level, b.level);
  auto x = dg_push_to_level(s, a, m);
  const auto y = dg_push_to_level(s, b, m);
  for (Eigen::Index i = 0; i < x.v.size(); ++i) x.v(i) = checked::sub(x.v(i), y.v(i));
  return x;
}

Verdict dg_equal(const DimensionGroupSpec& s, const DimGroupElement& a, const DimGroupElement& b, std::size_t horizon) {
  try {
    auto d = dg_sub(s, a, b);
    const std::size_t limit = std::max(scan_limit(s, horizon), d.level);
    // q: first level from which every map is injective
    std::optional<std::size_t> q;
    if (s.is_infinite()) {
      const auto inj = [](const IntMatrix& A) { return is_injective(A); };
      for (std::size_t p = d.level; p <= std::max(d.level, *s.repeat_from()); ++p)
        if (holds_from(s, p, inj)) {
          q = p;
          break;
        }
    }
    const std::size_t stop = q ? std::max(limit, *q) : limit;
    for (std::size_t m = d.level;; ++m) {
      if (d.v.isZero())
        return Verdict::yes("pushes agree at level " + std::to_string(m));
      if (q && m == *q)
        return Verdict::no("every A_n with n >= " + std::to_string(*q) +
                           " has full column rank and the pushes differ at level " + std::to_string(*q));
      if (m >= stop) break;
      d = dg_push_to_level(s, d, m + 1);
    }
    return Verdict::unknown("pushes still differ at level " + std::to_string(stop) +
                            (s.is_infinite() ? "; the periodic block is not injective" : "; finite horizon"));
  } catch (const OverflowError& e) {
    return Verdict::unknown(std::string("int64 overflow: ") + e.what());
  }
}

Verdict dg_is_positive(const DimensionGroupSpec& s, const DimGroupElement& a, std::size_t horizon) {
  try {
    require_fits(s, a);
    const std::size_t limit = std::max(scan_limit(s, horizon), a.level);
    const auto proper = [](const IntMatrix& A) { return is_proper(A); };
    auto x = a;
    for (std::size_t m = a.level;; ++m) {
      if (all_nonnegative(x.v)) return Verdict::yes("push to level " + std::to_string(m) + " is " + to_string(x));
      if (all_negative(x.v) && holds_from(s, m, proper))
        return Verdict::no("push to level " + std::to_string(m) + " is negative in every coordinate and every A_n with n >= " +
                           std::to_string(m) + " is proper and nonnegative");
      if (m >= limit) break;
      x = dg_push_to_level(s, x, m + 1);
    }
    return Verdict::unknown("no decision up to level " + std::to_string(limit));
  } catch (const OverflowError& e) {
    return Verdict::unknown(std::string("int64 overflow: ") + e.what());
  }
}

Verdict simple_not_z(const DimensionGroupSpec& s) {
  if (!s.is_infinite())
    return Verdict::unknown("finite horizon: simplicity and non-Z-ness stay user-asserted hypotheses");
  const std::size_t r = *s.repeat_from();
  const auto c = static_cast<Eigen::Index>(s.size(r));
  try {
    IntMatrix P = IntMatrix::Identity(c, c);
    for (std::size_t n = r; n < s.horizon(); ++n) P = checked_product(s.matrix(n), P);
    IntMatrix Q = P;
    // a primitive block is positive by power (c-1)^2 + 1; squaring that power gives entries >= c
    const std::int64_t limit = 2 * ((c - 1) * (c - 1) + 1);
    for (std::int64_t k = 1; k <= limit; ++k) {
      if (min_entry(Q) >= 2)
        return Verdict::yes("power " + std::to_string(k) + " of the periodic block has every entry >= 2");
      Q = checked_product(P, Q);
    }
  } catch (const OverflowError& e) {
    return Verdict::unknown(std::string("int64 overflow: ") + e.what());
  }
  return Verdict::unknown("no power of the periodic block has every entry >= 2");
}

DimGroupElement k0_vertex_class(const BratteliDiagram& d, std::size_t level, std::size_t index) {
  if (!d.has_level(level) || index >= d.size(level))
    throw PreconditionError("no vertex " + std::to_string(index) + " at level " + std::to_string(level));
  IntVector v = IntVector::Zero(static_cast<Eigen::Index>(d.size(level)));
  v(static_cast<Eigen::Index>(index)) = 1;
  return {level, v};
}

DimGroupElement corner_class(const BratteliDiagram& d, std::size_t level, const std::vector<std::int64_t>& a) {
  if (!d.has_level(level)) throw PreconditionError("no level " + std::to_string(level));
  if (a.size() != d.size(level))
    throw PreconditionError("corner vector of length " + std::to_string(a.size()) + " at a level of size " +
                            std::to_string(d.size(level)));
  for (auto x : a)
    if (x < 0) throw PreconditionError("corner vector has a negative entry");
  return {level, from_std(a)};
}

DimGroupElement dg_to_telescoped(const DimensionGroupSpec& original, const std::vector<std::size_t>& subsequence,
                                 const DimGroupElement& a) {
  for (std::size_t k = 0; k < subsequence.size(); ++k)
    if (subsequence[k] >= a.level) {
      auto x = dg_push_to_level(original, a, subsequence[k]);
      x.level = k;
      return x;
    }
  throw HorizonError("subsequence ends before level " + std::to_string(a.level));
}

DimGroupElement dg_from_telescoped(const std::vector<std::size_t>& subsequence, const DimGroupElement& a) {
  if (a.level >= subsequence.size()) throw HorizonError("subsequence ends before level " + std::to_string(a.level));
  return {subsequence[a.level], a.v};
}

ValidationReport check_k_compatibility(const Rank2KMatrices& k) {
  ValidationReport r;
  if (k.A.size() != k.B.size() || k.T.size() != k.A.size() + 1) {
    r.add("one A, B per gap and one T per level", "sizes");
    return r;
  }
  for (std::size_t n = 0; n < k.A.size(); ++n) {
    const auto& A = k.A[n];
    const auto& B = k.B[n];
    if (A.rows() != k.T[n + 1].rows() || A.cols() != k.T[n].rows() || B.rows() != A.rows() || B.cols() != A.cols()) {
      r.add("A_n and B_n are c_{n+1} x c_n", "level " + std::to_string(n));
      continue;
    }
    if (checked_product(A, k.T[n]) != checked_product(k.T[n + 1], B))
      r.add("A_n T_n = T_{n+1} B_n", "level " + std::to_string(n));
  }
  return r;
}

Rank2KMatrices rank2_k_matrices(const Rank2Diagram& d) {
  const auto report = validate_rank2(d);
  if (!report.passed()) throw ValidationError("rank-2 diagram rejected: " + report.summary());
  Rank2KMatrices k;
  for (std::size_t n = 0; n <= d.horizon(); ++n) {
    const auto c = static_cast<Eigen::Index>(d.cycles(n));
    IntMatrix T = IntMatrix::Zero(c, c);
    for (Eigen::Index j = 0; j < c; ++j) T(j, j) = d.cycle_length(n, static_cast<std::size_t>(j));
    k.T.push_back(T);
  }
  for (std::size_t n = 0; n < d.horizon(); ++n) {
    const auto rows = static_cast<Eigen::Index>(d.cycles(n + 1));
    const auto cols = static_cast<Eigen::Index>(d.cycles(n));
    // per representative vertex: counts by the cycle at the other end
    std::map<VertexId, std::map<std::size_t, std::int64_t>> by_range, by_source;
    for (EdgeId e : d.level_edges(n)) {
      ++by_range[d.range(e)][d.vertex_info(d.source(e)).j];
      ++by_source[d.source(e)][d.vertex_info(d.range(e)).j];
    }
    IntMatrix A = IntMatrix::Constant(rows, cols, -1);
    IntMatrix B = IntMatrix::Constant(rows, cols, -1);
    auto record = [&](IntMatrix& M, Eigen::Index i, Eigen::Index j, std::int64_t count, VertexId rep, const char* name) {
      if (M(i, j) >= 0 && M(i, j) != count)
        throw ValidationError(std::string(name) + "_" + std::to_string(n) + "(" + std::to_string(i) + ", " +
                              std::to_string(j) + ") depends on the representative " + d.vertex_name(rep));
      M(i, j) = count;
    };
    for (Eigen::Index j = 0; j < cols; ++j)
      for (std::int64_t t = 0; t < d.cycle_length(n, static_cast<std::size_t>(j)); ++t) {
        const VertexId v = d.vertex(n, static_cast<std::size_t>(j), t);
        for (Eigen::Index i = 0; i < rows; ++i) {
          const auto& m = by_range[v];
          const auto it = m.find(static_cast<std::size_t>(i));
          record(A, i, j, it == m.end() ? 0 : it->second, v, "A");
        }
      }
    for (Eigen::Index i = 0; i < rows; ++i)
      for (std::int64_t t = 0; t < d.cycle_length(n + 1, static_cast<std::size_t>(i)); ++t) {
        const VertexId w = d.vertex(n + 1, static_cast<std::size_t>(i), t);
        for (Eigen::Index j = 0; j < cols; ++j) {
          const auto& m = by_source[w];
          const auto it = m.find(static_cast<std::size_t>(j));
          record(B, i, j, it == m.end() ? 0 : it->second, w, "B");
        }
      }
    k.A.push_back(A);
    k.B.push_back(B);
  }
  const auto compat = check_k_compatibility(k);
  if (!compat.passed()) throw ValidationError("counted matrices violate " + compat.summary());
  return k;
}

}  // namespace forge
