#pragma once

// Direct limits lim(Z^{c_n}, A_n) as ordered groups, decided up to a horizon.
// A_n is c_{n+1} x c_n and acts on column vectors.

#include <optional>
#include <string>
#include <vector>

#include "forge/graph_model.hpp"
#include "forge/rank2.hpp"

namespace forge {

class DimensionGroupSpec {
 public:
  // matrices[n] is sizes[n+1] x sizes[n]. With repeat_from = r the matrices
  // from r to the horizon repeat forever (sizes[r] must equal the last size).
  DimensionGroupSpec(std::vector<std::size_t> sizes, std::vector<IntMatrix> matrices,
                     std::optional<std::size_t> repeat_from = {}, bool declared_proper = false);

  // A_n = transpose of the multiplicity matrix: Z^{V_n} -> Z^{V_{n+1}}.
  static DimensionGroupSpec from_bratteli(const BratteliDiagram& d);
  // K_0 of a rank-2 diagram: (Z^{c_n}, A_n); K_1 uses B_n.
  static DimensionGroupSpec k0_of(const Rank2Data& d);
  static DimensionGroupSpec k1_of(const Rank2Data& d);

  std::size_t horizon() const { return sizes_.size() - 1; }
  bool is_infinite() const { return repeat_from_.has_value(); }
  std::optional<std::size_t> repeat_from() const { return repeat_from_; }
  bool has_level(std::size_t n) const { return is_infinite() || n <= horizon(); }
  std::size_t size(std::size_t n) const;
  const IntMatrix& matrix(std::size_t n) const;
  bool declared_proper() const { return proper_; }

 private:
  std::size_t canonical(std::size_t n) const;

  std::vector<std::size_t> sizes_;
  std::vector<IntMatrix> mats_;
  std::optional<std::size_t> repeat_from_;
  bool proper_;
};

struct DimGroupElement {
  std::size_t level = 0;
  IntVector v;

  friend bool operator==(const DimGroupElement& a, const DimGroupElement& b) {
    return a.level == b.level && a.v == b.v;
  }
};

DimGroupElement dg_element(const DimensionGroupSpec& s, std::size_t level, const std::vector<std::int64_t>& v);
std::string to_string(const DimGroupElement& a);

// (m, A_{m,n} v); throws HorizonError past the horizon of a finite spec.
DimGroupElement dg_push_to_level(const DimensionGroupSpec& s, const DimGroupElement& a, std::size_t m);
// Sum and difference at the larger level.
DimGroupElement dg_add(const DimensionGroupSpec& s, const DimGroupElement& a, const DimGroupElement& b);
DimGroupElement dg_sub(const DimensionGroupSpec& s, const DimGroupElement& a, const DimGroupElement& b);

// Yes when the pushes agree at a level <= horizon. No when every connecting
// map from some level q on has full column rank and the pushes differ at q
// (needs a repetition rule). Otherwise Unknown.
Verdict dg_equal(const DimensionGroupSpec& s, const DimGroupElement& a, const DimGroupElement& b, std::size_t horizon);
// Yes when a push to a level <= horizon is entrywise >= 0. No when a push at a
// level q is negative in every coordinate and all maps from q on are proper.
Verdict dg_is_positive(const DimensionGroupSpec& s, const DimGroupElement& a, std::size_t horizon);

// Sufficient condition for a simple dimension group other than Z: the
// periodic block has a power with every entry >= 2. Unknown otherwise.
Verdict simple_not_z(const DimensionGroupSpec& s);

// (n, delta_v) for v = V_n[index].
DimGroupElement k0_vertex_class(const BratteliDiagram& d, std::size_t level, std::size_t index);
// sum_v a(v) delta_v at level n.
DimGroupElement corner_class(const BratteliDiagram& d, std::size_t level, const std::vector<std::int64_t>& a);

// Elements of the original spec seen in the telescoped one along `subsequence`
// (pushed to the next chosen level), and back.
DimGroupElement dg_to_telescoped(const DimensionGroupSpec& original, const std::vector<std::size_t>& subsequence,
                                 const DimGroupElement& a);
DimGroupElement dg_from_telescoped(const std::vector<std::size_t>& subsequence, const DimGroupElement& a);

struct Rank2KMatrices {
  std::vector<IntMatrix> A, B, T;
};

// A_n T_n = T_{n+1} B_n and shapes.
ValidationReport check_k_compatibility(const Rank2KMatrices& k);
// Counts A_n(i, j) = |v Lambda^{e_1} V_{n+1,i}| and B_n(i, j) = |V_{n,j} Lambda^{e_1} w|
// for every representative v, w. Throws ValidationError when a count
// depends on the representative or the compatibility fails.
Rank2KMatrices rank2_k_matrices(const Rank2Diagram& d);

}  // namespace forge
