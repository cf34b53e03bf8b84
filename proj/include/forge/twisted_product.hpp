#pragma once

// Twisted products H x_{c,alpha} G, the groupoid G^inf_alpha = H_inf x_{c,alpha} G,
// and bounded certificates for the freeness (wfc) and local contraction (lc)
// conditions.
//
//   r(h, g) = (r(h), r(g))            s(h, g) = (s(h), alpha^c(h)(s(g)))
//   (h1, g1)(h2, g2) = (h1 h2, g1 alpha^-c(h1)(g2))
//   (h, g)^-1 = (h^-1, alpha^c(h)(g^-1))

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forge/graph_groupoid.hpp"
#include "forge/groupoid_core.hpp"

namespace forge {

// Finite H and G; the product is materialized with element (h, g) at id h * |G| + g.
class TwistedProduct {
 public:
  // Throws ValidationError when c is not a cocycle or alpha not an
  // automorphism, PreconditionError when a Z/N-valued c has alpha^N != id.
  TwistedProduct(FiniteGroupoid H, Cocycle c, FiniteGroupoid G, GroupoidAutomorphism alpha);

  const FiniteGroupoid& groupoid() const { return product_; }
  const FiniteGroupoid& H() const { return H_; }
  const FiniteGroupoid& G() const { return G_; }
  const Cocycle& cocycle() const { return c_; }
  const GroupoidAutomorphism& alpha() const { return alpha_; }

  ElementId element(ElementId h, ElementId g) const { return h * G_.size() + g; }
  std::pair<ElementId, ElementId> split(ElementId x) const { return {x / G_.size(), x % G_.size()}; }

 private:
  FiniteGroupoid H_;
  Cocycle c_;
  FiniteGroupoid G_;
  GroupoidAutomorphism alpha_;
  FiniteGroupoid product_;
};

// Finite form of the principality criterion: the product is principal iff G
// is principal and alpha^l(x) lies outside [x] for every unit x of G and
// every l = c(h), h a non-unit in the isotropy of H.
struct PrincipalityAnalysis {
  bool g_principal = true;
  std::vector<std::int64_t> isotropy_degrees;
  // (x, l) with alpha^l(x) in [x] and l in isotropy_degrees
  std::optional<std::pair<ElementId, std::int64_t>> collision;
  // A non-unit isotropy element of the product, present iff the criterion
  // predicts non-principal.
  std::optional<ElementId> exhibit;

  bool predicts_principal() const { return g_principal && !collision; }
};

PrincipalityAnalysis analyze_principality(const TwistedProduct& t);

// ---------------------------------------------------------------- G^inf_alpha over a finite G

struct GinfElement {
  GermElement h;
  ElementId g = 0;
  friend bool operator==(const GinfElement&, const GinfElement&) = default;
};

struct GinfUnit {
  PathValue x;
  ElementId u = 0;
  friend bool operator==(const GinfUnit&, const GinfUnit&) = default;
};

class GinfFinite {
 public:
  GinfFinite(FiniteGroupoid G, GroupoidAutomorphism alpha);

  const FiniteGroupoid& G() const { return G_; }
  const GroupoidAutomorphism& alpha() const { return alpha_; }

  GinfElement make(GermElement h, ElementId g) const;
  GinfUnit range(const GinfElement& a) const;
  GinfUnit source(const GinfElement& a) const;
  std::optional<GinfElement> product(const GinfElement& a, const GinfElement& b) const;
  GinfElement inverse(const GinfElement& a) const;
  bool is_unit(const GinfElement& a) const;
  std::string to_string(const GinfElement& a) const;

 private:
  FiniteGroupoid G_;
  GroupoidAutomorphism alpha_;
};

// ((y0, -l, y0), g0) with y0 = e0 e0 e0 ...; when r(g0) = x and
// s(g0) = alpha^l(x) this element has equal range and source.
GinfElement isotropy_exhibit(const GinfFinite& ginf, ElementId g0, std::int64_t l);

// ---------------------------------------------------------------- (wfc)

enum class WfcWitnessKind {
  Exhaustive,  // finite G: every unit checked
  Growth,      // Bratteli: every multiplicity at levels [level, depth) exceeds |l|
  Periodic,    // Bratteli with a repetition rule: no alpha^l-fixed cycle in the periodic block
  OrderBound,  // rank-2: l m_t - s is nonzero mod o(e) for every blue e at level t
};

struct WfcWitness {
  std::int64_t l = 0;
  WfcWitnessKind kind = WfcWitnessKind::Exhaustive;
  std::size_t level = 0;
  std::string reason;
};

struct WfcCounterexample {
  std::int64_t l = 0;
  std::string description;
  // finite G: a unit x and an arrow g0 with r(g0) = x, s(g0) = alpha^l(x)
  std::optional<ElementId> unit, arrow;
  // Bratteli: one period of an alpha^l-fixed infinite path, repeated forever
  std::vector<EdgeId> period;
};

struct WfcCertificate {
  std::size_t depth = 0;
  std::int64_t lbound = 0;
  Decision verdict = Decision::Unknown;
  std::vector<WfcWitness> witnesses;  // one per l in 1..lbound when verdict is Yes
  std::optional<WfcCounterexample> counterexample;
  std::string note;

  // certificate xor counterexample, and the verdict agrees
  bool well_formed() const;
};

WfcCertificate check_wfc(const FiniteGroupoid& G, const GroupoidAutomorphism& alpha, std::int64_t L);
// For the edge-cycling automorphism of d. Needs horizon >= D or a repetition rule.
WfcCertificate check_wfc(const BratteliDiagram& d, std::size_t D, std::int64_t L);

bool verify_counterexample(const FiniteGroupoid& G, const GroupoidAutomorphism& alpha, const WfcCounterexample& ce);
bool verify_counterexample(const BratteliDiagram& d, const WfcCounterexample& ce);
// Recomputes every witness of a Bratteli certificate from the diagram alone.
ValidationReport reverify(const BratteliDiagram& d, const WfcCertificate& cert);

// ---------------------------------------------------------------- (lc)

struct LcEntry {
  std::string basis_element;
  std::int64_t l = 0;  // least l >= 1 with alpha^-l(V) inside V
  bool verified = false;
};

struct LcWitness {
  std::vector<LcEntry> entries;
  bool all_verified() const;
};

// Each basis element is a set of units of G.
LcWitness check_lc(const FiniteGroupoid& G, const GroupoidAutomorphism& alpha,
                   const std::vector<std::vector<ElementId>>& basis);
// Each basis element is Z(mu).
LcWitness check_lc(const Graph& g, const SymbolicAutomorphism& alpha, const std::vector<PathWord>& basis,
                   std::int64_t cap = 1 << 22);

// ---------------------------------------------------------------- product bisections

// G-side of a product bisection over a finite G: a set of elements, sorted.
class FiniteGBackend {
 public:
  using Set = std::vector<ElementId>;

  FiniteGBackend(const FiniteGroupoid& G, const GroupoidAutomorphism& alpha) : G_(&G), alpha_(&alpha) {}

  Set apply(const Set& a, std::int64_t k) const;
  Set product(const Set& a, const Set& b) const;
  Set inverse(const Set& a) const;
  Set range(const Set& a) const;
  Set source(const Set& a) const;
  bool subset(const Set& a, const Set& b) const;
  bool empty(const Set& a) const { return a.empty(); }
  bool trivial() const { return G_->size() == 1; }
  std::string describe(const Set& a) const;

 private:
  const FiniteGroupoid* G_;
  const GroupoidAutomorphism* alpha_;
};

// G-side over a graph groupoid: finite disjoint unions of basic bisections.
class GraphGBackend {
 public:
  using Set = BisectionSum;

  GraphGBackend(const Graph& g, SymbolicAutomorphism alpha) : g_(&g), alpha_(std::move(alpha)) {}

  Set apply(const Set& a, std::int64_t k) const { return alpha_.apply(a, k); }
  Set product(const Set& a, const Set& b) const { return bisection_product(*g_, a, b); }
  Set inverse(const Set& a) const { return bisection_inverse(a); }
  Set range(const Set& a) const;
  Set source(const Set& a) const;
  bool subset(const Set& a, const Set& b) const { return forge::subset(*g_, a, b); }
  bool empty(const Set& a) const { return a.empty(); }
  bool trivial() const { return false; }
  std::string describe(const Set& a) const { return to_string(*g_, a); }

 private:
  const Graph* g_;
  SymbolicAutomorphism alpha_;
};

// U x A with U a basic bisection of H_inf.
template <class Backend>
struct ProductBisection {
  BasicBisection h;
  typename Backend::Set g;
};

template <class Backend>
bool is_empty(const Backend& b, const ProductBisection<Backend>& x) {
  return is_empty(hinf_graph(), x.h) || b.empty(x.g);
}

template <class Backend>
std::optional<ProductBisection<Backend>> product(const Backend& b, const ProductBisection<Backend>& x,
                                                 const ProductBisection<Backend>& y) {
  const auto hh = bisection_product(hinf_graph(), x.h, y.h);
  if (hh.empty()) return std::nullopt;
  ProductBisection<Backend> out{hh.terms.front(), b.product(x.g, b.apply(y.g, -x.h.degree()))};
  if (is_empty(b, out)) return std::nullopt;
  return out;
}

template <class Backend>
ProductBisection<Backend> inverse(const Backend& b, const ProductBisection<Backend>& x) {
  return {bisection_inverse(x.h), b.apply(b.inverse(x.g), x.h.degree())};
}

template <class Backend>
ProductBisection<Backend> range_of(const Backend& b, const ProductBisection<Backend>& x) {
  return {unit_bisection(range_set(x.h)), b.range(x.g)};
}

template <class Backend>
ProductBisection<Backend> source_of(const Backend& b, const ProductBisection<Backend>& x) {
  return {unit_bisection(source_set(x.h)), b.apply(b.source(x.g), x.h.degree())};
}

template <class Backend>
bool subset(const Backend& b, const ProductBisection<Backend>& x, const ProductBisection<Backend>& y) {
  if (is_empty(b, x)) return true;
  return contains(hinf_graph(), y.h, x.h) && b.subset(x.g, y.g);
}

template <class Backend>
bool same_set(const Backend& b, const ProductBisection<Backend>& x, const ProductBisection<Backend>& y) {
  return subset(b, x, y) && subset(b, y, x);
}

template <class Backend>
std::string to_string(const Backend& b, const ProductBisection<Backend>& x) {
  return to_string(hinf_graph(), x.h) + " × " + b.describe(x.g);
}

// ---------------------------------------------------------------- contracting bisections

// B = Z(lambda^2l, lambda^l) x alpha^-Nl(V_G), N = |lambda|, for
// W = V_H x V_G. For a trivial G the plain B = Z(lambda e_1, lambda) x V_G is used.
template <class Backend>
struct ContractingWitness {
  Cylinder w_h;
  typename Backend::Set w_g;
  PathWord lambda;
  bool lambda_extended = false;
  std::int64_t l = 0;
  std::int64_t N = 0;
  ProductBisection<Backend> B;
  ProductBisection<Backend> range, source;  // from the structure maps
};

// Throws PreconditionError when l < 1 or alpha^-l(V_G) is not inside V_G
// (run check_lc first), or when V_H is empty.
template <class Backend>
ContractingWitness<Backend> contracting_bisection_witness(const Backend& b, const Cylinder& v_h,
                                                          const typename Backend::Set& v_g, std::int64_t l) {
  const auto& rose = hinf_graph();
  if (l < 1) throw PreconditionError("no lc-witness for V_G: run check_lc to obtain l >= 1");
  if (!b.subset(b.apply(v_g, -l), v_g))
    throw PreconditionError("alpha^-" + std::to_string(l) + "(V_G) is not inside V_G: run check_lc");
  if (is_empty(rose, v_h) || b.empty(v_g)) throw PreconditionError("W is empty");
  ContractingWitness<Backend> w;
  w.w_h = v_h;
  w.w_g = v_g;
  w.l = l;
  w.lambda = find_cylinder_inside(rose, v_h);
  if (b.trivial()) {
    w.N = 1;
    w.B = {make_bisection(rose, concat(w.lambda, hinf_path({1})), w.lambda), v_g};
  } else {
    if (w.lambda.is_vertex()) {
      w.lambda = concat(w.lambda, hinf_path({1}));
      w.lambda_extended = true;
    }
    w.N = static_cast<std::int64_t>(w.lambda.length());
    PathWord once = hinf_vertex(), twice = hinf_vertex();
    for (std::int64_t i = 0; i < l; ++i) once = concat(once, w.lambda);
    twice = concat(once, once);
    w.B = {make_bisection(rose, twice, once), b.apply(v_g, -checked::mul(w.N, l))};
  }
  w.range = range_of(b, w.B);
  w.source = source_of(b, w.B);
  return w;
}

// Checks r(B) strictly inside s(B) inside W, and independently that
// BB^-1 = r(B) and B^-1 B = s(B) through the product calculus.
template <class Backend>
ValidationReport verify(const Backend& b, const ContractingWitness<Backend>& w) {
  ValidationReport report;
  const auto where = to_string(b, w.B);
  const auto bb = product(b, w.B, inverse(b, w.B));
  if (!bb || !same_set(b, *bb, w.range)) report.add("r(B) = B B^-1", where);
  const auto bb2 = product(b, inverse(b, w.B), w.B);
  if (!bb2 || !same_set(b, *bb2, w.source)) report.add("s(B) = B^-1 B", where);
  if (!subset(b, w.range, w.source) || subset(b, w.source, w.range)) report.add("r(B) strictly inside s(B)", where);
  const ProductBisection<Backend> W{unit_bisection(w.w_h), w.w_g};
  if (!subset(b, w.source, W)) report.add("s(B) inside W", where);
  if (is_empty(b, w.range)) report.add("r(B) nonempty", where);
  return report;
}

// The H_inf witness Z(lambda e_1, lambda) for W = Z(u \ F).
BasicBisection hinf_contracting_bisection(const Cylinder& w);

// ---------------------------------------------------------------- minimality and stabilization

// Exact: every union over n <= 0 of alpha^n([y]) is the whole unit space.
Verdict minimality_verdict(const FiniteGroupoid& G, const GroupoidAutomorphism& alpha);
// Cofinality to depth D: Yes when every level n < D reaches all of some
// level m <= D; Unknown otherwise.
Verdict minimality_verdict(const BratteliDiagram& d, std::size_t D);

// alpha x id on G x K_N in the layout of product_with_full_relation.
GroupoidAutomorphism stabilize(const GroupoidAutomorphism& alpha, std::size_t N);

std::string to_string(WfcWitnessKind k);

}  // namespace forge
