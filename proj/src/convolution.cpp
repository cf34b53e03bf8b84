#include "forge/convolution.hpp"

#include <sstream>

#include "forge/error.hpp"

namespace forge {

namespace {

bool same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (&a == &b) return true;
  return a.size() == b.size() && a.table() == b.table() && a.units() == b.units();
}

void require_same(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (!same_groupoid(a, b)) throw PreconditionError("operands live on different groupoids");
}

}  // namespace

FiniteConv FiniteConv::delta(const FiniteGroupoid& G, ElementId g, GaussRational c) {
  if (g >= G.size()) throw PreconditionError("no element " + std::to_string(g));
  FiniteConv x(G);
  x.add(g, c);
  return x;
}

FiniteConv FiniteConv::unit(const FiniteGroupoid& G) {
  FiniteConv x(G);
  for (ElementId u : G.units()) x.add(u, 1);
  return x;
}

GaussRational FiniteConv::operator()(ElementId g) const {
  auto it = values_.find(g);
  return it == values_.end() ? GaussRational(0) : it->second;
}

void FiniteConv::add(ElementId g, const GaussRational& c) {
  if (g >= G_->size()) throw PreconditionError("no element " + std::to_string(g));
  auto& v = values_[g];
  v += c;
  if (v.is_zero()) values_.erase(g);
}

FiniteConv& FiniteConv::operator+=(const FiniteConv& o) {
  require_same(*G_, *o.G_);
  for (const auto& [g, c] : o.values_) add(g, c);
  return *this;
}

FiniteConv& FiniteConv::operator-=(const FiniteConv& o) {
  require_same(*G_, *o.G_);
  for (const auto& [g, c] : o.values_) add(g, -c);
  return *this;
}

FiniteConv operator*(const GaussRational& c, const FiniteConv& a) {
  FiniteConv out(*a.G_);
  for (const auto& [g, v] : a.values_) out.add(g, c * v);
  return out;
}

bool operator==(const FiniteConv& a, const FiniteConv& b) {
  return same_groupoid(*a.G_, *b.G_) && a.values_ == b.values_;
}

FiniteConv convolve(const FiniteConv& x, const FiniteConv& y) {
  require_same(x.groupoid(), y.groupoid());
  const auto& G = x.groupoid();
  FiniteConv out(G);
  for (const auto& [h, a] : x.values())
    for (const auto& [k, b] : y.values())
      if (auto hk = G.try_compose(h, k)) out.add(*hk, a * b);
  return out;
}

FiniteConv involution(const FiniteConv& x) {
  FiniteConv out(x.groupoid());
  for (const auto& [g, c] : x.values()) out.add(x.groupoid().inverse(g), conj(c));
  return out;
}

FiniteConv compose_automorphism(const FiniteConv& f, const GroupoidAutomorphism& alpha, std::int64_t k) {
  if (alpha.map().size() != f.groupoid().size()) throw PreconditionError("automorphism acts on a different groupoid");
  FiniteConv out(f.groupoid());
  // (f o alpha^k)(g) = f(alpha^k g), so the value at g moves to alpha^-k(g)
  for (const auto& [g, c] : f.values()) out.add(alpha.apply(g, -k), c);
  return out;
}

std::string to_string(const FiniteConv& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : x.values()) {
    if (!first) os << " + ";
    first = false;
    if (!(c == GaussRational(1))) os << c << "*";
    os << "d[" << x.groupoid().label(g) << "]";
  }
  return os.str();
}

std::vector<ElementId> regular_fiber(const FiniteGroupoid& G, ElementId u) {
  if (!G.is_unit(u)) throw PreconditionError(G.label(u) + " is not a unit");
  return G.with_source(u);
}

GaussMatrix regular_representation(const FiniteConv& x, ElementId u) {
  const auto& G = x.groupoid();
  const auto fiber = regular_fiber(G, u);
  std::map<ElementId, Eigen::Index> index;
  for (std::size_t i = 0; i < fiber.size(); ++i) index[fiber[i]] = static_cast<Eigen::Index>(i);
  const auto n = static_cast<Eigen::Index>(fiber.size());
  GaussMatrix R = GaussMatrix::Constant(n, n, GaussRational(0));
  for (ElementId g : fiber)
    for (ElementId h : G.with_source(G.range(g))) {
      const auto v = x(h);
      if (v.is_zero()) continue;
      R(index.at(G.compose(h, g)), index.at(g)) += v;
    }
  return R;
}

FiniteConv iota(const TwistedProduct& t, const FiniteConv& f) {
  require_same(t.G(), f.groupoid());
  FiniteConv out(t.groupoid());
  for (ElementId u : t.H().units())
    for (const auto& [g, c] : f.values()) out.add(t.element(u, g), c);
  return out;
}

// ---------------------------------------------------------------- symbolic backend

GinfAlgebra::GinfAlgebra(FiniteGroupoid G, GroupoidAutomorphism alpha) : G_(std::move(G)), alpha_(std::move(alpha)) {
  const auto r = verify_automorphism(G_, alpha_);
  if (!r.passed()) throw ValidationError("automorphism rejected: " + r.summary());
}

SymbolicConv::SymbolicConv(const GinfAlgebra& A, std::vector<SymbolicTerm> terms) : A_(&A) {
  for (auto& t : terms) add(std::move(t));
}

void SymbolicConv::add(SymbolicTerm t) {
  if (t.a >= A_->G().size()) throw PreconditionError("no element " + std::to_string(t.a) + " in G");
  if (t.coeff.is_zero() || is_empty(hinf_graph(), t.U)) return;
  terms_.push_back(std::move(t));
}

SymbolicConv& SymbolicConv::operator+=(const SymbolicConv& o) {
  if (A_ != o.A_) throw PreconditionError("operands live on different algebras");
  for (const auto& t : o.terms_) add(t);
  return *this;
}

SymbolicConv& SymbolicConv::operator-=(const SymbolicConv& o) {
  if (A_ != o.A_) throw PreconditionError("operands live on different algebras");
  for (const auto& t : o.terms_) add({t.U, t.a, -t.coeff});
  return *this;
}

SymbolicConv canonical(const SymbolicConv& x) {
  const auto& rose = hinf_graph();
  std::map<ElementId, std::vector<std::pair<BasicBisection, GaussRational>>> by_a;
  for (const auto& t : x.terms()) {
    auto& pieces = by_a[t.a];
    std::vector<std::pair<BasicBisection, GaussRational>> next;
    BisectionSum remaining{{t.U}};
    for (const auto& [P, d] : pieces) {
      const auto meet = bisection_intersection(rose, P, t.U);
      if (!meet || is_empty(rose, *meet)) {
        next.emplace_back(P, d);
        continue;
      }
      next.emplace_back(*meet, d + t.coeff);
      for (const auto& q : difference(rose, P, *meet).terms) next.emplace_back(q, d);
      remaining = difference(rose, remaining, BisectionSum{{*meet}});
    }
    for (const auto& r : remaining.terms) next.emplace_back(r, t.coeff);
    pieces = std::move(next);
  }
  SymbolicConv out(x.algebra());
  for (const auto& [a, pieces] : by_a)
    for (const auto& [U, c] : pieces) out.add({U, a, c});
  return out;
}

bool is_zero(const SymbolicConv& x) { return canonical(x).terms().empty(); }

bool equal(const SymbolicConv& x, const SymbolicConv& y) { return is_zero(x - y); }

SymbolicConv convolve(const SymbolicConv& x, const SymbolicConv& y) {
  if (&x.algebra() != &y.algebra()) throw PreconditionError("operands live on different algebras");
  const auto& A = x.algebra();
  const auto& G = A.G();
  SymbolicConv out(A);
  for (const auto& s : x.terms())
    for (const auto& t : y.terms()) {
      const std::int64_t c = s.U.degree();
      // (h, a)(h', b) needs alpha^c(s(a)) = r(b)
      if (A.alpha().apply(G.source(s.a), c) != G.range(t.a)) continue;
      const ElementId ab = G.compose(s.a, A.alpha().apply(t.a, -c));
      for (const auto& U : bisection_product(hinf_graph(), s.U, t.U).terms) out.add({U, ab, s.coeff * t.coeff});
    }
  return canonical(out);
}

SymbolicConv involution(const SymbolicConv& x) {
  const auto& A = x.algebra();
  SymbolicConv out(A);
  for (const auto& t : x.terms())
    out.add({bisection_inverse(t.U), A.alpha().apply(A.G().inverse(t.a), t.U.degree()), conj(t.coeff)});
  return out;
}

GaussRational evaluate(const SymbolicConv& x, const GinfElement& e) {
  GaussRational v(0);
  for (const auto& t : x.terms())
    if (t.a == e.g && contains(hinf_graph(), t.U, e.h)) v += t.coeff;
  return v;
}

std::string to_string(const SymbolicConv& x) {
  if (x.terms().empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : x.terms()) {
    if (!first) os << " + ";
    first = false;
    if (!(t.coeff == GaussRational(1))) os << t.coeff << "*";
    os << "1[" << to_string(hinf_graph(), t.U) << "] x d[" << x.algebra().G().label(t.a) << "]";
  }
  return os.str();
}

namespace {

void require_same_g(const GinfAlgebra& A, const FiniteConv& f) {
  if (!same_groupoid(A.G(), f.groupoid())) throw PreconditionError("function lives on a different groupoid than G");
}

BasicBisection whole_unit_space() { return unit_bisection(make_cylinder(hinf_graph(), hinf_vertex())); }

}  // namespace

SymbolicConv iota(const GinfAlgebra& A, const FiniteConv& f) {
  require_same_g(A, f);
  SymbolicConv out(A);
  for (const auto& [g, c] : f.values()) out.add({whole_unit_space(), g, c});
  return out;
}

SymbolicConv generator(const GinfAlgebra& A, EdgeId i, const FiniteConv& f) {
  require_same_g(A, f);
  const auto U = make_bisection(hinf_graph(), hinf_path({i}), hinf_vertex());
  SymbolicConv out(A);
  for (const auto& [g, c] : f.values()) out.add({U, g, c});
  return out;
}

SymbolicConv generator(const GinfAlgebra& A, EdgeId i) { return generator(A, i, FiniteConv::unit(A.G())); }

FiniteConv iota_inverse(const SymbolicConv& x) {
  const auto& rose = hinf_graph();
  const auto& A = x.algebra();
  const auto c = canonical(x);
  std::map<ElementId, std::vector<const SymbolicTerm*>> by_a;
  for (const auto& t : c.terms()) by_a[t.a].push_back(&t);
  FiniteConv out(A.G());
  const BisectionSum whole{{whole_unit_space()}};
  for (const auto& [a, terms] : by_a) {
    BisectionSum support;
    for (const auto* t : terms) {
      if (!(t->coeff == terms.front()->coeff))
        throw InternalError("support escapes the image of iota: coefficient varies at " + A.G().label(a));
      support.terms.push_back(t->U);
    }
    if (!same_set(rose, support, whole))
      throw InternalError("support escapes the image of iota: " + to_string(rose, support) + " at " + A.G().label(a));
    out.add(a, terms.front()->coeff);
  }
  return out;
}

FiniteConv module_inner_product(const SymbolicConv& x, const SymbolicConv& y) {
  return iota_inverse(convolve(involution(x), y));
}

GaussMatrix regular_representation(const SymbolicConv&, ElementId) {
  throw PreconditionError("regular representations need a finite backend: fibers of G^inf are infinite");
}

}  // namespace forge
