#pragma once

// Convolution *-algebras with exact Gaussian-rational coefficients.
//
// Finite backend: functions on a FiniteGroupoid. Symbolic backend: finite
// combinations of 1_U x delta_a on G^inf_alpha = H_inf x_{c,alpha} G with U a
// basic bisection of H_inf and a in a finite G. Equality on the symbolic side
// is decided after refining the supports into disjoint pieces.

#include <map>
#include <string>
#include <vector>

#include "forge/linalg.hpp"
#include "forge/twisted_product.hpp"

namespace forge {

class FiniteConv {
 public:
  explicit FiniteConv(const FiniteGroupoid& G) : G_(&G) {}
  static FiniteConv delta(const FiniteGroupoid& G, ElementId g, GaussRational c = 1);
  // Indicator of the unit space, the identity of the algebra.
  static FiniteConv unit(const FiniteGroupoid& G);

  const FiniteGroupoid& groupoid() const { return *G_; }
  GaussRational operator()(ElementId g) const;
  void add(ElementId g, const GaussRational& c);
  // Nonzero values only.
  const std::map<ElementId, GaussRational>& values() const { return values_; }
  bool is_zero() const { return values_.empty(); }

  FiniteConv& operator+=(const FiniteConv& o);
  FiniteConv& operator-=(const FiniteConv& o);
  friend FiniteConv operator+(FiniteConv a, const FiniteConv& b) { return a += b; }
  friend FiniteConv operator-(FiniteConv a, const FiniteConv& b) { return a -= b; }
  friend FiniteConv operator*(const GaussRational& c, const FiniteConv& a);
  friend bool operator==(const FiniteConv& a, const FiniteConv& b);

 private:
  const FiniteGroupoid* G_;
  std::map<ElementId, GaussRational> values_;
};

// Throws PreconditionError when the operands live on different groupoids.
FiniteConv convolve(const FiniteConv& x, const FiniteConv& y);
FiniteConv involution(const FiniteConv& x);
// f o alpha^k
FiniteConv compose_automorphism(const FiniteConv& f, const GroupoidAutomorphism& alpha, std::int64_t k);
std::string to_string(const FiniteConv& x);

// G_u = s^-1(u) in id order; rows and columns of R_u.
std::vector<ElementId> regular_fiber(const FiniteGroupoid& G, ElementId u);
// R_u(x) delta_g = sum over h in G^{r(g)} of x(h) delta_{hg}.
GaussMatrix regular_representation(const FiniteConv& x, ElementId u);

// 1_{H^0} x f on a finite twisted product.
FiniteConv iota(const TwistedProduct& t, const FiniteConv& f);

// ---------------------------------------------------------------- symbolic backend

class GinfAlgebra {
 public:
  GinfAlgebra(FiniteGroupoid G, GroupoidAutomorphism alpha);

  const FiniteGroupoid& G() const { return G_; }
  const GroupoidAutomorphism& alpha() const { return alpha_; }

 private:
  FiniteGroupoid G_;
  GroupoidAutomorphism alpha_;
};

// coeff * 1_U x delta_a
struct SymbolicTerm {
  BasicBisection U;
  ElementId a = 0;
  GaussRational coeff;
};

class SymbolicConv {
 public:
  explicit SymbolicConv(const GinfAlgebra& A) : A_(&A) {}
  SymbolicConv(const GinfAlgebra& A, std::vector<SymbolicTerm> terms);

  const GinfAlgebra& algebra() const { return *A_; }
  const std::vector<SymbolicTerm>& terms() const { return terms_; }
  void add(SymbolicTerm t);

  SymbolicConv& operator+=(const SymbolicConv& o);
  SymbolicConv& operator-=(const SymbolicConv& o);
  friend SymbolicConv operator+(SymbolicConv a, const SymbolicConv& b) { return a += b; }
  friend SymbolicConv operator-(SymbolicConv a, const SymbolicConv& b) { return a -= b; }

 private:
  const GinfAlgebra* A_;
  std::vector<SymbolicTerm> terms_;
};

// Pairwise disjoint nonempty supports per G element, zero coefficients dropped.
SymbolicConv canonical(const SymbolicConv& x);
bool is_zero(const SymbolicConv& x);
bool equal(const SymbolicConv& x, const SymbolicConv& y);

SymbolicConv convolve(const SymbolicConv& x, const SymbolicConv& y);
SymbolicConv involution(const SymbolicConv& x);
// Value at a single element of G^inf.
GaussRational evaluate(const SymbolicConv& x, const GinfElement& e);
std::string to_string(const SymbolicConv& x);

// iota_G(f) = 1_{Z(v, v)} x f
SymbolicConv iota(const GinfAlgebra& A, const FiniteConv& f);
// x_i x f = 1_{Z(e_i, v)} x f; with f the unit indicator this is x_i.
SymbolicConv generator(const GinfAlgebra& A, EdgeId i, const FiniteConv& f);
SymbolicConv generator(const GinfAlgebra& A, EdgeId i);
// iota_G^-1; throws InternalError when x is not in the image of iota_G.
FiniteConv iota_inverse(const SymbolicConv& x);
// <x, y> = iota_G^-1(x* y)
FiniteConv module_inner_product(const SymbolicConv& x, const SymbolicConv& y);

// Symbolic elements have infinite fibers; always throws PreconditionError.
GaussMatrix regular_representation(const SymbolicConv& x, ElementId u);

}  // namespace forge
