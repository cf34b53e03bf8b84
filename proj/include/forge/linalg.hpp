#pragma once

// Dense exact matrices. Everything is an Eigen matrix templated on the scalar;
// integer products go through checked_product so that path counts never wrap.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "forge/scalar.hpp"

namespace forge {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = Vector<std::int64_t>;
using RationalMatrix = Matrix<Rational>;
using GaussMatrix = Matrix<GaussRational>;

// Overflow-checked integer product a * b.
template <typename DerivedA, typename DerivedB>
IntMatrix checked_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.rows()) throw StructuralError("matrix product shape mismatch");
  IntMatrix out = IntMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        out(i, j) = checked::add(out(i, j), checked::mul(aik, b(k, j)));
    }
  return out;
}

// Every row and every column has a nonzero entry.
template <typename Derived>
bool is_proper(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    bool any = false;
    for (Eigen::Index j = 0; j < m.cols(); ++j) any = any || m(i, j) != 0;
    if (!any) return false;
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    bool any = false;
    for (Eigen::Index i = 0; i < m.rows(); ++i) any = any || m(i, j) != 0;
    if (!any) return false;
  }
  return true;
}

template <typename Derived>
bool is_nonnegative(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) return false;
  return true;
}

template <typename Derived>
bool is_diagonal(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0) return false;
  return true;
}

template <typename Derived>
typename Derived::Scalar min_entry(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) throw PreconditionError("min_entry of empty matrix");
  auto best = m(0, 0);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) < best) best = m(i, j);
  return best;
}

template <typename Derived>
RationalMatrix to_rational(const Eigen::MatrixBase<Derived>& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

// Rank over the field of fractions, by exact Gaussian elimination.
template <typename Scalar>
Eigen::Index exact_rank(Matrix<Scalar> m) {
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < m.cols() && rank < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < m.rows(); ++r)
      if (!(m(r, col) == Scalar(0))) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    m.row(rank).swap(m.row(pivot));
    for (Eigen::Index r = rank + 1; r < m.rows(); ++r) {
      if (m(r, col) == Scalar(0)) continue;
      const Scalar factor = m(r, col) / m(rank, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) = m(r, c) - factor * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

template <typename Derived>
Eigen::Index rational_rank(const Eigen::MatrixBase<Derived>& m) {
  return exact_rank<Rational>(to_rational(m));
}

// Injective as a map Z^cols -> Z^rows (equivalently, full column rank over Q).
template <typename Derived>
bool is_injective(const Eigen::MatrixBase<Derived>& m) {
  return rational_rank(m) == m.cols();
}

// Exact determinant of a square matrix over a field.
template <typename Scalar>
Scalar exact_determinant(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) throw StructuralError("determinant of non-square matrix");
  Scalar det(1);
  const Eigen::Index n = m.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (!(m(r, col) == Scalar(0))) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Scalar(0);
    if (pivot != col) {
      m.row(col).swap(m.row(pivot));
      det = -det;
    }
    det = det * m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col) == Scalar(0)) continue;
      const Scalar factor = m(r, col) / m(col, col);
      for (Eigen::Index c = col; c < n; ++c) m(r, c) = m(r, c) - factor * m(col, c);
    }
  }
  return det;
}

// Conjugate transpose for exact complex matrices.
inline GaussMatrix adjoint(const GaussMatrix& m) {
  GaussMatrix out(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(j, i) = conj(m(i, j));
  return out;
}

inline GaussMatrix exact_product(const GaussMatrix& a, const GaussMatrix& b) {
  if (a.cols() != b.rows()) throw StructuralError("matrix product shape mismatch");
  GaussMatrix out = GaussMatrix::Constant(a.rows(), b.cols(), GaussRational(0));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

// Hermitian positive semidefiniteness by exact symmetric elimination.
bool is_hermitian(const GaussMatrix& m);
bool is_positive_semidefinite(const GaussMatrix& m);

std::vector<std::int64_t> to_std(const IntVector& v);
IntVector from_std(const std::vector<std::int64_t>& v);

}  // namespace forge
