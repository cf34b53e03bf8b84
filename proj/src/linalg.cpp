#include "forge/linalg.hpp"

namespace forge {

bool is_hermitian(const GaussMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!(m(i, j) == conj(m(j, i)))) return false;
  return true;
}

bool is_positive_semidefinite(const GaussMatrix& m) {
  if (!is_hermitian(m)) return false;
  // Eliminate one diagonal pivot at a time: a negative pivot fails, a zero
  // pivot needs its whole row to vanish, a positive one is replaced by its
  // Schur complement.
  GaussMatrix a = m;
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const GaussRational d = a(k, k);
    if (!d.is_real()) throw InternalError("diagonal of Hermitian matrix is not real");
    const int sign = d.real().sign();
    if (sign < 0) return false;
    if (sign == 0) {
      for (Eigen::Index j = k + 1; j < a.cols(); ++j)
        if (!a(k, j).is_zero()) return false;
      continue;
    }
    for (Eigen::Index i = k + 1; i < a.rows(); ++i) {
      if (a(i, k).is_zero()) continue;
      const GaussRational factor = a(i, k) / d;
      for (Eigen::Index j = k + 1; j < a.cols(); ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return true;
}

std::vector<std::int64_t> to_std(const IntVector& v) { return {v.data(), v.data() + v.size()}; }

IntVector from_std(const std::vector<std::int64_t>& v) {
  IntVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace forge
