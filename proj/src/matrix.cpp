#include "qwa/matrix.hpp"

#include <stdexcept>

namespace qwa {

CVector CVector::basis(std::size_t n, std::size_t k) {
  if (k >= n) throw std::invalid_argument("CVector::basis: index out of range");
  CVector v = zero(n);
  v.entries[k] = GaussianRational(1);
  return v;
}

Rational CVector::norm_sq() const {
  Rational total;
  for (const auto& e : entries) total += e.norm_sq();
  return total;
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
  return m;
}

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const GaussianRational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

CVector mat_apply(const CMatrix& m, const CVector& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("mat_apply: dimension mismatch");
  CVector out = CVector::zero(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.entries[i] += m.at(i, j) * v.entries[j];
  return out;
}

CMatrix transpose(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.at(j, i) = m.at(i, j);
  return out;
}

CMatrix conj_transpose(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.at(j, i) = m.at(i, j).conj();
  return out;
}

bool is_unitary(const CMatrix& m) {
  if (m.rows() != m.cols()) return false;
  return mat_mul(m, conj_transpose(m)) == CMatrix::identity(m.rows());
}

}  // namespace qwa
