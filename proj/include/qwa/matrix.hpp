#pragma once

#include "qwa/gaussian.hpp"

#include <cstddef>
#include <vector>

namespace qwa {

// Amplitude vector over Q(i).
struct CVector {
  std::vector<GaussianRational> entries;

  static CVector zero(std::size_t n) { return CVector{std::vector<GaussianRational>(n)}; }
  static CVector basis(std::size_t n, std::size_t k);

  std::size_t size() const { return entries.size(); }
  Rational norm_sq() const;
  bool operator==(const CVector&) const = default;
};

// Dense row-major matrix over Q(i).
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GaussianRational& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const GaussianRational& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<GaussianRational> entries_;
};

CMatrix mat_mul(const CMatrix& a, const CMatrix& b);
CVector mat_apply(const CMatrix& m, const CVector& v);
CMatrix transpose(const CMatrix& m);
CMatrix conj_transpose(const CMatrix& m);

// Exact test: m is square and m * m^dagger equals the identity.
bool is_unitary(const CMatrix& m);

}  // namespace qwa
