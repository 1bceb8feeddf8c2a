#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace altbc {

using Complex = std::complex<double>;

/// Dense row-major complex matrix, sized for the small per-scheme coefficient
/// systems (at most 6 rows by 8 columns).
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Complex& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  /// Copy of the columns [first, first + count).
  CMat columns(std::size_t first, std::size_t count) const;

  bool operator==(const CMat&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> a_;
};

/// Singular values in descending order, via one-sided Jacobi. Computes small
/// singular values with high relative accuracy, so structural zeros land many
/// orders of magnitude below the rank threshold.
std::vector<double> singular_values(const CMat& m);

/// Number of singular values above rel_tol times `scale`; `scale` defaults to
/// the matrix's own largest singular value. Pass the enclosing system's scale
/// when ranking a submatrix whose entries may all be numerical zeros.
std::size_t numeric_rank(const CMat& m, double rel_tol = 1e-9, double scale = 0.0);

}  // namespace altbc
