#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bgg/rational.hpp"

namespace bgg::linalg {

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix column(const RationalVector& v);
  static Matrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector column_vector(std::size_t c) const;
  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);
RationalVector operator*(const Matrix& a, const RationalVector& v);

Matrix transpose(const Matrix& a);
Matrix hstack(const std::vector<const Matrix*>& blocks, std::size_t rows);
Matrix vstack(const Matrix& top, const Matrix& bottom);
Matrix select_columns(const Matrix& a, const std::vector<std::size_t>& cols);

/// Reduced row echelon form together with the pivot column of every nonzero
/// row.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon row_reduce(Matrix a);
std::size_t rank(const Matrix& a);

/// Basis of {x : a x = 0}, one basis vector per column.
Matrix nullspace(const Matrix& a);

/// Indices of a maximal set of linearly independent columns (leftmost first).
std::vector<std::size_t> independent_columns(const Matrix& a);

/// Some X with a X = b, or nullopt when the system is inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

/// Throws ConsistencyError when a is singular.
Matrix inverse(const Matrix& a);

/// Column-major sparse matrix; the natural layout for operators built one
/// basis image at a time.
class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  /// Adds value to entry (r, c); entries that cancel are removed.
  void add(std::size_t r, std::size_t c, const Rational& value);
  const std::vector<Entry>& column(std::size_t c) const { return columns_[c]; }
  Rational at(std::size_t r, std::size_t c) const;
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  Matrix to_dense() const;
  static SparseMatrix from_dense(const Matrix& m);

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> columns_;  // sorted by row
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator*(const Rational& s, const SparseMatrix& a);
SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b);
RationalVector operator*(const SparseMatrix& a, const RationalVector& v);
SparseMatrix transpose(const SparseMatrix& a);
SparseMatrix sparse_hstack(const std::vector<const SparseMatrix*>& blocks, std::size_t rows);
SparseMatrix sparse_vstack(const std::vector<const SparseMatrix*>& blocks, std::size_t cols);

/// Exact rank and null space of a sparse rational matrix. Elimination runs
/// modulo the prime 2^61 - 1; the result is then certified over Q: the
/// modular rank is a lower bound of the rational rank, and the rational
/// reconstruction of the modular null space, once checked to be annihilated
/// exactly, is an upper bound. Whenever the certificate cannot be produced
/// the computation falls back to rational elimination, so results are
/// always exact.
struct CertifiedEchelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot columns, a basis of the column space
  Matrix kernel;                    // basis of {x : a x = 0}, one vector per column
  bool used_fallback = false;
};

CertifiedEchelon certified_echelon(const SparseMatrix& a, bool want_kernel = true);
std::size_t certified_rank(const SparseMatrix& a);
Matrix certified_nullspace(const SparseMatrix& a);
/// Indices of pivot columns forming a basis of the column space.
std::vector<std::size_t> certified_column_basis(const SparseMatrix& a);
/// Rank modulo 2^61 - 1; never exceeds the rational rank.
std::size_t modular_rank(const SparseMatrix& a);

}  // namespace bgg::linalg
