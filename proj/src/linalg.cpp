#include "bgg/linalg.hpp"

#include <algorithm>
#include <limits>

#include "bgg/errors.hpp"

namespace bgg {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw UsageError("not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace bgg

namespace bgg::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::column(const RationalVector& v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<RationalVector>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw UsageError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalVector Matrix::column_vector(std::size_t c) const {
  RationalVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

namespace {

Matrix dense_rational_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  Rational tmp;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Rational& bkj = b(k, j);
        if (sgn(bkj) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), aik.get_mpq_t(), bkj.get_mpq_t());
        out(i, j) += tmp;
      }
    }
  }
  return out;
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ConsistencyError("matrix sum shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ConsistencyError("matrix difference shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

Matrix operator*(const Rational& s, const Matrix& a) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
  return out;
}

RationalVector operator*(const Matrix& a, const RationalVector& v) {
  if (a.cols() != v.size()) throw ConsistencyError("matrix-vector shape mismatch");
  RationalVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0 && sgn(v[j]) != 0) out[i] += a(i, j) * v[j];
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix hstack(const std::vector<const Matrix*>& blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const Matrix* m : blocks) {
    if (m->cols() > 0 && m->rows() != rows) throw ConsistencyError("hstack row mismatch");
    cols += m->cols();
  }
  Matrix out(rows, cols);
  std::size_t offset = 0;
  for (const Matrix* m : blocks) {
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j) out(i, offset + j) = (*m)(i, j);
    offset += m->cols();
  }
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw ConsistencyError("vstack column mismatch");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
  return out;
}

Matrix select_columns(const Matrix& a, const std::vector<std::size_t>& cols) {
  Matrix out(a.rows(), cols.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(i, cols[j]);
  return out;
}

namespace {

// Gaussian elimination in place. With full == true the result is the reduced
// row echelon form, otherwise only entries below the pivots are cleared.
std::vector<std::size_t> eliminate(Matrix& a, bool full) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t row = 0;
  Rational factor, tmp;
  std::vector<std::size_t> support;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = rows;
    for (std::size_t r = row; r < rows; ++r) {
      if (sgn(a(r, col)) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != row) {
      for (std::size_t c = col; c < cols; ++c) std::swap(a(pivot, c), a(row, c));
    }
    Rational inv = 1 / a(row, col);
    support.clear();
    for (std::size_t c = col; c < cols; ++c) {
      if (sgn(a(row, c)) != 0) {
        a(row, c) *= inv;
        support.push_back(c);
      }
    }
    const std::size_t start = full ? 0 : row + 1;
    for (std::size_t r = start; r < rows; ++r) {
      if (r == row || sgn(a(r, col)) == 0) continue;
      factor = a(r, col);
      for (std::size_t c : support) {
        mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), a(row, c).get_mpq_t());
        mpq_sub(a(r, c).get_mpq_t(), a(r, c).get_mpq_t(), tmp.get_mpq_t());
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Echelon row_reduce(Matrix a) {
  auto pivots = eliminate(a, true);
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  // Eliminate along the shorter side.
  Matrix work = a.rows() <= a.cols() ? a : transpose(a);
  return eliminate(work, false).size();
}

Matrix nullspace(const Matrix& a) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return Matrix::identity(n);
  Echelon e = row_reduce(a);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis(n, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, f);
  }
  return basis;
}

std::vector<std::size_t> independent_columns(const Matrix& a) {
  Matrix work = a;
  return eliminate(work, false);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ConsistencyError("solve shape mismatch");
  const std::size_t n = a.cols();
  Matrix aug = hstack({&a, &b}, a.rows());
  Echelon e = row_reduce(std::move(aug));
  Matrix x(n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const std::size_t p = e.pivots[r];
    if (p >= n) return std::nullopt;  // pivot in the right-hand side
    for (std::size_t j = 0; j < b.cols(); ++j) x(p, j) = e.reduced(r, n + j);
  }
  return x;
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw ConsistencyError("inverse of a non-square matrix");
  auto x = solve(a, Matrix::identity(a.rows()));
  if (!x || rank(a) != a.rows()) throw ConsistencyError("inverse of a singular matrix");
  return *x;
}

// ---------------------------------------------------------------------------

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& value) {
  if (sgn(value) == 0) return;
  auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) {
    it->second += value;
    if (sgn(it->second) == 0) col.erase(it);
  } else {
    col.insert(it, {r, value});
  }
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) return it->second;
  return 0;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

Matrix SparseMatrix::to_dense() const {
  Matrix m(rows_, cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& [r, v] : columns_[c]) m(r, c) = v;
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
  SparseMatrix out(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (sgn(m(r, c)) != 0) out.columns_[c].push_back({r, m(r, c)});
  return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
}

namespace {

// Integer form of a sparse matrix with one common denominator per row (or
// per column), when every scaled entry fits in 64 bits.
struct ScaledInteger {
  bool ok = false;
  std::vector<std::vector<std::pair<std::size_t, long>>> columns;
  std::vector<long> scale;  // per row or per column
  long max_abs = 0;         // largest |entry|
  long max_row_l1 = 0;      // largest row sum of |entry|
};

ScaledInteger scale_to_integers(const SparseMatrix& m, bool by_rows) {
  ScaledInteger out;
  std::vector<mpz_class> scale(by_rows ? m.rows() : m.cols(), 1);
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c)) {
      mpz_class& s = scale[by_rows ? r : c];
      mpz_lcm(s.get_mpz_t(), s.get_mpz_t(), v.get_den_mpz_t());
    }
  out.scale.reserve(scale.size());
  for (const auto& s : scale) {
    if (!s.fits_slong_p()) return out;
    out.scale.push_back(s.get_si());
  }
  out.columns.resize(m.cols());
  std::vector<__int128> l1(m.rows(), 0);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (const auto& [r, v] : m.column(c)) {
      mpz_class n = v.get_num() * (scale[by_rows ? r : c] / v.get_den());
      if (!n.fits_slong_p()) return out;
      const long x = n.get_si();
      out.columns[c].push_back({r, x});
      out.max_abs = std::max(out.max_abs, x < 0 ? -x : x);
      l1[r] += x < 0 ? -x : x;
    }
  }
  __int128 worst = 0;
  for (const auto& x : l1) worst = std::max(worst, x);
  if (worst > std::numeric_limits<long>::max()) return out;
  out.max_row_l1 = static_cast<long>(worst);
  out.ok = true;
  return out;
}

mpz_class to_mpz(__int128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

// a b through integer arithmetic: a = R^{-1} a', b = b' C^{-1}, and
// a b = R^{-1} (a' b') C^{-1}. Partial sums stay below
// max_row_l1(a') * max|b'| < 2^126, so __int128 accumulation is exact.
std::optional<SparseMatrix> integer_product(const SparseMatrix& a, const SparseMatrix& b) {
  ScaledInteger ia = scale_to_integers(a, true);
  if (!ia.ok) return std::nullopt;
  ScaledInteger ib = scale_to_integers(b, false);
  if (!ib.ok) return std::nullopt;
  if (static_cast<__int128>(ia.max_row_l1) * ib.max_abs >= (static_cast<__int128>(1) << 126)) return std::nullopt;
  SparseMatrix out(a.rows(), b.cols());
  std::vector<__int128> acc(a.rows(), 0);
  std::vector<bool> touched(a.rows(), false);
  std::vector<std::size_t> rows_used;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    rows_used.clear();
    for (const auto& [k, bv] : ib.columns[c]) {
      for (const auto& [r, av] : ia.columns[k]) {
        acc[r] += static_cast<__int128>(av) * bv;
        if (!touched[r]) {
          touched[r] = true;
          rows_used.push_back(r);
        }
      }
    }
    std::sort(rows_used.begin(), rows_used.end());
    for (std::size_t r : rows_used) {
      if (acc[r] != 0) {
        Rational q(to_mpz(acc[r]), mpz_class(ia.scale[r]) * ib.scale[c]);
        q.canonicalize();
        out.add(r, c, q);
      }
      acc[r] = 0;
      touched[r] = false;
    }
  }
  return out;
}

SparseMatrix rational_product(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows(), b.cols());
  std::vector<Rational> acc(a.rows());
  std::vector<bool> touched(a.rows(), false);
  std::vector<std::size_t> rows_used;
  Rational tmp;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    rows_used.clear();
    for (const auto& [k, bv] : b.column(c)) {
      for (const auto& [r, av] : a.column(k)) {
        mpq_mul(tmp.get_mpq_t(), av.get_mpq_t(), bv.get_mpq_t());
        mpq_add(acc[r].get_mpq_t(), acc[r].get_mpq_t(), tmp.get_mpq_t());
        if (!touched[r]) {
          touched[r] = true;
          rows_used.push_back(r);
        }
      }
    }
    std::sort(rows_used.begin(), rows_used.end());
    for (std::size_t r : rows_used) {
      out.add(r, c, acc[r]);
      acc[r] = 0;
      touched[r] = false;
    }
  }
  return out;
}

}  // namespace

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw ConsistencyError("sparse product shape mismatch");
  if (auto fast = integer_product(a, b)) return std::move(*fast);
  return rational_product(a, b);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ConsistencyError("matrix product shape mismatch");
  if (auto fast = integer_product(SparseMatrix::from_dense(a), SparseMatrix::from_dense(b))) return fast->to_dense();
  return dense_rational_product(a, b);
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ConsistencyError("sparse sum shape mismatch");
  SparseMatrix out = a;
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (const auto& [r, v] : b.column(c)) out.add(r, c, v);
  return out;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  return a + (Rational(-1) * b);
}

SparseMatrix operator*(const Rational& s, const SparseMatrix& a) {
  SparseMatrix out(a.rows(), a.cols());
  if (sgn(s) == 0) return out;
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (const auto& [r, v] : a.column(c)) out.add(r, c, s * v);
  return out;
}

SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) { return a * b - b * a; }

RationalVector operator*(const SparseMatrix& a, const RationalVector& v) {
  if (a.cols() != v.size()) throw ConsistencyError("sparse matrix-vector shape mismatch");
  RationalVector out(a.rows());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (sgn(v[c]) == 0) continue;
    for (const auto& [r, x] : a.column(c)) out[r] += x * v[c];
  }
  return out;
}

SparseMatrix transpose(const SparseMatrix& a) {
  SparseMatrix out(a.cols(), a.rows());
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (const auto& [r, v] : a.column(c)) out.add(c, r, v);
  return out;
}

SparseMatrix sparse_hstack(const std::vector<const SparseMatrix*>& blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto* b : blocks) {
    if (b->rows() != rows) throw ConsistencyError("sparse hstack row mismatch");
    cols += b->cols();
  }
  SparseMatrix out(rows, cols);
  std::size_t offset = 0;
  for (const auto* b : blocks) {
    for (std::size_t c = 0; c < b->cols(); ++c)
      for (const auto& [r, v] : b->column(c)) out.add(r, offset + c, v);
    offset += b->cols();
  }
  return out;
}

SparseMatrix sparse_vstack(const std::vector<const SparseMatrix*>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto* b : blocks) {
    if (b->cols() != cols) throw ConsistencyError("sparse vstack column mismatch");
    rows += b->rows();
  }
  SparseMatrix out(rows, cols);
  std::size_t offset = 0;
  for (const auto* b : blocks) {
    for (std::size_t c = 0; c < cols; ++c)
      for (const auto& [r, v] : b->column(c)) out.add(offset + r, c, v);
    offset += b->rows();
  }
  return out;
}

}  // namespace bgg::linalg
