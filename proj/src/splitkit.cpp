#include "bgg/splitkit.hpp"

#include <algorithm>
#include <sstream>

#include "bgg/errors.hpp"

namespace bgg::splitkit {

namespace {

Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix first_columns(const Matrix& a, std::size_t n) {
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return linalg::select_columns(a, cols);
}

// d_j as a map V_j -> V_{j+1}, with zero maps at both ends.
Matrix d_at(const FiniteComplex& c, long j) {
  const long n = static_cast<long>(c.length());
  if (j < 0) return zero(c.dims.front(), 0);
  if (j >= n) return zero(0, c.dims.back());
  return c.differentials[static_cast<std::size_t>(j)];
}

// b_j as a map V_{j+1} -> V_j, zero outside the computed range.
Matrix b_at(const FiniteComplex& c, const std::vector<Matrix>& b, long j) {
  if (j < 0) return zero(0, c.dims.front());
  if (j >= static_cast<long>(b.size())) return zero(c.dims.back(), 0);
  return b[static_cast<std::size_t>(j)];
}

// b_j d_j + d_{j-1} b_{j-1} = 1 on V_j.
void check_space(const FiniteComplex& c, const std::vector<Matrix>& b, std::size_t j,
                 std::vector<std::string>& out) {
  const long jj = static_cast<long>(j);
  const Matrix homotopy = b_at(c, b, jj) * d_at(c, jj) + d_at(c, jj - 1) * b_at(c, b, jj - 1);
  if (!(homotopy == Matrix::identity(c.dims[j])))
    out.push_back("b d + d b != 1 on V_" + std::to_string(j));
}

void check_map(const FiniteComplex& c, const std::vector<Matrix>& b, std::size_t j,
               std::vector<std::string>& out) {
  const long jj = static_cast<long>(j);
  if (j > 0 && !(b[j - 1] * b[j]).is_zero())
    out.push_back("b_" + std::to_string(j - 1) + " b_" + std::to_string(j) + " != 0");
  const Matrix db = d_at(c, jj) * b[j];
  if (!(db * db == db)) out.push_back("d_" + std::to_string(j) + " b_" + std::to_string(j) + " not idempotent");
}

// Random unimodular integer matrix as a product of transvections, with its inverse.
std::pair<Matrix, Matrix> random_unimodular(std::mt19937_64& rng, std::size_t n) {
  Matrix g = Matrix::identity(n), inv = Matrix::identity(n);
  if (n < 2) return {g, inv};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (std::size_t step = 0; step < 2 * n; ++step) {
    const std::size_t r = pick(rng), s = pick(rng);
    const int k = coef(rng);
    if (r == s || k == 0) continue;
    // g <- (1 + k E_rs) g, inv <- inv (1 - k E_rs)
    for (std::size_t col = 0; col < n; ++col) g(r, col) += k * g(s, col);
    for (std::size_t row = 0; row < n; ++row) inv(row, s) -= k * inv(row, r);
  }
  return {g, inv};
}

}  // namespace

void FiniteComplex::validate() const {
  if (dims.empty()) throw PreconditionError("complex has no spaces");
  if (differentials.size() + 1 != dims.size())
    throw PreconditionError("complex needs exactly one map between consecutive spaces");
  for (std::size_t j = 0; j < differentials.size(); ++j) {
    const Matrix& d = differentials[j];
    if (d.rows() != dims[j + 1] || d.cols() != dims[j])
      throw PreconditionError("d_" + std::to_string(j) + " has the wrong shape");
  }
  for (std::size_t j = 0; j + 1 < differentials.size(); ++j)
    if (!(differentials[j + 1] * differentials[j]).is_zero())
      throw PreconditionError("d_" + std::to_string(j + 1) + " d_" + std::to_string(j) + " != 0");
}

std::vector<std::size_t> homology_dims(const FiniteComplex& c) {
  c.validate();
  std::vector<std::size_t> ranks(c.length());
  for (std::size_t j = 0; j < c.length(); ++j) ranks[j] = linalg::rank(c.differentials[j]);
  std::vector<std::size_t> out(c.dims.size());
  for (std::size_t j = 0; j < c.dims.size(); ++j) {
    const std::size_t out_rank = j < c.length() ? ranks[j] : 0;
    const std::size_t in_rank = j > 0 ? ranks[j - 1] : 0;
    out[j] = c.dims[j] - out_rank - in_rank;
  }
  return out;
}

Matrix left_inverse(const Matrix& a) {
  if (a.cols() == 0) return Matrix(0, a.rows());
  const Matrix at = linalg::transpose(a);
  const Matrix gram = at * a;
  // (G | -A^T) with G = A^T A reduces to (1 | -X) exactly when G is invertible,
  // so its null space is (X; 1) with X = G^{-1} A^T.
  const std::size_t n = a.cols();
  const Matrix minus_at = Rational(-1) * at;
  const auto e = linalg::certified_echelon(linalg::SparseMatrix::from_dense(linalg::hstack({&gram, &minus_at}, n)));
  if (e.rank != n || e.pivots.back() != n - 1) throw PreconditionError("left inverse of a non-injective map");
  Matrix out(n, a.rows());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < a.rows(); ++c) out(r, c) = e.kernel(r, c);
  return out;
}

Splitting split_exact_complex(const FiniteComplex& c) {
  const auto h = homology_dims(c);
  for (std::size_t j = 0; j < h.size(); ++j)
    if (h[j] != 0)
      throw PreconditionError("complex is not exact at V_" + std::to_string(j) + " (homology dimension " +
                              std::to_string(h[j]) + ")");

  std::vector<Matrix> b;
  std::vector<std::string> defects;
  for (std::size_t j = 0; j < c.length(); ++j) {
    const Matrix& d = c.differentials[j];
    const Matrix prev = b_at(c, b, static_cast<long>(j) - 1);  // V_j -> V_{j-1}
    // (d_j; b_{j-1}) is injective on V_j: ker d_j = im d_{j-1}, where b_{j-1} is injective.
    const Matrix inv = left_inverse(linalg::vstack(d, prev));
    const Matrix l1 = first_columns(inv, d.rows());
    // l1 d_j = 1 - d_{j-1} b_{j-1}; projecting the image into ker b_{j-1} makes b_{j-1} b_j = 0.
    b.push_back(l1 * d * l1);
    check_space(c, b, j, defects);
    check_map(c, b, j, defects);
    if (!defects.empty()) throw ConsistencyError("splitting step " + std::to_string(j) + ": " + defects.front());
  }
  check_space(c, b, c.length(), defects);
  if (!defects.empty()) throw ConsistencyError("splitting: " + defects.front());
  return Splitting{std::move(b)};
}

std::vector<std::string> splitting_defects(const FiniteComplex& c, const Splitting& s) {
  std::vector<std::string> out;
  if (s.maps.size() != c.length()) {
    out.push_back("wrong number of maps");
    return out;
  }
  for (std::size_t j = 0; j < c.length(); ++j) {
    const Matrix& m = s.maps[j];
    if (m.rows() != c.dims[j] || m.cols() != c.dims[j + 1]) {
      out.push_back("b_" + std::to_string(j) + " has the wrong shape");
      return out;
    }
  }
  for (std::size_t j = 0; j < c.dims.size(); ++j) check_space(c, s.maps, j, out);
  for (std::size_t j = 0; j < c.length(); ++j) check_map(c, s.maps, j, out);
  return out;
}

FiniteComplex random_exact_complex(std::mt19937_64& rng, std::size_t max_length, std::size_t max_dim) {
  if (max_length == 0 || max_dim == 0) throw UsageError("random complex needs positive length and dimension");
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_length)(rng);
  // Piece j of rank r_j maps identically from V_j onto V_{j+1}; dim V_j = r_{j-1} + r_j.
  std::vector<std::size_t> r(n);
  std::size_t prev = 0;
  for (std::size_t j = 0; j < n; ++j) {
    r[j] = std::uniform_int_distribution<std::size_t>(0, max_dim - prev)(rng);
    prev = r[j];
  }
  FiniteComplex c;
  c.dims.resize(n + 1);
  for (std::size_t j = 0; j <= n; ++j) c.dims[j] = (j > 0 ? r[j - 1] : 0) + (j < n ? r[j] : 0);

  std::vector<std::pair<Matrix, Matrix>> basis;
  for (std::size_t dim : c.dims) basis.push_back(random_unimodular(rng, dim));
  for (std::size_t j = 0; j < n; ++j) {
    Matrix d(c.dims[j + 1], c.dims[j]);
    const std::size_t offset = j > 0 ? r[j - 1] : 0;
    for (std::size_t i = 0; i < r[j]; ++i) d(i, offset + i) = 1;
    c.differentials.push_back(basis[j + 1].first * d * basis[j].second);
  }
  return c;
}

std::string to_string(VerdictValue v) {
  switch (v) {
    case VerdictValue::Exists: return "Exists";
    case VerdictValue::NotExists: return "NotExists";
    case VerdictValue::Unknown: return "Unknown";
  }
  return "Unknown";
}

Verdict splitting_verdict(const rootcore::RootSystem& rs, const rootcore::ParabolicSubset& p) {
  Verdict v;
  v.rank_G = rs.rank();
  v.rank_AP = static_cast<int>(p.crossed.size());
  std::ostringstream why;
  if (v.rank_G <= 1) {
    v.value = VerdictValue::Exists;
    why << "rank G = " << v.rank_G << " <= 1: an equivariant Heisenberg splitting exists";
  } else if (v.rank_AP > 1) {
    v.value = VerdictValue::NotExists;
    why << "rank A_P = " << v.rank_AP << " > 1: no equivariant Heisenberg splitting";
  } else {
    v.value = VerdictValue::Unknown;
    why << "rank A_P = " << v.rank_AP << ", rank G = " << v.rank_G << ": outside both rank conditions (open)";
  }
  v.rationale = why.str();
  return v;
}

}  // namespace bgg::splitkit
