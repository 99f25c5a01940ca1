#include <array>
#include <cmath>
#include <numeric>
#include <cstdint>
#include <optional>

#include "bgg/errors.hpp"
#include "bgg/linalg.hpp"

namespace bgg::linalg {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kMersenne = (u64{1} << 61) - 1;
// Further primes just below 2^62, used when one modulus is not enough to
// reconstruct the rational kernel.
constexpr std::array<u64, 7> kPrimes = {kMersenne,           4611686018427387847ULL, 4611686018427387817ULL,
                                        4611686018427387787ULL, 4611686018427387761ULL, 4611686018427387751ULL,
                                        4611686018427387737ULL};

struct Field {
  u64 p;

  u64 mul(u64 a, u64 b) const {
    const u128 z = static_cast<u128>(a) * b;
    if (p == kMersenne) {
      u64 r = static_cast<u64>(z & kMersenne) + static_cast<u64>(z >> 61);
      r = (r & kMersenne) + (r >> 61);
      return r >= kMersenne ? r - kMersenne : r;
    }
    return static_cast<u64>(z % p);
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 power(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inverse(u64 a) const { return power(a, p - 2); }
  std::optional<u64> of(const Rational& q) const {
    const u64 num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    const u64 den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (den == 0) return std::nullopt;
    return mul(num, inverse(den));
  }
};

struct ModularEchelon {
  bool ok = false;
  std::size_t rows = 0, cols = 0;
  std::vector<u64> data;  // reduced row echelon form, row-major
  std::vector<std::size_t> pivots;

  u64 at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

ModularEchelon modular_echelon(const SparseMatrix& a, const Field& F) {
  ModularEchelon e;
  e.rows = a.rows();
  e.cols = a.cols();
  e.data.assign(e.rows * e.cols, 0);
  for (std::size_t c = 0; c < e.cols; ++c) {
    for (const auto& [r, v] : a.column(c)) {
      auto m = F.of(v);
      if (!m) return e;
      e.data[r * e.cols + c] = *m;
    }
  }
  std::vector<std::size_t> support;
  std::size_t row = 0;
  for (std::size_t col = 0; col < e.cols && row < e.rows; ++col) {
    std::size_t pivot = e.rows;
    for (std::size_t r = row; r < e.rows; ++r) {
      if (e.data[r * e.cols + col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == e.rows) continue;
    u64* prow = &e.data[row * e.cols];
    if (pivot != row) {
      u64* other = &e.data[pivot * e.cols];
      for (std::size_t c = col; c < e.cols; ++c) std::swap(prow[c], other[c]);
    }
    const u64 inv = F.inverse(prow[col]);
    support.clear();
    for (std::size_t c = col; c < e.cols; ++c) {
      if (prow[c] == 0) continue;
      prow[c] = F.mul(prow[c], inv);
      support.push_back(c);
    }
    for (std::size_t r = 0; r < e.rows; ++r) {
      if (r == row) continue;
      u64* target = &e.data[r * e.cols];
      const u64 f = target[col];
      if (f == 0) continue;
      for (std::size_t c : support) target[c] = F.sub(target[c], F.mul(f, prow[c]));
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.ok = true;
  return e;
}

// Single-prime reconstruction in native integers.
std::optional<Rational> reconstruct_small(u64 u, u64 m) {
  using i128 = __int128;
  const i128 bound = static_cast<i128>(std::sqrt(static_cast<long double>(m / 2)));
  if (u == 0) return Rational(0);
  i128 r0 = m, r1 = u, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const i128 q = r0 / r1;
    i128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  const i128 den = t1 < 0 ? -t1 : t1;
  if (den == 0 || den > bound) return std::nullopt;
  const long n = static_cast<long>(t1 < 0 ? -r1 : r1);
  const long d = static_cast<long>(den);
  if (std::gcd(n < 0 ? -n : n, d) != 1) return std::nullopt;
  return make_rational(n, d);
}

// Rational n/d with |n|, d <= sqrt(m/2) and n/d = u mod m, if any.
std::optional<Rational> reconstruct(const mpz_class& u, const mpz_class& m, const mpz_class& bound) {
  if (u == 0) return Rational(0);
  mpz_class r0 = m, r1 = u, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  mpz_class den = abs(t1);
  if (den == 0 || den > bound) return std::nullopt;
  mpz_class num = t1 < 0 ? mpz_class(-r1) : r1;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return std::nullopt;
  return Rational(num, den);
}

bool annihilates(const SparseMatrix& a, const RationalVector& x) {
  RationalVector y = a * x;
  for (const auto& v : y)
    if (sgn(v) != 0) return false;
  return true;
}

// a with each row scaled to integer entries, when they fit in 64 bits. Used
// to check a x = 0 in exact 128-bit arithmetic.
struct IntegerImage {
  bool ok = false;
  std::vector<std::vector<std::pair<std::size_t, long>>> columns;
  long max_row_l1 = 0;
};

IntegerImage integer_image(const SparseMatrix& a) {
  IntegerImage out;
  std::vector<mpz_class> scale(a.rows(), 1);
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (const auto& [r, v] : a.column(c)) mpz_lcm(scale[r].get_mpz_t(), scale[r].get_mpz_t(), v.get_den_mpz_t());
  out.columns.resize(a.cols());
  std::vector<mpz_class> l1(a.rows(), 0);
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (const auto& [r, v] : a.column(c)) {
      mpz_class n = v.get_num() * (scale[r] / v.get_den());
      if (!n.fits_slong_p()) return out;
      out.columns[c].push_back({r, n.get_si()});
      l1[r] += abs(n);
    }
  }
  mpz_class m = 0;
  for (const auto& x : l1) m = std::max(m, x);
  if (!m.fits_slong_p()) return out;
  out.max_row_l1 = m.get_si();
  out.ok = true;
  return out;
}

// Exact check of a x = 0 for x given by (index, value) pairs; nullopt when
// the integer path cannot be used.
std::optional<bool> annihilates_integer(const IntegerImage& img, std::size_t rows,
                                         const std::vector<std::pair<std::size_t, Rational>>& x,
                                         std::vector<__int128>& acc, std::vector<std::size_t>& touched) {
  mpz_class den = 1;
  for (const auto& [i, v] : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  std::vector<std::pair<std::size_t, long>> xi;
  long max_x = 0;
  for (const auto& [i, v] : x) {
    mpz_class n = v.get_num() * (den / v.get_den());
    if (!n.fits_slong_p()) return std::nullopt;
    xi.push_back({i, n.get_si()});
    max_x = std::max(max_x, std::abs(n.get_si()));
  }
  // Every partial sum stays below max_row_l1 * max_x < 2^126.
  if (static_cast<__int128>(img.max_row_l1) * max_x >= (static_cast<__int128>(1) << 126)) return std::nullopt;
  acc.resize(rows, 0);
  touched.clear();
  for (const auto& [c, xv] : xi) {
    for (const auto& [r, av] : img.columns[c]) {
      if (acc[r] == 0) touched.push_back(r);
      acc[r] += static_cast<__int128>(av) * xv;
    }
  }
  bool zero = true;
  for (std::size_t r : touched) {
    if (acc[r] != 0) zero = false;
    acc[r] = 0;
  }
  return zero;
}

CertifiedEchelon exact_echelon(const SparseMatrix& a, bool want_kernel) {
  CertifiedEchelon out;
  out.used_fallback = true;
  Matrix dense = a.to_dense();
  out.pivots = independent_columns(dense);
  out.rank = out.pivots.size();
  if (want_kernel) out.kernel = nullspace(dense);
  return out;
}

// Kernel of a in the free-column normalization, from the residues of the
// modular echelon forms combined by CRT; nullopt when the reconstruction or
// the exact check fails.
std::optional<Matrix> lift_kernel(const SparseMatrix& a, const IntegerImage& img, const std::vector<std::size_t>& pivots,
                                  const std::vector<std::size_t>& free_cols,
                                  const std::vector<std::vector<mpz_class>>& residues, const mpz_class& modulus) {
  mpz_class bound;
  mpz_class half = modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Matrix kernel(a.cols(), free_cols.size());
  std::vector<std::pair<std::size_t, Rational>> x;
  std::vector<__int128> acc;
  std::vector<std::size_t> touched;
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    x.clear();
    x.push_back({free_cols[k], Rational(1)});
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const mpz_class& u = residues[k][r];
      if (u == 0) continue;
      // Kernel entry is -R[r][f].
      auto q = modulus.fits_ulong_p() ? reconstruct_small(mpz_class(modulus - u).get_ui(), modulus.get_ui())
                                      : reconstruct(mpz_class(modulus - u), modulus, bound);
      if (!q) return std::nullopt;
      x.push_back({pivots[r], *q});
    }
    std::optional<bool> zero;
    if (img.ok) zero = annihilates_integer(img, a.rows(), x, acc, touched);
    if (!zero) {
      RationalVector dense(a.cols());
      for (const auto& [i, v] : x) dense[i] = v;
      zero = annihilates(a, dense);
    }
    if (!*zero) return std::nullopt;
    for (const auto& [i, v] : x) kernel(i, k) = v;
  }
  return kernel;
}

}  // namespace

CertifiedEchelon certified_echelon(const SparseMatrix& a, bool want_kernel) {
  CertifiedEchelon out;
  if (a.cols() == 0 || a.rows() == 0) {
    out.kernel = Matrix::identity(a.cols());
    return out;
  }
  // Residues of R[r][f] per free column f, combined across primes.
  std::vector<std::size_t> pivots, free_cols;
  std::vector<std::vector<mpz_class>> residues;
  mpz_class modulus = 1;
  const IntegerImage img = integer_image(a);
  for (u64 p : kPrimes) {
    const Field F{p};
    ModularEchelon e = modular_echelon(a, F);
    if (!e.ok) continue;
    if (modulus == 1) {
      pivots = e.pivots;
      std::vector<bool> is_pivot(e.cols, false);
      for (std::size_t c : pivots) is_pivot[c] = true;
      for (std::size_t c = 0; c < e.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
      residues.assign(free_cols.size(), std::vector<mpz_class>(pivots.size()));
      for (std::size_t k = 0; k < free_cols.size(); ++k)
        for (std::size_t r = 0; r < pivots.size(); ++r) residues[k][r] = mpz_class(static_cast<unsigned long>(e.at(r, free_cols[k])));
      modulus = mpz_class(static_cast<unsigned long>(p));
    } else {
      // A different pivot pattern means one of the primes is unlucky.
      if (e.pivots != pivots) break;
      const mpz_class mp(static_cast<unsigned long>(p));
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), mp.get_mpz_t());
      for (std::size_t k = 0; k < free_cols.size(); ++k) {
        for (std::size_t r = 0; r < pivots.size(); ++r) {
          mpz_class& x = residues[k][r];
          const mpz_class v(static_cast<unsigned long>(e.at(r, free_cols[k])));
          mpz_class t = ((v - x) % mp) * inv % mp;
          if (t < 0) t += mp;
          x += modulus * t;
        }
      }
      modulus *= mp;
    }
    // The modular rank bounds the rational rank from below; the lifted
    // kernel, checked exactly, bounds it from above.
    if (auto kernel = lift_kernel(a, img, pivots, free_cols, residues, modulus)) {
      out.rank = pivots.size();
      out.pivots = pivots;
      if (want_kernel) out.kernel = std::move(*kernel);
      return out;
    }
  }
  return exact_echelon(a, want_kernel);
}

std::size_t certified_rank(const SparseMatrix& a) { return certified_echelon(a, false).rank; }

Matrix certified_nullspace(const SparseMatrix& a) { return certified_echelon(a, true).kernel; }

std::vector<std::size_t> certified_column_basis(const SparseMatrix& a) {
  return certified_echelon(a, false).pivots;
}

std::size_t modular_rank(const SparseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  ModularEchelon e = modular_echelon(a, Field{kMersenne});
  if (!e.ok) return rank(a.to_dense());
  return e.pivots.size();
}

}  // namespace bgg::linalg
