#include "bgg/repkit.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "bgg/errors.hpp"

namespace bgg::repkit {

using linalg::Matrix;
using linalg::SparseMatrix;
using rootcore::RootVec;

namespace {

void require_dominant(const RootSystem& rs, const Weight& lambda) {
  if (lambda.rank() != static_cast<std::size_t>(rs.rank()))
    throw UsageError("highest weight has " + std::to_string(lambda.rank()) + " coordinates, expected " +
                     std::to_string(rs.rank()));
  if (!rs.is_dominant_integral(lambda))
    throw UsageError("highest weight " + lambda.str() + " is not dominant integral");
}

void require_dim(std::uint64_t dim, const Bounds& bounds) {
  if (dim > bounds.irrep_dim)
    throw ResourceError("irrep_dim", "module dimension " + std::to_string(dim) + " exceeds the bound irrep_dim=" +
                                         std::to_string(bounds.irrep_dim));
}

Weight at_depth(const Weight& lambda, const IntVector& c) {
  RationalVector v = lambda.coords();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c[i];
  return Weight(std::move(v));
}

// Next layer of depths reachable by one simple lowering, in descending
// lexicographic order (alpha_1 first, matching the root order).
std::vector<IntVector> next_layer(const std::vector<IntVector>& layer) {
  std::set<IntVector, std::greater<>> next;
  for (const IntVector& c : layer) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      IntVector d = c;
      ++d[i];
      next.insert(std::move(d));
    }
  }
  return {next.begin(), next.end()};
}

}  // namespace

std::uint64_t Character::total_dim() const {
  std::uint64_t total = 0;
  for (const auto& [mu, m] : multiplicities) total += m;
  return total;
}

std::uint64_t Character::multiplicity(const Weight& mu) const {
  auto it = multiplicities.find(mu);
  return it == multiplicities.end() ? 0 : it->second;
}

std::uint64_t weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  require_dominant(rs, lambda);
  const Weight shifted = lambda + rs.rho();
  Rational dim = 1;
  for (const RootVec& a : rs.positive_roots()) {
    const Weight root = Weight::from_root(a);
    dim *= rs.inner(shifted, root) / rs.inner(rs.rho(), root);
  }
  if (dim.get_den() != 1) throw ConsistencyError("Weyl dimension is not an integer: " + to_string(dim));
  return dim.get_num().get_ui();
}

Character freudenthal_character(const RootSystem& rs, const Weight& lambda, const Bounds& bounds) {
  const std::uint64_t expected = weyl_dimension(rs, lambda);
  require_dim(expected, bounds);

  const std::size_t n = static_cast<std::size_t>(rs.rank());
  const Weight shifted = lambda + rs.rho();
  const Rational top = rs.inner(shifted, shifted);
  std::map<IntVector, std::uint64_t> mult;
  mult[IntVector(n, 0)] = 1;

  std::vector<IntVector> layer{IntVector(n, 0)};
  while (!layer.empty()) {
    std::vector<IntVector> found;
    for (const IntVector& c : next_layer(layer)) {
      const Weight mu = at_depth(lambda, c);
      const Weight mu_rho = mu + rs.rho();
      const Rational denom = top - rs.inner(mu_rho, mu_rho);
      if (denom == 0) continue;
      Rational sum = 0;
      for (const RootVec& a : rs.positive_roots()) {
        const Weight root = Weight::from_root(a);
        for (int k = 1;; ++k) {
          IntVector up = c;
          bool nonneg = true;
          for (std::size_t i = 0; i < n; ++i) {
            up[i] -= k * a[i];
            nonneg = nonneg && up[i] >= 0;
          }
          if (!nonneg) break;
          auto it = mult.find(up);
          if (it == mult.end()) continue;
          sum += rs.inner(at_depth(lambda, up), root) * Rational(static_cast<unsigned long>(it->second));
        }
      }
      const Rational m = 2 * sum / denom;
      if (m == 0) continue;
      if (m.get_den() != 1 || m < 0) throw ConsistencyError("non-integral Freudenthal multiplicity at " + mu.str());
      mult[c] = m.get_num().get_ui();
      found.push_back(c);
    }
    layer = std::move(found);
  }

  Character ch;
  for (const auto& [c, m] : mult) ch.multiplicities[at_depth(lambda, c)] = m;
  if (ch.total_dim() != expected)
    throw ConsistencyError("Freudenthal total " + std::to_string(ch.total_dim()) + " differs from Weyl dimension " +
                           std::to_string(expected));
  return ch;
}

SparseMatrix IrrepData::h(const RootSystem& rs, int i) const {
  SparseMatrix m(dim(), dim());
  for (std::size_t k = 0; k < dim(); ++k) m.add(k, k, rs.pairing(weights[k], i));
  return m;
}

Character IrrepData::character() const {
  Character ch;
  for (const Weight& w : weights) ++ch.multiplicities[w];
  return ch;
}

IrrepData build_irrep(const RootSystem& rs, const Weight& lambda, const Bounds& bounds) {
  const std::uint64_t expected = weyl_dimension(rs, lambda);
  require_dim(expected, bounds);

  using Column = std::vector<SparseMatrix::Entry>;
  const std::size_t n = static_cast<std::size_t>(rs.rank());
  std::vector<std::vector<Column>> e_cols(n), f_cols(n);  // [i][source] -> image

  IrrepData v;
  v.highest_weight = lambda;
  auto add_vector = [&](const IntVector& c) {
    v.depths.push_back(c);
    v.weights.push_back(at_depth(lambda, c));
    for (std::size_t i = 0; i < n; ++i) {
      e_cols[i].emplace_back();
      f_cols[i].emplace_back();
    }
  };
  add_vector(IntVector(n, 0));
  v.blocks[IntVector(n, 0)] = {0, 1};

  std::vector<IntVector> layer{IntVector(n, 0)};
  while (!layer.empty()) {
    std::vector<IntVector> found;
    for (const IntVector& c : next_layer(layer)) {
      // Candidates f_i w for w in V_{c - e_i}.
      std::vector<std::pair<std::size_t, std::size_t>> cands;  // (i, w)
      for (std::size_t i = 0; i < n; ++i) {
        if (c[i] == 0) continue;
        IntVector src = c;
        --src[i];
        auto it = v.blocks.find(src);
        if (it == v.blocks.end()) continue;
        for (std::size_t w = it->second.first; w < it->second.second; ++w) cands.emplace_back(i, w);
      }
      if (cands.empty()) continue;

      // Row layout: the target blocks V_{c - e_j}.
      std::vector<std::size_t> seg_offset(n, 0);
      std::vector<std::pair<std::size_t, std::size_t>> seg_block(n, {0, 0});
      std::size_t rows = 0;
      for (std::size_t j = 0; j < n; ++j) {
        seg_offset[j] = rows;
        if (c[j] == 0) continue;
        IntVector tgt = c;
        --tgt[j];
        auto it = v.blocks.find(tgt);
        if (it == v.blocks.end()) continue;
        seg_block[j] = it->second;
        rows += it->second.second - it->second.first;
      }

      Matrix m(rows, cands.size());
      for (std::size_t col = 0; col < cands.size(); ++col) {
        const auto [i, w] = cands[col];
        for (std::size_t j = 0; j < n; ++j) {
          const auto [begin, end] = seg_block[j];
          if (begin == end) continue;
          // e_j f_i w = delta_ij h_i w + f_i e_j w
          if (i == j) m(seg_offset[j] + (w - begin), col) += rs.pairing(v.weights[w], static_cast<int>(i) + 1);
          for (const auto& [u, a] : e_cols[j][w])
            for (const auto& [t, b] : f_cols[i][u]) m(seg_offset[j] + (t - begin), col) += a * b;
        }
      }

      const std::vector<std::size_t> pivots = linalg::independent_columns(m);
      if (pivots.empty()) continue;
      const Matrix basis = linalg::select_columns(m, pivots);
      const auto coeffs = linalg::solve(basis, m);
      if (!coeffs) throw ConsistencyError("irrep construction: candidates outside the pivot span");

      const std::size_t base = v.dim();
      for (std::size_t k = 0; k < pivots.size(); ++k) add_vector(c);
      v.blocks[c] = {base, base + pivots.size()};
      if (v.dim() > expected) throw ConsistencyError("irrep construction overshoots the Weyl dimension");

      for (std::size_t k = 0; k < pivots.size(); ++k) {
        for (std::size_t j = 0; j < n; ++j) {
          const auto [begin, end] = seg_block[j];
          for (std::size_t t = begin; t < end; ++t) {
            const Rational& val = basis(seg_offset[j] + (t - begin), k);
            if (val != 0) e_cols[j][base + k].emplace_back(t, val);
          }
        }
      }
      for (std::size_t col = 0; col < cands.size(); ++col) {
        const auto [i, w] = cands[col];
        for (std::size_t k = 0; k < pivots.size(); ++k)
          if ((*coeffs)(k, col) != 0) f_cols[i][w].emplace_back(base + k, (*coeffs)(k, col));
      }
      found.push_back(c);
    }
    layer = std::move(found);
  }

  if (v.dim() != expected)
    throw ConsistencyError("irrep dimension " + std::to_string(v.dim()) + " differs from Weyl dimension " +
                           std::to_string(expected));

  for (std::size_t i = 0; i < n; ++i) {
    SparseMatrix e(v.dim(), v.dim()), f(v.dim(), v.dim());
    for (std::size_t col = 0; col < v.dim(); ++col) {
      for (const auto& [r, a] : e_cols[i][col]) e.add(r, col, a);
      for (const auto& [r, a] : f_cols[i][col]) f.add(r, col, a);
    }
    v.e.push_back(std::move(e));
    v.f.push_back(std::move(f));
  }
  return v;
}

}  // namespace bgg::repkit
