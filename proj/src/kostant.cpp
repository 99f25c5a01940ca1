#include "bgg/kostant.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "bgg/errors.hpp"

namespace bgg::kostant {

using chevalley::Side;
using linalg::Matrix;

namespace {

int popcount(std::uint32_t x) { return std::popcount(x); }

// Position of t in the sorted set S (number of elements of S below t).
int position(std::uint32_t s, int t) { return popcount(s & ((std::uint32_t{1} << t) - 1)); }

int sign(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

IntVector depth_of(const CEComplex& ce, std::uint32_t subset, std::uint32_t v) {
  IntVector d = ce.module.depths[v];
  const auto& roots = ce.nilradical.roots;
  for (std::size_t t = 0; t < roots.size(); ++t) {
    if (!(subset >> t & 1)) continue;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += roots[t][i];
  }
  return d;
}

Weight weight_of(const Weight& lambda, const IntVector& depth) {
  RationalVector c(depth.size());
  for (std::size_t i = 0; i < depth.size(); ++i) c[i] = depth[i];
  return lambda - Weight(c);
}

// Sparse image columns keyed by (subset, vector) before they are placed.
using Image = std::map<std::pair<std::uint32_t, std::uint32_t>, Rational>;

void accumulate(Image& img, std::uint32_t s, std::uint32_t v, const Rational& c) {
  if (sgn(c) == 0) return;
  Rational& slot = img[{s, v}];
  slot += c;
}

class Builder {
 public:
  explicit Builder(const CEComplex& ce) : ce_(ce), rs_(ce.root_system()) {
    const auto& n = ce_.nilradical;
    m_ = n.dim();
    for (std::size_t t = 0; t < m_; ++t) {
      const RootVec& b = n.roots[t];
      scale_.push_back(Rational(rs_.inner(b, b), 2));
    }
    // Decompositions beta_g = beta_a + beta_b with a < b inside p_+.
    splits_.resize(m_);
    for (std::size_t a = 0; a < m_; ++a) {
      for (std::size_t b = a + 1; b < m_; ++b) {
        RootVec sum = n.roots[a];
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += n.roots[b][i];
        for (std::size_t g = 0; g < m_; ++g)
          if (n.roots[g] == sum) splits_[g].push_back({a, b});
      }
    }
    sum_of_.assign(m_, std::vector<int>(m_, -1));
    for (std::size_t g = 0; g < m_; ++g)
      for (auto [a, b] : splits_[g]) sum_of_[a][b] = sum_of_[b][a] = static_cast<int>(g);
  }

  Image differential(std::uint32_t s, std::uint32_t v) const {
    const auto& n = ce_.nilradical;
    Image img;
    for (std::size_t t = 0; t < m_; ++t) {
      if (s >> t & 1) continue;
      const std::uint32_t target = s | (std::uint32_t{1} << t);
      const int sg = sign(position(s, static_cast<int>(t)));
      for (const auto& [u, val] : ce_.root_ops[n.root_indices[t]].column(v))
        accumulate(img, target, static_cast<std::uint32_t>(u), sg * val);
    }
    for (std::size_t g = 0; g < m_; ++g) {
      if (!(s >> g & 1)) continue;
      const std::uint32_t rest = s & ~(std::uint32_t{1} << g);
      const int pg = position(s, static_cast<int>(g));
      for (auto [a, b] : splits_[g]) {
        if ((rest >> a & 1) || (rest >> b & 1)) continue;
        const std::uint32_t target = rest | (std::uint32_t{1} << a) | (std::uint32_t{1} << b);
        const int i = position(target, static_cast<int>(a));
        const int j = position(target, static_cast<int>(b));
        const int nab = ce_.constants.N(n.root_indices[a], n.root_indices[b]);
        accumulate(img, target, v, Rational(sign(i + j + pg) * nab));
      }
    }
    return img;
  }

  Image codifferential(std::uint32_t s, std::uint32_t v) const {
    const auto& n = ce_.nilradical;
    Image img;
    std::vector<int> elems;
    for (std::size_t t = 0; t < m_; ++t)
      if (s >> t & 1) elems.push_back(static_cast<int>(t));
    for (std::size_t p = 0; p < elems.size(); ++p) {
      const int t = elems[p];
      const std::uint32_t target = s & ~(std::uint32_t{1} << t);
      const std::size_t neg = rs_.negative_of(n.root_indices[t]);
      const Rational c = sign(static_cast<int>(p) + 1) * scale_[t];
      for (const auto& [u, val] : ce_.root_ops[neg].column(v))
        accumulate(img, target, static_cast<std::uint32_t>(u), c * val);
    }
    for (std::size_t p = 0; p < elems.size(); ++p) {
      for (std::size_t q = p + 1; q < elems.size(); ++q) {
        const int a = elems[p], b = elems[q];
        const int g = sum_of_[a][b];
        if (g < 0) continue;
        const std::uint32_t rest = s & ~(std::uint32_t{1} << a) & ~(std::uint32_t{1} << b);
        if (rest >> g & 1) continue;
        const std::uint32_t target = rest | (std::uint32_t{1} << g);
        const int nab = ce_.constants.N(rs_.negative_of(n.root_indices[a]), rs_.negative_of(n.root_indices[b]));
        // [Z_a, Z_b] = (c_a c_b / c_g) N_{-a,-b} Z_g.
        const Rational c = sign(static_cast<int>(p + q) + position(target, g)) * scale_[a] * scale_[b] /
                           scale_[g] * nab;
        accumulate(img, target, v, c);
      }
    }
    return img;
  }

  Image levi_raise(std::uint32_t s, std::uint32_t v, int j) const {
    const auto& n = ce_.nilradical;
    Image img;
    const std::size_t ej = rs_.simple_root_index(j);
    for (const auto& [u, val] : ce_.root_ops[ej].column(v)) accumulate(img, s, static_cast<std::uint32_t>(u), val);
    // e_j . xi_beta = -N_{alpha_j, beta - alpha_j} xi_{beta - alpha_j}.
    for (std::size_t t = 0; t < m_; ++t) {
      if (!(s >> t & 1)) continue;
      RootVec lowered = n.roots[t];
      lowered[j - 1] -= 1;
      std::size_t g = m_;
      for (std::size_t x = 0; x < m_; ++x)
        if (n.roots[x] == lowered) g = x;
      if (g == m_) continue;
      const std::uint32_t rest = s & ~(std::uint32_t{1} << t);
      if (rest >> g & 1) continue;
      const std::uint32_t target = rest | (std::uint32_t{1} << g);
      const int nj = ce_.constants.N(ej, n.root_indices[g]);
      const int sg = sign(position(s, static_cast<int>(t)) + position(target, static_cast<int>(g)));
      accumulate(img, target, v, Rational(-sg * nj));
    }
    return img;
  }

 private:
  const CEComplex& ce_;
  const RootSystem& rs_;
  std::size_t m_ = 0;
  std::vector<Rational> scale_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> splits_;
  std::vector<std::vector<int>> sum_of_;
};

SparseMatrix place(const CEBlock& from, const CEBlock* to,
                   const std::vector<std::vector<std::uint32_t>>& index,
                   const std::function<Image(std::uint32_t, std::uint32_t)>& map) {
  SparseMatrix out(to ? to->basis.size() : 0, from.basis.size());
  for (std::size_t c = 0; c < from.basis.size(); ++c) {
    const Image img = map(from.basis[c].subset, from.basis[c].vector);
    for (const auto& [key, val] : img) {
      if (sgn(val) == 0) continue;
      if (!to) throw ConsistencyError("complex map leaves its weight space");
      const std::uint32_t pos = index[key.first][key.second];
      if (pos >= to->basis.size() || to->basis[pos].subset != key.first || to->basis[pos].vector != key.second)
        throw ConsistencyError("complex map leaves its weight space");
      out.add(pos, c, val);
    }
  }
  return out;
}

void require_zero(const SparseMatrix& m, const std::string& what) {
  if (!m.is_zero()) throw ConsistencyError(what + " fails on the Kostant complex");
}

bool levi_dominant(const RootSystem& rs, const ParabolicSubset& p, const Weight& mu) {
  for (int j : p.levi) {
    const Rational c = rs.pairing(mu, j);
    if (c < 0 || c.get_den() != 1) return false;
  }
  return true;
}

std::uint64_t to_count(const Rational& q) {
  if (q.get_den() != 1 || q < 0) throw ConsistencyError("Levi dimension is not a nonnegative integer");
  return q.get_num().get_ui();
}

Matrix kernel_of(const SparseMatrix& m) {
  const std::size_t n = m.cols();
  if (n == 0) return Matrix(0, 0);
  // Full modular rank certifies a trivial kernel without a certificate.
  if (m.rows() >= n && linalg::modular_rank(m) == n) return Matrix(n, 0);
  return linalg::certified_nullspace(m);
}

SparseMatrix times_dense(const SparseMatrix& a, const Matrix& b) {
  return a * SparseMatrix::from_dense(b);
}

}  // namespace

std::size_t CEComplex::total_dim() const {
  std::size_t n = 0;
  for (const auto& d : degrees) n += d.dim;
  return n;
}

const CEBlock* CEComplex::block(int k, const IntVector& depth) const {
  if (k < 0 || k > top_degree()) return nullptr;
  const auto& blocks = degrees[k].blocks;
  auto it = blocks.find(depth);
  return it == blocks.end() ? nullptr : &it->second;
}

SparseMatrix CEComplex::levi_raising(int k, const CEBlock& from, int j) const {
  IntVector up = from.depth;
  up[j - 1] -= 1;
  const CEBlock* to = block(k, up);
  SparseMatrix out(to ? to->basis.size() : 0, from.basis.size());
  Builder builder(*this);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> where;
  if (to)
    for (std::size_t i = 0; i < to->basis.size(); ++i) where[{to->basis[i].subset, to->basis[i].vector}] = i;
  for (std::size_t c = 0; c < from.basis.size(); ++c) {
    for (const auto& [key, val] : builder.levi_raise(from.basis[c].subset, from.basis[c].vector, j)) {
      if (sgn(val) == 0) continue;
      auto it = where.find(key);
      if (it == where.end()) throw ConsistencyError("Levi raising leaves its weight space");
      out.add(it->second, c, val);
    }
  }
  return out;
}

CEComplex ce_complex(const StructureConstants& sc, const ParabolicSubset& p, const Weight& lambda,
                     const Bounds& bounds) {
  const RootSystem& rs = sc.root_system();
  CEComplex ce;
  ce.constants = sc;
  ce.parabolic = p;
  ce.lambda = lambda;
  ce.nilradical = chevalley::build_nilpotent(sc, p, Side::Plus);
  const std::size_t m = ce.nilradical.dim();
  if (m > 24) throw ResourceError("complex_dim", "nilradical of dimension " + std::to_string(m) + " is too large");
  const std::uint64_t dim_v = repkit::weyl_dimension(rs, lambda);
  const std::uint64_t total = (std::uint64_t{1} << m) * dim_v;
  if (total > bounds.complex_dim) {
    throw ResourceError("complex_dim", "Lambda p_+^* (x) V has dimension " + std::to_string(total) +
                                           ", above the bound " + std::to_string(bounds.complex_dim));
  }
  ce.module = repkit::build_irrep(rs, lambda, bounds);
  ce.root_ops = chevalley::root_operators(sc, ce.module);

  const std::uint32_t nsub = std::uint32_t{1} << m;
  ce.degrees.resize(m + 1);
  for (std::uint32_t s = 0; s < nsub; ++s) ce.degrees[popcount(s)].subsets.push_back(s);

  std::vector<std::vector<std::uint32_t>> index(nsub, std::vector<std::uint32_t>(ce.module.dim()));
  for (std::size_t k = 0; k <= m; ++k) {
    CEDegree& deg = ce.degrees[k];
    for (std::uint32_t s : deg.subsets) {
      for (std::uint32_t v = 0; v < ce.module.dim(); ++v) {
        IntVector depth = depth_of(ce, s, v);
        CEBlock& b = deg.blocks[depth];
        if (b.basis.empty()) {
          b.depth = depth;
          b.weight = weight_of(lambda, depth);
        }
        index[s][v] = static_cast<std::uint32_t>(b.basis.size());
        b.basis.push_back({s, v});
      }
    }
    deg.dim = deg.subsets.size() * ce.module.dim();
  }

  Builder builder(ce);
  for (std::size_t k = 0; k <= m; ++k) {
    for (auto& [depth, b] : ce.degrees[k].blocks) {
      const CEBlock* up = ce.block(static_cast<int>(k) + 1, depth);
      const CEBlock* down = ce.block(static_cast<int>(k) - 1, depth);
      b.d = place(b, up, index, [&](std::uint32_t s, std::uint32_t v) { return builder.differential(s, v); });
      b.codiff =
          place(b, down, index, [&](std::uint32_t s, std::uint32_t v) { return builder.codifferential(s, v); });
    }
  }

  // Laplacian and the identities, block by block.
  for (std::size_t k = 0; k <= m; ++k) {
    for (auto& [depth, b] : ce.degrees[k].blocks) {
      const int kk = static_cast<int>(k);
      const CEBlock* up = ce.block(kk + 1, depth);
      const CEBlock* down = ce.block(kk - 1, depth);
      SparseMatrix lap(b.basis.size(), b.basis.size());
      if (down) lap = lap + down->d * b.codiff;
      if (up) lap = lap + up->codiff * b.d;
      b.laplacian = std::move(lap);
      if (up) {
        require_zero(up->d * b.d, "d^2 = 0");
      }
      if (down) {
        require_zero(down->codiff * b.codiff, "codiff^2 = 0");
      }
    }
  }
  for (std::size_t k = 0; k <= m; ++k) {
    for (const auto& [depth, b] : ce.degrees[k].blocks) {
      const int kk = static_cast<int>(k);
      if (const CEBlock* up = ce.block(kk + 1, depth))
        require_zero(up->laplacian * b.d - b.d * b.laplacian, "[laplacian, d] = 0");
      if (const CEBlock* down = ce.block(kk - 1, depth))
        require_zero(down->laplacian * b.codiff - b.codiff * b.laplacian, "[laplacian, codiff] = 0");
    }
  }
  return ce;
}

std::uint64_t cohomology_dim(const CEComplex& ce, int k) {
  if (k < 0 || k > ce.top_degree()) return 0;
  std::uint64_t total = 0;
  for (const auto& [depth, b] : ce.degrees[k].blocks) {
    std::size_t r_out = linalg::certified_rank(b.d);
    std::size_t r_in = 0;
    if (const CEBlock* down = ce.block(k - 1, depth)) r_in = linalg::certified_rank(down->d);
    if (r_out + r_in > b.basis.size()) throw ConsistencyError("ranks exceed the dimension of a weight space");
    total += b.basis.size() - r_out - r_in;
  }
  return total;
}

LeviDecomposition cohomology(const CEComplex& ce, int k) {
  LeviDecomposition out;
  if (k < 0 || k > ce.top_degree()) return out;
  const RootSystem& rs = ce.root_system();
  const std::uint64_t expected = cohomology_dim(ce, k);
  for (const auto& [depth, b] : ce.degrees[k].blocks) {
    if (!levi_dominant(rs, ce.parabolic, b.weight)) continue;
    Matrix harmonic = kernel_of(b.laplacian);
    if (harmonic.cols() == 0) continue;
    std::size_t count = harmonic.cols();
    if (!ce.parabolic.levi.empty()) {
      std::vector<SparseMatrix> raised;
      for (int j : ce.parabolic.levi) raised.push_back(times_dense(ce.levi_raising(k, b, j), harmonic));
      std::vector<const SparseMatrix*> ptrs;
      for (const auto& r : raised) ptrs.push_back(&r);
      const SparseMatrix stacked = linalg::sparse_vstack(ptrs, harmonic.cols());
      count -= linalg::certified_rank(stacked);
    }
    if (count == 0) continue;
    out.components.push_back({b.weight, count});
    out.dim += count * to_count(rootcore::levi_weyl_dimension(rs, ce.parabolic, b.weight));
  }
  std::sort(out.components.begin(), out.components.end());
  if (out.dim != expected) {
    throw ConsistencyError("Levi decomposition of H^" + std::to_string(k) + " accounts for " + std::to_string(out.dim) +
                           " dimensions, ranks give " + std::to_string(expected));
  }
  return out;
}

std::vector<LeviDecomposition> kostant_prediction(const RootSystem& rs, const ParabolicSubset& p,
                                                  const Weight& lambda, const Bounds& bounds) {
  if (!rs.is_dominant_integral(lambda)) throw UsageError("highest weight " + lambda.str() + " is not dominant integral");
  const auto hasse = rootcore::hasse_diagram(rs, p, bounds);
  int top = 0;
  for (const auto& w : hasse.elements) top = std::max(top, w.length());
  std::vector<LeviDecomposition> out(top + 1);
  for (const auto& w : hasse.elements) {
    const Weight nu = rootcore::dot_action(rs, w, lambda);
    auto& piece = out[w.length()];
    piece.components.push_back({nu, 1});
    piece.dim += to_count(rootcore::levi_weyl_dimension(rs, p, nu));
  }
  for (auto& piece : out) std::sort(piece.components.begin(), piece.components.end());
  return out;
}

HodgeDecomposition hodge_decomposition(const CEComplex& ce, int k, bool with_projection) {
  HodgeDecomposition out;
  out.degree = k;
  if (k < 0 || k > ce.top_degree()) return out;
  for (const auto& [depth, b] : ce.degrees[k].blocks) {
    HodgeBlock hb;
    hb.depth = depth;
    hb.dim = b.basis.size();
    const Matrix harmonic = kernel_of(b.laplacian);
    hb.harmonic = harmonic.cols();

    SparseMatrix exact(hb.dim, 0), coexact(hb.dim, 0);
    if (const CEBlock* down = ce.block(k - 1, depth)) {
      const auto cols = linalg::certified_column_basis(down->d);
      exact = SparseMatrix(hb.dim, cols.size());
      for (std::size_t i = 0; i < cols.size(); ++i)
        for (const auto& [r, v] : down->d.column(cols[i])) exact.add(r, i, v);
    }
    if (const CEBlock* up = ce.block(k + 1, depth)) {
      const auto cols = linalg::certified_column_basis(up->codiff);
      coexact = SparseMatrix(hb.dim, cols.size());
      for (std::size_t i = 0; i < cols.size(); ++i)
        for (const auto& [r, v] : up->codiff.column(cols[i])) coexact.add(r, i, v);
    }
    hb.exact = exact.cols();
    hb.coexact = coexact.cols();
    if (hb.harmonic + hb.exact + hb.coexact != hb.dim) {
      throw ConsistencyError("Hodge dimension count fails in degree " + std::to_string(k) + " at weight " +
                             b.weight.str());
    }
    const SparseMatrix h = SparseMatrix::from_dense(harmonic);
    const SparseMatrix all = linalg::sparse_hstack({&h, &exact, &coexact}, hb.dim);
    // Full modular rank is a certificate of full rational rank.
    if (hb.dim > 0 && linalg::modular_rank(all) != hb.dim && linalg::certified_rank(all) != hb.dim) {
      throw ConsistencyError("harmonic, exact and coexact parts intersect in degree " + std::to_string(k) +
                             " at weight " + b.weight.str());
    }
    if (with_projection) {
      Matrix basis = all.to_dense();
      Matrix inv = linalg::inverse(basis);
      Matrix proj(hb.dim, hb.dim);
      for (std::size_t r = 0; r < hb.dim; ++r)
        for (std::size_t c = 0; c < hb.dim; ++c)
          for (std::size_t i = 0; i < hb.harmonic; ++i) proj(r, c) += basis(r, i) * inv(i, c);
      hb.projection = std::move(proj);
    }
    out.dim += hb.dim;
    out.harmonic += hb.harmonic;
    out.exact += hb.exact;
    out.coexact += hb.coexact;
    out.blocks.push_back(std::move(hb));
  }
  return out;
}

BGGDiagram bgg_diagram(const StructureConstants& sc, const Weight& lambda, const Bounds& bounds) {
  const RootSystem& rs = sc.root_system();
  const verma::BGGResolution res = verma::build_bgg_resolution(sc, lambda, bounds);
  BGGDiagram diagram;
  diagram.lambda = lambda;
  diagram.nilpotent = chevalley::build_nilpotent(sc, ParabolicSubset::borel(rs), Side::Minus);
  for (std::size_t i = 0; i < res.hasse.elements.size(); ++i)
    diagram.nodes.push_back({res.hasse.elements[i], -res.weights[i], res.weights[i], 1});
  for (const auto& arrow : res.arrows) {
    DiagramArrow a;
    a.source = arrow.target;
    a.target = arrow.source;
    a.symbol = arrow.map_element();
    const auto degree = a.symbol.graded_degree(diagram.nilpotent);
    const Rational expected = (res.weights[a.source] - res.weights[a.target]).height();
    if (!degree || *degree <= 0 || Rational(*degree) != expected)
      throw ConsistencyError("arrow symbol degree disagrees with the weight difference");
    a.heisenberg_order = *degree;
    diagram.arrows.push_back(std::move(a));
  }
  return diagram;
}

EulerIndex euler_index(const RootSystem& rs, const ParabolicSubset& p, const Weight& lambda, const Bounds& bounds) {
  EulerIndex out;
  const auto hasse = rootcore::hasse_diagram(rs, p, bounds);
  out.chi = static_cast<std::int64_t>(hasse.elements.size());
  out.dim_v = static_cast<std::int64_t>(repkit::weyl_dimension(rs, lambda));
  out.index = out.chi * out.dim_v;
  for (const auto& w : hasse.elements) {
    const auto piece = static_cast<std::int64_t>(to_count(
        rootcore::levi_weyl_dimension(rs, p, rootcore::dot_action(rs, w, lambda))));
    out.alt_rank_sum += (w.length() % 2 == 0 ? 1 : -1) * piece;
  }
  return out;
}

}  // namespace bgg::kostant
