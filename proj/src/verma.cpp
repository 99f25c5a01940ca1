#include "bgg/verma.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "bgg/errors.hpp"
#include "bgg/repkit.hpp"

namespace bgg::verma {

using chevalley::Side;
using linalg::Matrix;
using rootcore::ParabolicSubset;
using rootcore::RootVec;

namespace {

int height(const IntVector& c) { return std::accumulate(c.begin(), c.end(), 0); }

IntVector minus(const IntVector& a, const IntVector& b) {
  IntVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

bool nonnegative(const IntVector& c) {
  return std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
}

IntVector monomial_depth(const GradedNilpotent& n, const Monomial& m) {
  IntVector d(n.roots.empty() ? 0 : n.roots[0].size(), 0);
  for (std::size_t k = 0; k < m.size(); ++k)
    for (std::size_t r = 0; r < d.size(); ++r) d[r] += m[k] * n.roots[k][r];
  return d;
}

IntVector integral_depth(const Weight& lambda, const Weight& mu) {
  auto c = (lambda - mu).integral_coords();
  if (!c) throw ConsistencyError("weight difference " + (lambda - mu).str() + " is not in the root lattice");
  return *c;
}

class PartitionCounter {
 public:
  explicit PartitionCounter(const RootSystem& rs) : rs_(rs) {}

  std::uint64_t operator()(const IntVector& c) { return count(0, c); }

 private:
  std::uint64_t count(std::size_t k, const IntVector& rem) {
    if (!nonnegative(rem)) return 0;
    if (k == rs_.num_positive()) return height(rem) == 0 ? 1 : 0;
    auto key = std::make_pair(k, rem);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t total = 0;
    IntVector r = rem;
    while (nonnegative(r)) {
      total += count(k + 1, r);
      r = minus(r, rs_.positive_roots()[k]);
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

  const RootSystem& rs_;
  std::map<std::pair<std::size_t, IntVector>, std::uint64_t> memo_;
};

// Per-depth monomial index for the n of a Borel, shared across modules.
class MonomialIndex {
 public:
  explicit MonomialIndex(const GradedNilpotent& n) : n_(n) {}

  const std::vector<Monomial>& basis(const IntVector& c) {
    auto it = bases_.find(c);
    if (it == bases_.end()) {
      it = bases_.emplace(c, nonnegative(c) ? pbw_monomials(n_, c) : std::vector<Monomial>{}).first;
      auto& idx = index_[c];
      for (std::size_t k = 0; k < it->second.size(); ++k) idx.emplace(it->second[k], k);
    }
    return it->second;
  }

  std::size_t index(const IntVector& c, const Monomial& m) {
    basis(c);
    auto& idx = index_.at(c);
    auto it = idx.find(m);
    if (it == idx.end()) throw ConsistencyError("monomial outside the expected weight space");
    return it->second;
  }

 private:
  const GradedNilpotent& n_;
  std::map<IntVector, std::vector<Monomial>> bases_;
  std::map<IntVector, std::map<Monomial, std::size_t>> index_;
};

}  // namespace

std::uint64_t kostant_partition(const RootSystem& rs, const IntVector& depth) {
  return PartitionCounter(rs)(depth);
}

std::vector<Monomial> pbw_monomials(const GradedNilpotent& n, const IntVector& depth) {
  std::vector<Monomial> out;
  Monomial m(n.dim(), 0);
  std::function<void(std::size_t, IntVector)> rec = [&](std::size_t k, IntVector rem) {
    if (k == n.dim()) {
      if (height(rem) == 0) out.push_back(m);
      return;
    }
    int a = 0;
    while (nonnegative(rem)) {
      m[k] = a;
      rec(k + 1, rem);
      rem = minus(rem, n.roots[k]);
      ++a;
    }
    m[k] = 0;
  };
  if (nonnegative(depth)) rec(0, depth);
  std::sort(out.begin(), out.end(), chevalley::pbw_greater);
  return out;
}

std::vector<IntVector> depths_up_to(int rank, int max_height) {
  std::vector<IntVector> out;
  IntVector c(rank, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == rank) {
      out.push_back(c);
      return;
    }
    for (int x = left; x >= 0; --x) {
      c[i] = x;
      rec(i + 1, left - x);
    }
    c[i] = 0;
  };
  if (max_height >= 0) rec(0, max_height);
  std::stable_sort(out.begin(), out.end(), [](const IntVector& a, const IntVector& b) { return height(a) < height(b); });
  return out;
}

TruncatedVerma::TruncatedVerma(const StructureConstants& sc, Weight lambda, int cutoff)
    : sc_(&sc),
      n_(chevalley::build_nilpotent(sc, ParabolicSubset::borel(sc.root_system()), Side::Minus)),
      lambda_(std::move(lambda)),
      cutoff_(cutoff),
      pbw_(std::make_unique<chevalley::PBWAlgebra>(n_)) {
  if (cutoff < 0) throw UsageError("cutoff must be nonnegative");
}

const std::vector<Monomial>& TruncatedVerma::basis(const IntVector& depth) const {
  auto it = bases_.find(depth);
  if (it != bases_.end()) return it->second;
  std::vector<Monomial> b;
  if (nonnegative(depth) && height(depth) <= cutoff_) b = pbw_monomials(n_, depth);
  return bases_.emplace(depth, std::move(b)).first->second;
}

RationalVector TruncatedVerma::coordinates(const IntVector& depth, const UEAElement& x) const {
  const auto& b = basis(depth);
  RationalVector v(b.size());
  for (const auto& [m, c] : x.terms()) {
    auto it = std::lower_bound(b.begin(), b.end(), m, chevalley::pbw_greater);
    if (it == b.end() || *it != m) throw ConsistencyError("element has a term outside the weight space");
    v[static_cast<std::size_t>(it - b.begin())] = c;
  }
  return v;
}

UEAElement TruncatedVerma::element(const IntVector& depth, const RationalVector& coords) const {
  const auto& b = basis(depth);
  UEAElement u(n_.dim());
  for (std::size_t k = 0; k < b.size(); ++k) u.add(b[k], coords[k]);
  return u;
}

Rational TruncatedVerma::cartan_scalar(int i, const IntVector& depth) const {
  Rational s = root_system().pairing(lambda_, i);
  for (std::size_t j = 0; j < depth.size(); ++j) s -= depth[j] * root_system().cartan_matrix()[i - 1][j];
  return s;
}

const UEAElement& TruncatedVerma::raise_monomial(int i, const Monomial& m) const {
  auto key = std::make_pair(i, m);
  if (auto it = raise_cache_.find(key); it != raise_cache_.end()) return it->second;
  std::size_t j = 0;
  while (j < m.size() && m[j] == 0) ++j;
  UEAElement result(n_.dim());
  if (j < m.size()) {
    // e_i y_j m' v = [e_i, y_j] m' v + y_j (e_i m' v)
    Monomial rest = m;
    --rest[j];
    const UEAElement inner = raise_monomial(i, rest);
    result = pbw_->left_multiply(j, inner);
    const RootSystem& rs = root_system();
    RootVec lowered = n_.roots[j];
    --lowered[i - 1];
    if (std::all_of(lowered.begin(), lowered.end(), [](int x) { return x == 0; })) {
      // [e_i, y_i] = -h_i
      result.add(rest, -cartan_scalar(i, monomial_depth(n_, rest)));
    } else if (auto k = rs.root_index(lowered); k && *k < rs.num_positive()) {
      // [e_i, -e_{-b}] = -N_{a_i,-b} e_{a_i-b} = N_{a_i,-b} y_{b-a_i}
      const int c = sc_->N(rs.simple_root_index(i), rs.negative_of(n_.root_indices[j]));
      for (const auto& [u, d] : pbw_->generator_times(*k, rest).terms()) result.add(u, Rational(c) * d);
    }
  }
  return raise_cache_.emplace(std::move(key), std::move(result)).first->second;
}

UEAElement TruncatedVerma::raise(int i, const UEAElement& x) const {
  UEAElement out(n_.dim());
  for (const auto& [m, c] : x.terms())
    for (const auto& [u, d] : raise_monomial(i, m).terms()) out.add(u, c * d);
  return out;
}

UEAElement TruncatedVerma::lower(int i, const UEAElement& x) const {
  return -pbw_->left_multiply(root_system().simple_root_index(i), x);
}

UEAElement TruncatedVerma::act_root(std::size_t root, const UEAElement& x) const {
  const RootSystem& rs = root_system();
  if (root >= rs.num_positive()) return -pbw_->left_multiply(rs.negative_of(root), x);
  const auto& recipe = sc_->recipes()[root];
  if (recipe.divisor == 0) {
    for (int i = 1; i <= rs.rank(); ++i)
      if (rs.simple_root_index(i) == root) return raise(i, x);
  }
  const UEAElement a = act_root(recipe.epsilon, act_root(recipe.zeta, x));
  const UEAElement b = act_root(recipe.zeta, act_root(recipe.epsilon, x));
  return Rational(1, recipe.divisor) * (a - b);
}

Matrix TruncatedVerma::raise_matrix(int i, const IntVector& depth) const {
  IntVector tgt = depth;
  --tgt[i - 1];
  const auto& src_basis = basis(depth);
  const auto& tgt_basis = basis(tgt);
  Matrix m(tgt_basis.size(), src_basis.size());
  if (tgt_basis.empty()) return m;
  for (std::size_t col = 0; col < src_basis.size(); ++col) {
    const RationalVector v = coordinates(tgt, raise_monomial(i, src_basis[col]));
    for (std::size_t r = 0; r < v.size(); ++r) m(r, col) = v[r];
  }
  return m;
}

Matrix TruncatedVerma::lower_matrix(int i, const IntVector& depth) const {
  IntVector tgt = depth;
  ++tgt[i - 1];
  const auto& src_basis = basis(depth);
  const auto& tgt_basis = basis(tgt);
  Matrix m(tgt_basis.size(), src_basis.size());
  if (tgt_basis.empty()) return m;
  for (std::size_t col = 0; col < src_basis.size(); ++col) {
    const RationalVector v = coordinates(tgt, lower(i, UEAElement::monomial(src_basis[col])));
    for (std::size_t r = 0; r < v.size(); ++r) m(r, col) = v[r];
  }
  return m;
}

Rational TruncatedVerma::shapovalov(const UEAElement& a, const UEAElement& b) const {
  Rational total = 0;
  const Monomial one(n_.dim(), 0);
  for (const auto& [m, c] : a.terms()) {
    // tau(y_{i1} ... y_{ik}) = tau(y_ik) ... tau(y_i1), with tau(y_b) = -e_b
    UEAElement cur = b;
    for (std::size_t k = 0; k < m.size(); ++k)
      for (int t = 0; t < m[k]; ++t) cur = -act_root(n_.root_indices[k], cur);
    auto it = cur.terms().find(one);
    if (it != cur.terms().end()) total += c * it->second;
  }
  return total;
}

Matrix TruncatedVerma::shapovalov_matrix(const IntVector& depth) const {
  const auto& b = basis(depth);
  Matrix m(b.size(), b.size());
  for (std::size_t r = 0; r < b.size(); ++r)
    for (std::size_t c = 0; c < b.size(); ++c)
      m(r, c) = shapovalov(UEAElement::monomial(b[r]), UEAElement::monomial(b[c]));
  return m;
}

std::vector<UEAElement> singular_space(const TruncatedVerma& m, const IntVector& depth) {
  const auto& b = m.basis(depth);
  if (b.empty()) return {};
  const int rank = m.root_system().rank();
  std::vector<Matrix> blocks;
  std::size_t rows = 0;
  for (int i = 1; i <= rank; ++i) {
    if (depth[i - 1] == 0) continue;
    blocks.push_back(m.raise_matrix(i, depth));
    rows += blocks.back().rows();
  }
  Matrix stacked(rows, b.size());
  std::size_t r0 = 0;
  for (const Matrix& blk : blocks) {
    for (std::size_t r = 0; r < blk.rows(); ++r)
      for (std::size_t c = 0; c < blk.cols(); ++c) stacked(r0 + r, c) = blk(r, c);
    r0 += blk.rows();
  }
  const Matrix null = linalg::nullspace(stacked);
  std::vector<UEAElement> out;
  for (std::size_t c = 0; c < null.cols(); ++c) out.push_back(m.element(depth, null.column_vector(c)).normalized());
  return out;
}

std::optional<SingularVector> singular_vector(const StructureConstants& sc, const Weight& lambda, const WeylWord& w) {
  const RootSystem& rs = sc.root_system();
  const Weight source = rootcore::dot_action(rs, w, lambda);
  auto c = (lambda - source).integral_coords();
  if (!c || !nonnegative(*c)) return std::nullopt;
  TruncatedVerma m(sc, lambda, height(*c));
  auto space = singular_space(m, *c);
  if (space.empty()) return std::nullopt;
  if (space.size() != 1 && rs.is_dominant_integral(lambda))
    throw ConsistencyError("singular vectors of weight " + source.str() + " span " + std::to_string(space.size()) +
                           " dimensions; expected exactly one");
  return SingularVector{space.front(), source, lambda, *c};
}

std::vector<std::size_t> BGGResolution::term(int k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < hasse.elements.size(); ++i)
    if (hasse.elements[i].length() == k) out.push_back(i);
  return out;
}

int default_cutoff(const BGGResolution& res) { return height(res.depths.back()) + 2; }

BGGResolution build_bgg_resolution(const StructureConstants& sc, const Weight& lambda, const Bounds& bounds) {
  const RootSystem& rs = sc.root_system();
  if (!rs.is_dominant_integral(lambda)) throw UsageError("highest weight " + lambda.str() + " is not dominant integral");

  BGGResolution res;
  res.lambda = lambda;
  res.hasse = rootcore::hasse_diagram(rs, ParabolicSubset::borel(rs), bounds);
  for (const WeylWord& w : res.hasse.elements) {
    res.weights.push_back(rootcore::dot_action(rs, w, lambda));
    res.depths.push_back(integral_depth(lambda, res.weights.back()));
    res.max_length = std::max(res.max_length, w.length());
  }

  const std::size_t count = res.hasse.elements.size();
  const int total = height(res.depths.back());
  std::vector<std::unique_ptr<TruncatedVerma>> modules(count);
  for (const auto& [u, w] : res.hasse.edges) {
    if (!modules[u]) modules[u] = std::make_unique<TruncatedVerma>(sc, res.weights[u], total - height(res.depths[u]));
    auto space = singular_space(*modules[u], minus(res.depths[w], res.depths[u]));
    if (space.size() != 1)
      throw ConsistencyError("Verma morphism space M(" + res.weights[w].str() + ") -> M(" + res.weights[u].str() +
                             ") has dimension " + std::to_string(space.size()));
    res.arrows.push_back({w, u, space.front(), 1});
  }

  // Gauge: every square s -> a -> g, s -> b -> g must anticommute.
  const GradedNilpotent& n = modules[0]->nilpotent();
  chevalley::PBWAlgebra& alg = modules[0]->algebra();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> arrow_of;
  std::vector<std::vector<std::size_t>> children(count);
  for (std::size_t k = 0; k < res.arrows.size(); ++k) {
    arrow_of[{res.arrows[k].source, res.arrows[k].target}] = k;
    children[res.arrows[k].source].push_back(res.arrows[k].target);
  }
  for (std::size_t s = 0; s < count; ++s) {
    if (res.hasse.elements[s].length() < 2) continue;
    // grandchild -> list of (child, composite with lower scalar applied)
    std::map<std::size_t, std::vector<std::pair<std::size_t, UEAElement>>> via;
    for (std::size_t a : children[s]) {
      const ResolutionArrow& top = res.arrows[arrow_of.at({s, a})];
      for (std::size_t g : children[a]) {
        const ResolutionArrow& low = res.arrows[arrow_of.at({a, g})];
        via[g].emplace_back(a, alg.multiply(top.symbol, low.map_element()));
      }
    }
    // constraint: c_b = factor * c_a
    std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> adj;
    for (const auto& [g, paths] : via) {
      if (paths.size() != 2)
        throw ConsistencyError("Bruhat interval of length two does not have exactly two middle elements");
      const auto& [a, pa] = paths[0];
      const auto& [b, pb] = paths[1];
      if (pa.is_zero() || pb.is_zero()) throw ConsistencyError("composite of Verma embeddings vanishes");
      const auto la = pa.leading_term(), lb = pb.leading_term();
      const Rational r = la.second / lb.second;
      if (la.first != lb.first || !(pa == r * pb))
        throw ConsistencyError("composites around a square are not proportional");
      adj[a].emplace_back(b, -r);
      adj[b].emplace_back(a, Rational(-1) / r);
    }
    std::map<std::size_t, Rational> scale;
    for (std::size_t start : children[s]) {
      if (scale.count(start)) continue;
      scale[start] = 1;
      std::deque<std::size_t> queue{start};
      while (!queue.empty()) {
        const std::size_t a = queue.front();
        queue.pop_front();
        for (const auto& [b, f] : adj[a]) {
          const Rational want = f * scale[a];
          if (auto it = scale.find(b); it != scale.end()) {
            if (it->second != want) throw ConsistencyError("square anticommutation system is inconsistent");
          } else {
            scale[b] = want;
            queue.push_back(b);
          }
        }
      }
    }
    for (std::size_t a : children[s]) res.arrows[arrow_of.at({s, a})].scalar = scale.at(a);
  }
  (void)n;
  return res;
}

bool ExactnessReport::ok() const {
  if (!composition_failures.empty()) return false;
  return std::all_of(entries.begin(), entries.end(), [](const ExactnessEntry& e) { return e.defect == 0; });
}

ExactnessReport verify_resolution(const StructureConstants& sc, const BGGResolution& res, int cutoff) {
  const RootSystem& rs = sc.root_system();
  const GradedNilpotent n = chevalley::build_nilpotent(sc, ParabolicSubset::borel(rs), Side::Minus);
  chevalley::PBWAlgebra alg(n);
  MonomialIndex index(n);
  Bounds generous;
  generous.irrep_dim = std::numeric_limits<std::size_t>::max();
  const repkit::Character chv = repkit::freudenthal_character(rs, res.lambda, generous);

  ExactnessReport report;
  report.cutoff = cutoff;
  const int top = res.max_length;
  std::vector<std::vector<std::size_t>> terms(top + 1);
  for (int k = 0; k <= top; ++k) terms[k] = res.term(k);

  // x * symbol for monomials x, cached per arrow.
  std::vector<std::map<Monomial, UEAElement>> images(res.arrows.size());
  std::vector<std::vector<std::size_t>> out_arrows(res.hasse.elements.size());
  for (std::size_t k = 0; k < res.arrows.size(); ++k) out_arrows[res.arrows[k].source].push_back(k);

  for (const IntVector& c : depths_up_to(rs.rank(), cutoff)) {
    // layout of C_k at depth c
    std::vector<std::size_t> dims(top + 2, 0);
    std::vector<std::map<std::size_t, std::size_t>> offset(top + 1);
    for (int k = 0; k <= top; ++k) {
      for (std::size_t w : terms[k]) {
        offset[k][w] = dims[k];
        dims[k] += index.basis(minus(c, res.depths[w])).size();
      }
    }
    std::vector<Matrix> delta(top + 2);
    std::vector<std::size_t> ranks(top + 2, 0);
    for (int k = 1; k <= top; ++k) {
      Matrix d(dims[k - 1], dims[k]);
      for (std::size_t w : terms[k]) {
        const IntVector src = minus(c, res.depths[w]);
        const auto& basis = index.basis(src);
        for (std::size_t col = 0; col < basis.size(); ++col) {
          for (std::size_t a : out_arrows[w]) {
            const ResolutionArrow& arr = res.arrows[a];
            auto it = images[a].find(basis[col]);
            if (it == images[a].end())
              it = images[a].emplace(basis[col], alg.multiply(UEAElement::monomial(basis[col]), arr.map_element())).first;
            const IntVector tgt = minus(c, res.depths[arr.target]);
            for (const auto& [m, v] : it->second.terms())
              d(offset[k - 1].at(arr.target) + index.index(tgt, m), offset[k].at(w) + col) += v;
          }
        }
      }
      ranks[k] = linalg::rank(d);
      delta[k] = std::move(d);
    }
    for (int k = 2; k <= top; ++k) {
      if (dims[k] == 0 || dims[k - 2] == 0) continue;
      if (!(delta[k - 1] * delta[k]).is_zero())
        report.composition_failures.push_back("delta_" + std::to_string(k - 1) + " delta_" + std::to_string(k) +
                                              " != 0 at depth " + Weight::from_root(c).str());
    }
    const Weight mu = res.lambda - Weight::from_root(c);
    for (int k = 0; k <= top; ++k) {
      long defect = static_cast<long>(dims[k]) - static_cast<long>(ranks[k]) - static_cast<long>(ranks[k + 1]);
      if (k == 0) defect -= static_cast<long>(chv.multiplicity(mu));
      report.entries.push_back({mu, c, k, defect});
    }
  }
  return report;
}

CharacterIdentityResult character_identity(const RootSystem& rs, const Weight& lambda, int cutoff, const Bounds& bounds) {
  if (!rs.is_dominant_integral(lambda)) throw UsageError("highest weight " + lambda.str() + " is not dominant integral");
  const repkit::Character chv = repkit::freudenthal_character(rs, lambda, bounds);
  std::vector<std::pair<IntVector, int>> terms;
  for (const WeylWord& w : rootcore::enumerate_weyl_group(rs, bounds))
    terms.emplace_back(integral_depth(lambda, rootcore::dot_action(rs, w, lambda)), w.length() % 2 ? -1 : 1);
  PartitionCounter partitions(rs);
  CharacterIdentityResult result;
  for (const IntVector& c : depths_up_to(rs.rank(), cutoff)) {
    long lhs = 0;
    for (const auto& [d, sign] : terms) {
      const IntVector rem = minus(c, d);
      if (nonnegative(rem)) lhs += sign * static_cast<long>(partitions(rem));
    }
    const Weight mu = lambda - Weight::from_root(c);
    const long rhs = static_cast<long>(chv.multiplicity(mu));
    ++result.checked;
    if (lhs != rhs) {
      result.holds = false;
      result.defects.push_back({mu, lhs, rhs});
    }
  }
  return result;
}

}  // namespace bgg::verma
