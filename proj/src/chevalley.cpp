#include "bgg/chevalley.hpp"

#include <algorithm>
#include <sstream>

#include "bgg/errors.hpp"

namespace bgg::chevalley {

using linalg::SparseMatrix;
using rootcore::Weight;

namespace {

std::optional<std::size_t> sum_index(const RootSystem& rs, std::size_t a, std::size_t b) {
  RootVec s = rs.roots()[a];
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += rs.roots()[b][i];
  return rs.root_index(s);
}

// Largest p with beta - p alpha a root.
int string_below(const RootSystem& rs, const RootVec& alpha, const RootVec& beta) {
  int p = 0;
  RootVec v = beta;
  for (;;) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= alpha[i];
    if (!rs.is_root(v)) return p;
    ++p;
  }
}

std::vector<RootVectorRecipe> extraspecial_recipes(const RootSystem& rs) {
  std::vector<RootVectorRecipe> recipes(rs.num_positive());
  for (std::size_t k = 0; k < rs.num_positive(); ++k) {
    const RootVec& gamma = rs.positive_roots()[k];
    int height = 0;
    for (int x : gamma) height += x;
    if (height == 1) continue;
    for (int i = 1; i <= rs.rank(); ++i) {
      RootVec zeta = gamma;
      --zeta[i - 1];
      auto z = rs.root_index(zeta);
      if (!z || *z >= rs.num_positive()) continue;
      const std::size_t eps = rs.simple_root_index(i);
      recipes[k] = {eps, *z, string_below(rs, rs.roots()[eps], zeta) + 1};
      break;
    }
    if (recipes[k].divisor == 0) throw ConsistencyError("no extraspecial pair for a non-simple root");
  }
  return recipes;
}

std::vector<SparseMatrix> realize(const RootSystem& rs, const std::vector<RootVectorRecipe>& recipes,
                                  const std::vector<SparseMatrix>& e, const std::vector<SparseMatrix>& f) {
  const std::size_t np = rs.num_positive();
  std::vector<SparseMatrix> ops(rs.roots().size()), y(np);
  for (int i = 1; i <= rs.rank(); ++i) {
    const std::size_t k = rs.simple_root_index(i);
    ops[k] = e[i - 1];
    ops[rs.negative_of(k)] = f[i - 1];
    y[k] = Rational(-1) * f[i - 1];
  }
  for (std::size_t k = 0; k < np; ++k) {
    const RootVectorRecipe& r = recipes[k];
    if (r.divisor == 0) continue;
    const Rational inv(1, r.divisor);
    ops[k] = inv * commutator(ops[r.epsilon], ops[r.zeta]);
    y[k] = inv * commutator(y[r.epsilon], y[r.zeta]);
    ops[rs.negative_of(k)] = Rational(-1) * y[k];
  }
  return ops;
}

void add_to(LieVector& acc, const LieVector& v, long scale) {
  for (const auto& [k, c] : v) {
    long& slot = acc[k];
    slot += scale * c;
    if (slot == 0) acc.erase(k);
  }
}

}  // namespace

StructureConstants::StructureConstants(RootSystem rs, std::vector<std::vector<int>> table,
                                       std::vector<RootVectorRecipe> recipes)
    : rs_(std::move(rs)), table_(std::move(table)), recipes_(std::move(recipes)) {}

std::size_t StructureConstants::dim() const { return rs_.roots().size() + static_cast<std::size_t>(rs_.rank()); }

LieVector StructureConstants::bracket(std::size_t x, std::size_t y) const {
  const std::size_t nr = rs_.roots().size();
  LieVector out;
  if (x < nr && y < nr) {
    if (rs_.negative_of(x) == y) {
      const IntVector co = rs_.coroot(rs_.roots()[x]);
      for (std::size_t i = 0; i < co.size(); ++i)
        if (co[i] != 0) out[nr + i] = co[i];
    } else if (auto s = sum_index(rs_, x, y); s && table_[x][y] != 0) {
      out[*s] = table_[x][y];
    }
  } else if (x < nr) {
    const int c = rs_.pairing(rs_.roots()[x], static_cast<int>(y - nr) + 1);
    if (c != 0) out[x] = -c;
  } else if (y < nr) {
    const int c = rs_.pairing(rs_.roots()[y], static_cast<int>(x - nr) + 1);
    if (c != 0) out[y] = c;
  }
  return out;
}

LieVector StructureConstants::bracket(const LieVector& x, const LieVector& y) const {
  LieVector out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) add_to(out, bracket(a, b), ca * cb);
  return out;
}

std::optional<StructureConstants::Triple> StructureConstants::first_jacobi_failure() const {
  const std::size_t n = dim();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      LieVector s = bracket(x, y);
      add_to(s, bracket(y, x), 1);
      if (!s.empty()) return Triple{x, y, y};
    }
  }
  std::vector<std::vector<LieVector>> br(n, std::vector<LieVector>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) br[x][y] = bracket(x, y);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      for (std::size_t z = y + 1; z < n; ++z) {
        LieVector j;
        for (const auto& [k, c] : br[y][z]) add_to(j, br[x][k], c);
        for (const auto& [k, c] : br[z][x]) add_to(j, br[y][k], c);
        for (const auto& [k, c] : br[x][y]) add_to(j, br[z][k], c);
        if (!j.empty()) return Triple{x, y, z};
      }
    }
  }
  return std::nullopt;
}

std::string StructureConstants::basis_name(std::size_t x) const {
  const std::size_t nr = rs_.roots().size();
  if (x >= nr) return "h" + std::to_string(x - nr + 1);
  std::string s = "e[";
  const RootVec& r = rs_.roots()[x];
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + "]";
}

StructureConstants chevalley_constants(const RootSystem& rs) {
  Bounds generous;
  generous.irrep_dim = 1u << 20;
  const repkit::IrrepData adj = repkit::build_irrep(rs, Weight::from_root(rs.highest_root()), generous);
  const auto recipes = extraspecial_recipes(rs);
  const auto ops = realize(rs, recipes, adj.e, adj.f);

  std::vector<SparseMatrix> h;
  for (int i = 1; i <= rs.rank(); ++i) {
    h.push_back(adj.h(rs, i));
    if (!(commutator(adj.e[i - 1], adj.f[i - 1]) == h.back()))
      throw ConsistencyError("[e_i, f_i] != h_i in the adjoint realization");
  }

  const std::size_t nr = rs.roots().size();
  std::vector<std::vector<int>> table(nr, std::vector<int>(nr, 0));
  for (std::size_t a = 0; a < nr; ++a) {
    for (std::size_t b = 0; b < nr; ++b) {
      const SparseMatrix c = commutator(ops[a], ops[b]);
      if (rs.negative_of(a) == b) {
        SparseMatrix ha(adj.dim(), adj.dim());
        const IntVector co = rs.coroot(rs.roots()[a]);
        for (int i = 0; i < rs.rank(); ++i) ha = ha + Rational(co[i]) * h[i];
        if (!(c == ha)) throw ConsistencyError("[e_a, e_-a] != h_a for a root vector");
        continue;
      }
      auto s = sum_index(rs, a, b);
      if (!s) {
        if (!c.is_zero()) throw ConsistencyError("bracket of root vectors with non-root sum is nonzero");
        continue;
      }
      const SparseMatrix& es = ops[*s];
      std::size_t col = 0;
      while (es.column(col).empty()) ++col;
      const auto& [row, val] = es.column(col).front();
      const Rational ratio = c.at(row, col) / val;
      if (ratio.get_den() != 1 || !(c == ratio * es))
        throw ConsistencyError("root vector bracket is not an integer multiple of the sum root vector");
      table[a][b] = static_cast<int>(ratio.get_num().get_si());
    }
  }

  StructureConstants sc(rs, std::move(table), recipes);
  for (std::size_t a = 0; a < nr; ++a) {
    for (std::size_t b = 0; b < nr; ++b) {
      if (!sum_index(rs, a, b)) continue;
      const int p = string_below(rs, rs.roots()[a], rs.roots()[b]);
      if (std::abs(sc.N(a, b)) != p + 1) throw ConsistencyError("|N_{a,b}| != p + 1");
    }
  }
  if (auto t = sc.first_jacobi_failure())
    throw ConsistencyError("Jacobi identity fails on " + sc.basis_name(t->x) + ", " + sc.basis_name(t->y) + ", " +
                           sc.basis_name(t->z));
  return sc;
}

std::vector<SparseMatrix> root_operators(const StructureConstants& sc, const repkit::IrrepData& v) {
  return realize(sc.root_system(), sc.recipes(), v.e, v.f);
}

bool GradedNilpotent::is_abelian() const {
  for (const auto& row : table)
    for (const auto& b : row)
      if (b) return false;
  return true;
}

int GradedNilpotent::nilpotency_step() const {
  std::vector<bool> current(dim(), true);
  int step = 0;
  while (std::find(current.begin(), current.end(), true) != current.end()) {
    ++step;
    std::vector<bool> next(dim(), false);
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        if (current[j] && table[i][j]) next[table[i][j]->k] = true;
    current = std::move(next);
  }
  return step;
}

GradedNilpotent build_nilpotent(const StructureConstants& sc, const ParabolicSubset& p, Side side) {
  const RootSystem& rs = sc.root_system();
  GradedNilpotent g;
  g.side = side;
  for (std::size_t k = 0; k < rs.num_positive(); ++k) {
    const int ht = rootcore::parabolic_height(p, rs.positive_roots()[k]);
    if (ht <= 0) continue;
    g.roots.push_back(rs.positive_roots()[k]);
    g.root_indices.push_back(k);
    g.grade.push_back(ht);
    g.depth = std::max(g.depth, ht);
    std::string name = side == Side::Plus ? "e" : "y";
    for (int x : rs.positive_roots()[k]) name += std::to_string(x);
    g.names.push_back(name);
  }
  const std::size_t n = g.dim();
  g.table.assign(n, std::vector<std::optional<GradedNilpotent::Bracket>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto s = sum_index(rs, g.root_indices[i], g.root_indices[j]);
      if (!s) continue;
      auto pos = std::find(g.root_indices.begin(), g.root_indices.end(), *s);
      if (pos == g.root_indices.end()) throw ConsistencyError("nilradical is not closed under brackets");
      const std::size_t k = static_cast<std::size_t>(pos - g.root_indices.begin());
      // y_b = -e_{-b}: [y_a, y_b] = [e_-a, e_-b] = N_{-a,-b} e_{-a-b} = -N_{-a,-b} y_{a+b}.
      const int c = side == Side::Plus ? sc.N(g.root_indices[i], g.root_indices[j])
                                       : -sc.N(rs.negative_of(g.root_indices[i]), rs.negative_of(g.root_indices[j]));
      if (c != 0) g.table[i][j] = GradedNilpotent::Bracket{k, c};
      if (g.grade[k] != g.grade[i] + g.grade[j]) throw ConsistencyError("bracket does not respect the grading");
    }
  }
  if (n > 0 && g.nilpotency_step() != g.depth)
    throw ConsistencyError("nilpotency step differs from the grading depth");
  return g;
}

bool pbw_greater(const Monomial& a, const Monomial& b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

UEAElement UEAElement::one(std::size_t nvars) { return monomial(Monomial(nvars, 0)); }

UEAElement UEAElement::generator(std::size_t nvars, std::size_t i) {
  Monomial m(nvars, 0);
  m[i] = 1;
  return monomial(m);
}

UEAElement UEAElement::monomial(const Monomial& m, const Rational& c) {
  UEAElement u(m.size());
  u.add(m, c);
  return u;
}

void UEAElement::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

UEAElement UEAElement::operator+(const UEAElement& o) const {
  UEAElement r = *this;
  r.nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) r.add(m, c);
  return r;
}

UEAElement UEAElement::operator-(const UEAElement& o) const { return *this + (-o); }

UEAElement UEAElement::operator-() const { return Rational(-1) * *this; }

UEAElement operator*(const Rational& s, const UEAElement& a) {
  UEAElement r(a.nvars_);
  if (s == 0) return r;
  for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, s * c);
  return r;
}

std::vector<std::pair<Monomial, Rational>> UEAElement::sorted_terms() const {
  std::vector<std::pair<Monomial, Rational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return pbw_greater(a.first, b.first); });
  return out;
}

std::pair<Monomial, Rational> UEAElement::leading_term() const {
  if (terms_.empty()) throw UsageError("leading term of the zero element");
  auto best = terms_.begin();
  for (auto it = terms_.begin(); it != terms_.end(); ++it)
    if (pbw_greater(it->first, best->first)) best = it;
  return *best;
}

UEAElement UEAElement::normalized() const {
  if (is_zero()) return *this;
  return Rational(1) / leading_term().second * *this;
}

std::optional<int> UEAElement::graded_degree(const GradedNilpotent& g) const {
  std::optional<int> deg;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * g.grade[i];
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

std::optional<IntVector> UEAElement::weight(const GradedNilpotent& g) const {
  std::optional<IntVector> wt;
  const int sign = g.side == Side::Plus ? 1 : -1;
  for (const auto& [m, c] : terms_) {
    IntVector w(g.roots.empty() ? 0 : g.roots[0].size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t r = 0; r < w.size(); ++r) w[r] += sign * m[i] * g.roots[i][r];
    if (wt && *wt != w) return std::nullopt;
    wt = w;
  }
  return wt;
}

std::string UEAElement::str(const GradedNilpotent& g) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : sorted_terms()) {
    Rational mag = c;
    if (c < 0) {
      out << (first ? "-" : " - ");
      mag = -c;
    } else if (!first) {
      out << " + ";
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      factors.push_back(g.names[i] + (m[i] > 1 ? "^" + std::to_string(m[i]) : ""));
    }
    if (factors.empty()) {
      out << to_string(mag);
      continue;
    }
    if (mag != 1) out << to_string(mag) << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) out << (k ? "*" : "") << factors[k];
  }
  return out.str();
}

const UEAElement& PBWAlgebra::generator_times(std::size_t i, const Monomial& m) {
  auto key = std::make_pair(i, m);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  std::size_t first = 0;
  while (first < m.size() && m[first] == 0) ++first;
  UEAElement result(m.size());
  if (i <= first) {
    Monomial n = m;
    ++n[i];
    result.add(n, 1);
  } else {
    // b_i b_f m' = b_f (b_i m') + [b_i, b_f] m'
    Monomial rest = m;
    --rest[first];
    const UEAElement inner = generator_times(i, rest);
    for (const auto& [t, c] : inner.terms()) {
      const UEAElement& lifted = generator_times(first, t);
      for (const auto& [u, d] : lifted.terms()) result.add(u, c * d);
    }
    if (const auto& br = g_->bracket(i, first)) {
      const UEAElement& extra = generator_times(br->k, rest);
      for (const auto& [u, d] : extra.terms()) result.add(u, Rational(br->coeff) * d);
    }
  }
  return cache_.emplace(std::move(key), std::move(result)).first->second;
}

UEAElement PBWAlgebra::left_multiply(std::size_t i, const UEAElement& a) {
  UEAElement out(g_->dim());
  for (const auto& [m, c] : a.terms()) {
    const UEAElement& p = generator_times(i, m);
    for (const auto& [u, d] : p.terms()) out.add(u, c * d);
  }
  return out;
}

UEAElement PBWAlgebra::multiply(const UEAElement& a, const UEAElement& b) {
  UEAElement out(g_->dim());
  for (const auto& [m, c] : a.terms()) {
    UEAElement cur = b;
    for (std::size_t i = m.size(); i-- > 0;)
      for (int k = 0; k < m[i]; ++k) cur = left_multiply(i, cur);
    for (const auto& [u, d] : cur.terms()) out.add(u, c * d);
  }
  return out;
}

UEAElement left_multiply(const GradedNilpotent& g, std::size_t generator, const UEAElement& a) {
  return PBWAlgebra(g).left_multiply(generator, a);
}

UEAElement multiply(const GradedNilpotent& g, const UEAElement& a, const UEAElement& b) {
  return PBWAlgebra(g).multiply(a, b);
}

UEAElement normal_form(const GradedNilpotent& g, const std::vector<UEAElement>& factors) {
  PBWAlgebra alg(g);
  UEAElement acc = UEAElement::one(g.dim());
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) acc = alg.multiply(*it, acc);
  return acc;
}

}  // namespace bgg::chevalley
