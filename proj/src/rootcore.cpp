#include "bgg/rootcore.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "bgg/errors.hpp"
#include "bgg/linalg.hpp"

namespace bgg::rootcore {

TypeLabel TypeLabel::parse(const std::string& text) {
  if (text.size() < 2) throw UsageError("type label must look like A2, B3, G2: '" + text + "'");
  TypeLabel t;
  t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  const std::string digits = text.substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw UsageError("type label must look like A2, B3, G2: '" + text + "'");
  t.rank = std::stoi(digits);
  return t;
}

// ---------------------------------------------------------------------------
// Weight

Weight Weight::from_root(const RootVec& root) {
  RationalVector c(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) c[i] = root[i];
  return Weight(std::move(c));
}

Rational Weight::height() const {
  Rational h = 0;
  for (const auto& c : coords_) h += c;
  return h;
}

bool Weight::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

std::optional<IntVector> Weight::integral_coords() const {
  IntVector out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].get_den() != 1) return std::nullopt;
    out[i] = static_cast<int>(coords_[i].get_num().get_si());
  }
  return out;
}

Weight Weight::operator+(const Weight& o) const {
  RationalVector c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return Weight(std::move(c));
}

Weight Weight::operator-(const Weight& o) const {
  RationalVector c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
  return Weight(std::move(c));
}

Weight Weight::operator-() const {
  RationalVector c = coords_;
  for (auto& x : c) x = -x;
  return Weight(std::move(c));
}

Weight operator*(const Rational& s, const Weight& w) {
  RationalVector c = w.coords_;
  for (auto& x : c) x *= s;
  return Weight(std::move(c));
}

std::string Weight::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ", ";
    os << coords_[i].get_str();
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// Classification data

namespace {

void link(IntMatrix& g, int i, int j, int value) {
  g[i - 1][j - 1] = value;
  g[j - 1][i - 1] = value;
}

bool valid_type(char family, int rank) {
  switch (family) {
    case 'A': return rank >= 1;
    case 'B': return rank >= 2;
    case 'C': return rank >= 2;
    case 'D': return rank >= 4;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

// Gram matrix of the simple roots (Bourbaki numbering), short roots of
// squared length 2.
IntMatrix gram_for(char family, int n) {
  IntMatrix g(n, IntVector(n, 0));
  switch (family) {
    case 'A':
      for (int i = 1; i <= n; ++i) g[i - 1][i - 1] = 2;
      for (int i = 1; i < n; ++i) link(g, i, i + 1, -1);
      break;
    case 'B':  // alpha_n short
      for (int i = 1; i < n; ++i) g[i - 1][i - 1] = 4;
      g[n - 1][n - 1] = 2;
      for (int i = 1; i < n; ++i) link(g, i, i + 1, -2);
      break;
    case 'C':  // alpha_n long
      for (int i = 1; i < n; ++i) g[i - 1][i - 1] = 2;
      g[n - 1][n - 1] = 4;
      for (int i = 1; i < n - 1; ++i) link(g, i, i + 1, -1);
      link(g, n - 1, n, -2);
      break;
    case 'D':
      for (int i = 1; i <= n; ++i) g[i - 1][i - 1] = 2;
      for (int i = 1; i < n - 1; ++i) link(g, i, i + 1, -1);
      link(g, n - 2, n, -1);
      break;
    case 'E':
      for (int i = 1; i <= n; ++i) g[i - 1][i - 1] = 2;
      link(g, 1, 3, -1);
      link(g, 2, 4, -1);
      for (int i = 3; i < n; ++i) link(g, i, i + 1, -1);
      break;
    case 'F':  // alpha_1, alpha_2 long
      g[0][0] = 4;
      g[1][1] = 4;
      g[2][2] = 2;
      g[3][3] = 2;
      link(g, 1, 2, -2);
      link(g, 2, 3, -2);
      link(g, 3, 4, -1);
      break;
    case 'G':  // alpha_1 short
      g[0][0] = 2;
      g[1][1] = 6;
      link(g, 1, 2, -3);
      break;
  }
  return g;
}

bool root_order(const RootVec& a, const RootVec& b) {
  const int ha = std::accumulate(a.begin(), a.end(), 0);
  const int hb = std::accumulate(b.begin(), b.end(), 0);
  if (ha != hb) return ha < hb;
  return a > b;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > UINT64_MAX / static_cast<std::uint64_t>(i)) return UINT64_MAX;
    f *= static_cast<std::uint64_t>(i);
  }
  return f;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t pow2(int n) { return n >= 64 ? UINT64_MAX : (std::uint64_t{1} << n); }

}  // namespace

std::size_t expected_positive_root_count(char family, int n) {
  switch (family) {
    case 'A': return static_cast<std::size_t>(n * (n + 1) / 2);
    case 'B':
    case 'C': return static_cast<std::size_t>(n * n);
    case 'D': return static_cast<std::size_t>(n * (n - 1));
    case 'E': return n == 6 ? 36 : (n == 7 ? 63 : 120);
    case 'F': return 24;
    case 'G': return 6;
    default: return 0;
  }
}

RootSystem build_root_system(char family, int rank) {
  family = static_cast<char>(std::toupper(static_cast<unsigned char>(family)));
  if (!valid_type(family, rank)) {
    throw UsageError("invalid finite type " + std::string(1, family) + std::to_string(rank) +
                     " (valid: A>=1, B>=2, C>=2, D>=4, E6-E8, F4, G2)");
  }
  RootSystem rs;
  rs.label_ = {family, rank};
  rs.gram_ = gram_for(family, rank);
  rs.cartan_.assign(rank, IntVector(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) rs.cartan_[i][j] = 2 * rs.gram_[i][j] / rs.gram_[i][i];

  // Positive roots layer by layer via alpha_i-strings.
  std::set<RootVec> known;
  std::vector<RootVec> layer;
  for (int i = 0; i < rank; ++i) {
    RootVec e(rank, 0);
    e[i] = 1;
    layer.push_back(e);
    known.insert(e);
  }
  std::vector<RootVec> positive = layer;
  while (!layer.empty()) {
    std::vector<RootVec> next;
    for (const RootVec& beta : layer) {
      for (int i = 0; i < rank; ++i) {
        int p = 0;
        RootVec down = beta;
        while (true) {
          down[i] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        int pairing = 0;
        for (int j = 0; j < rank; ++j) pairing += beta[j] * rs.cartan_[i][j];
        const int q = p - pairing;
        if (q > 0) {
          RootVec up = beta;
          up[i] += 1;
          if (known.insert(up).second) next.push_back(up);
        }
      }
    }
    positive.insert(positive.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(positive.begin(), positive.end(), root_order);
  rs.positive_ = positive;
  rs.all_ = positive;
  for (const RootVec& r : positive) {
    RootVec neg = r;
    for (int& x : neg) x = -x;
    rs.all_.push_back(neg);
  }
  for (std::size_t k = 0; k < rs.all_.size(); ++k) rs.index_[rs.all_[k]] = k;

  RationalVector rho(rank);
  for (const RootVec& r : positive)
    for (int i = 0; i < rank; ++i) rho[i] += r[i];
  for (auto& x : rho) x /= 2;
  rs.rho_ = Weight(rho);

  linalg::Matrix a(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = rs.cartan_[i][j];
  linalg::Matrix inv = linalg::inverse(a);
  rs.cartan_inverse_.assign(rank, RationalVector(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) rs.cartan_inverse_[i][j] = inv(i, j);
  return rs;
}

std::optional<std::size_t> RootSystem::root_index(const RootVec& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RootSystem::simple_root_index(int i) const {
  RootVec e(rank(), 0);
  e[i - 1] = 1;
  return *root_index(e);
}

std::size_t RootSystem::negative_of(std::size_t root_idx) const {
  const std::size_t n = positive_.size();
  return root_idx < n ? root_idx + n : root_idx - n;
}

int RootSystem::inner(const RootVec& a, const RootVec& b) const {
  int s = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) s += a[i] * gram_[i][j] * b[j];
  return s;
}

Rational RootSystem::inner(const Weight& a, const Weight& b) const {
  Rational s = 0;
  for (int i = 0; i < rank(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < rank(); ++j) s += a[i] * gram_[i][j] * b[j];
  }
  return s;
}

Rational RootSystem::pairing(const Weight& mu, int i) const {
  Rational s = 0;
  for (int j = 0; j < rank(); ++j) s += mu[j] * cartan_[i - 1][j];
  return s;
}

int RootSystem::pairing(const RootVec& beta, int i) const {
  int s = 0;
  for (int j = 0; j < rank(); ++j) s += beta[j] * cartan_[i - 1][j];
  return s;
}

IntVector RootSystem::coroot(const RootVec& alpha) const {
  const int len = inner(alpha, alpha);
  IntVector c(rank());
  for (int i = 0; i < rank(); ++i) c[i] = alpha[i] * gram_[i][i] / len;
  return c;
}

RationalVector RootSystem::to_fundamental(const Weight& mu) const {
  RationalVector f(rank());
  for (int i = 1; i <= rank(); ++i) f[i - 1] = pairing(mu, i);
  return f;
}

Weight RootSystem::from_fundamental(const RationalVector& fundamental) const {
  if (static_cast<int>(fundamental.size()) != rank())
    throw UsageError("weight has " + std::to_string(fundamental.size()) + " coordinates, rank is " +
                     std::to_string(rank()));
  RationalVector c(rank());
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) c[i] += cartan_inverse_[i][j] * fundamental[j];
  return Weight(std::move(c));
}

Weight RootSystem::from_fundamental(const IntVector& fundamental) const {
  RationalVector f(fundamental.begin(), fundamental.end());
  return from_fundamental(f);
}

IntVector RootSystem::integral_fundamental(const Weight& mu) const {
  IntVector out(rank());
  const RationalVector f = to_fundamental(mu);
  for (int i = 0; i < rank(); ++i) {
    if (f[i].get_den() != 1) throw UsageError("weight " + mu.str() + " is not integral");
    out[i] = static_cast<int>(f[i].get_num().get_si());
  }
  return out;
}

bool RootSystem::is_dominant_integral(const Weight& mu) const {
  const RationalVector f = to_fundamental(mu);
  return std::all_of(f.begin(), f.end(), [](const Rational& q) { return q.get_den() == 1 && sgn(q) >= 0; });
}

Weight RootSystem::reflect(int i, const Weight& mu) const {
  RationalVector c = mu.coords();
  c[i - 1] -= pairing(mu, i);
  return Weight(std::move(c));
}

RootVec RootSystem::reflect(int i, const RootVec& beta) const {
  RootVec c = beta;
  c[i - 1] -= pairing(beta, i);
  return c;
}

Weight RootSystem::reflect_by_root(const RootVec& beta, const Weight& mu) const {
  const Weight b = Weight::from_root(beta);
  const Rational coeff = 2 * inner(mu, b) / Rational(inner(beta, beta));
  return mu - coeff * b;
}

std::uint64_t RootSystem::weyl_group_order() const {
  const int n = rank();
  switch (label_.family) {
    case 'A': return factorial(n + 1);
    case 'B':
    case 'C': return sat_mul(pow2(n), factorial(n));
    case 'D': return sat_mul(pow2(n - 1), factorial(n));
    case 'E': return n == 6 ? 51840ULL : (n == 7 ? 2903040ULL : 696729600ULL);
    case 'F': return 1152;
    case 'G': return 12;
    default: return 0;
  }
}

// ---------------------------------------------------------------------------
// Weyl words

namespace {

// s_i on a weight in fundamental coordinates.
void reflect_fundamental(const IntMatrix& cartan, int i, IntVector& v) {
  const int vi = v[i - 1];
  if (vi == 0) return;
  for (std::size_t j = 0; j < v.size(); ++j) v[j] -= vi * cartan[j][i - 1];
}

}  // namespace

WeylWord::WeylWord(const RootSystem& rs, const IntVector& word) {
  for (int i : word)
    if (i < 1 || i > rs.rank()) throw UsageError("reflection index " + std::to_string(i) + " out of range");
  *this = from_word(rs.cartan_matrix(), word);
}

WeylWord WeylWord::from_word(const IntMatrix& cartan, const IntVector& word) {
  WeylWord w;
  w.word_ = word;
  w.cartan_ = cartan;
  const int r = static_cast<int>(cartan.size());
  w.rho_image_.assign(r, 1);
  for (auto it = word.rbegin(); it != word.rend(); ++it) reflect_fundamental(cartan, *it, w.rho_image_);

  // Peel off the smallest left descent until w(rho) is dominant again.
  IntVector v = w.rho_image_;
  while (true) {
    int descent = 0;
    for (int i = 1; i <= r; ++i) {
      if (v[i - 1] < 0) {
        descent = i;
        break;
      }
    }
    if (descent == 0) break;
    w.canonical_.push_back(descent);
    reflect_fundamental(cartan, descent, v);
  }

  w.action_.assign(r, IntVector(r, 0));
  for (int j = 0; j < r; ++j) w.action_[j][j] = 1;
  // action = S_{c1} S_{c2} ... : left-multiply by reflections from the right end.
  for (auto it = w.canonical_.rbegin(); it != w.canonical_.rend(); ++it) {
    const int i = *it - 1;
    for (int col = 0; col < r; ++col) {
      int pairing = 0;
      for (int j = 0; j < r; ++j) pairing += cartan[i][j] * w.action_[j][col];
      w.action_[i][col] -= pairing;
    }
  }
  return w;
}

Weight WeylWord::apply(const Weight& mu) const {
  const std::size_t r = action_.size();
  RationalVector c(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (action_[i][j] != 0) c[i] += action_[i][j] * mu[j];
  return Weight(std::move(c));
}

RootVec WeylWord::apply(const RootVec& beta) const {
  const std::size_t r = action_.size();
  RootVec c(r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) c[i] += action_[i][j] * beta[j];
  return c;
}

WeylWord WeylWord::operator*(const WeylWord& other) const {
  IntVector w = canonical_;
  w.insert(w.end(), other.canonical_.begin(), other.canonical_.end());
  return from_word(cartan_, w);
}

WeylWord WeylWord::inverse() const {
  return from_word(cartan_, IntVector(canonical_.rbegin(), canonical_.rend()));
}

std::string WeylWord::str() const {
  if (canonical_.empty()) return "e";
  std::string s;
  for (std::size_t k = 0; k < canonical_.size(); ++k) {
    if (k) s += ' ';
    s += 's' + std::to_string(canonical_[k]);
  }
  return s;
}

int inversion_count(const RootSystem& rs, const WeylWord& w) {
  int n = 0;
  for (const RootVec& beta : rs.positive_roots()) {
    const RootVec image = w.apply(beta);
    if (std::any_of(image.begin(), image.end(), [](int x) { return x < 0; })) ++n;
  }
  return n;
}

Weight dot_action(const RootSystem& rs, const WeylWord& w, const Weight& lambda) {
  return w.apply(lambda + rs.rho()) - rs.rho();
}

bool bruhat_leq(const RootSystem& rs, const WeylWord& u, const WeylWord& w) {
  // Scan the fixed reduced word of w letter by letter; the letter is used in
  // the subword exactly when it is a left descent of what remains of u
  // (u <= s w' iff min(u, s u) <= w').
  IntVector v = u.rho_image();
  for (int i : w.canonical_word()) {
    if (v[i - 1] < 0) reflect_fundamental(rs.cartan_matrix(), i, v);
  }
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 1; });
}

std::vector<WeylWord> enumerate_weyl_group(const RootSystem& rs, const Bounds& bounds) {
  const std::uint64_t order = rs.weyl_group_order();
  if (order > bounds.weyl_elements) {
    throw ResourceError("weyl_elements", "Weyl group of " + rs.label().str() + " has " + std::to_string(order) +
                                             " elements, above the enumeration bound " +
                                             std::to_string(bounds.weyl_elements));
  }
  std::vector<WeylWord> out;
  std::set<IntVector> seen;
  out.push_back(WeylWord::identity(rs));
  seen.insert(out.back().rho_image());
  for (std::size_t head = 0; head < out.size(); ++head) {
    const WeylWord w = out[head];
    for (int i = 1; i <= rs.rank(); ++i) {
      if (w.rho_image()[i - 1] <= 0) continue;  // s_i w would be shorter
      IntVector key = w.rho_image();
      reflect_fundamental(rs.cartan_matrix(), i, key);
      if (!seen.insert(key).second) continue;
      IntVector word{i};
      word.insert(word.end(), w.canonical_word().begin(), w.canonical_word().end());
      out.emplace_back(rs, word);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parabolics

ParabolicSubset ParabolicSubset::from_crossed(const RootSystem& rs, IntVector crossed) {
  std::sort(crossed.begin(), crossed.end());
  crossed.erase(std::unique(crossed.begin(), crossed.end()), crossed.end());
  for (int i : crossed)
    if (i < 1 || i > rs.rank()) throw UsageError("crossed root index " + std::to_string(i) + " out of range");
  ParabolicSubset p;
  p.crossed = crossed;
  for (int i = 1; i <= rs.rank(); ++i)
    if (!std::binary_search(crossed.begin(), crossed.end(), i)) p.levi.push_back(i);
  return p;
}

ParabolicSubset ParabolicSubset::borel(const RootSystem& rs) {
  IntVector all(rs.rank());
  std::iota(all.begin(), all.end(), 1);
  return from_crossed(rs, all);
}

ParabolicSubset ParabolicSubset::whole(const RootSystem& rs) { return from_crossed(rs, {}); }

bool ParabolicSubset::is_crossed(int i) const { return std::binary_search(crossed.begin(), crossed.end(), i); }

std::string ParabolicSubset::str() const {
  if (crossed.empty()) return "none";
  std::string s;
  for (std::size_t k = 0; k < crossed.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(crossed[k]);
  }
  return s;
}

std::optional<std::size_t> HasseDiagram::index_of(const WeylWord& w) const {
  for (std::size_t k = 0; k < elements.size(); ++k)
    if (elements[k] == w) return k;
  return std::nullopt;
}

HasseDiagram hasse_diagram(const RootSystem& rs, const ParabolicSubset& p, const Bounds& bounds) {
  std::vector<WeylWord> all = enumerate_weyl_group(rs, bounds);
  HasseDiagram h;
  for (const WeylWord& w : all) {
    bool minimal = true;
    for (int j : p.levi) {
      if (w.rho_image()[j - 1] < 0) {
        minimal = false;
        break;
      }
    }
    if (minimal) h.elements.push_back(w);
  }
  std::sort(h.elements.begin(), h.elements.end());
  std::map<IntVector, std::size_t> key;
  for (std::size_t k = 0; k < h.elements.size(); ++k) key[h.elements[k].rho_image()] = k;

  for (std::size_t k = 0; k < h.elements.size(); ++k) {
    const WeylWord& w = h.elements[k];
    const Weight w_rho = w.apply(rs.rho());
    for (const RootVec& beta : rs.positive_roots()) {
      const IntVector image = rs.integral_fundamental(rs.reflect_by_root(beta, w_rho));
      auto it = key.find(image);
      if (it == key.end()) continue;
      if (h.elements[it->second].length() + 1 == w.length()) h.edges.emplace_back(it->second, k);
    }
  }
  std::sort(h.edges.begin(), h.edges.end());
  int max_len = h.elements.empty() ? -1 : h.elements.back().length();
  h.length_profile.assign(static_cast<std::size_t>(max_len + 1), 0);
  for (const WeylWord& w : h.elements) ++h.length_profile[static_cast<std::size_t>(w.length())];
  return h;
}

std::uint64_t levi_weyl_order(const RootSystem& rs, const ParabolicSubset& p, const Bounds& bounds) {
  std::set<IntVector> seen;
  std::deque<IntVector> queue;
  IntVector start(rs.rank(), 1);
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    IntVector v = queue.front();
    queue.pop_front();
    for (int j : p.levi) {
      IntVector u = v;
      reflect_fundamental(rs.cartan_matrix(), j, u);
      if (seen.insert(u).second) {
        if (seen.size() > bounds.weyl_elements)
          throw ResourceError("weyl_elements", "Levi Weyl group exceeds the enumeration bound");
        queue.push_back(u);
      }
    }
  }
  return seen.size();
}

int parabolic_height(const ParabolicSubset& p, const RootVec& root) {
  int h = 0;
  for (int i : p.crossed) h += root[i - 1];
  return h;
}

std::size_t Grading::dim(int j) const {
  auto it = components.find(j);
  return it == components.end() ? 0 : it->second.size();
}

Grading parabolic_grading(const RootSystem& rs, const ParabolicSubset& p) {
  Grading g;
  g.rank_ap = static_cast<int>(p.crossed.size());
  for (const RootVec& r : rs.roots()) {
    const int h = parabolic_height(p, r);
    g.height_of_root.push_back(h);
    g.components[h].push_back(r);
    g.depth = std::max(g.depth, h);
  }
  return g;
}

Rational levi_weyl_dimension(const RootSystem& rs, const ParabolicSubset& p, const Weight& nu) {
  Rational dim = 1;
  const Weight shifted = nu + rs.rho();
  for (const RootVec& alpha : rs.positive_roots()) {
    if (parabolic_height(p, alpha) != 0) continue;
    const Weight a = Weight::from_root(alpha);
    dim *= rs.inner(shifted, a) / rs.inner(rs.rho(), a);
  }
  return dim;
}

}  // namespace bgg::rootcore
