#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bgg/bounds.hpp"
#include "bgg/rational.hpp"

namespace bgg::rootcore {

using IntVector = std::vector<int>;
using IntMatrix = std::vector<IntVector>;

/// Root in simple-root coordinates.
using RootVec = IntVector;

struct TypeLabel {
  char family = 'A';
  int rank = 1;

  std::string str() const { return std::string(1, family) + std::to_string(rank); }
  /// "A2", "g2", "E6".
  static TypeLabel parse(const std::string& text);

  friend bool operator==(const TypeLabel&, const TypeLabel&) = default;
};

class RootSystem;

/// A weight stored in simple-root coordinates. Fundamental-weight
/// coordinates are available through the owning RootSystem.
class Weight {
 public:
  Weight() = default;
  explicit Weight(RationalVector simple_coords) : coords_(std::move(simple_coords)) {}
  static Weight zero(std::size_t rank) { return Weight(RationalVector(rank)); }
  static Weight from_root(const RootVec& root);

  const RationalVector& coords() const noexcept { return coords_; }
  std::size_t rank() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  /// Sum of simple-root coordinates.
  Rational height() const;
  bool is_zero() const;
  /// Integer coordinates, or nullopt if some coordinate is not integral.
  std::optional<IntVector> integral_coords() const;

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  friend Weight operator*(const Rational& s, const Weight& w);

  friend bool operator==(const Weight& a, const Weight& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const Weight& a, const Weight& b) { return a.coords_ < b.coords_; }

  /// "(1, 1/2)" in simple-root coordinates.
  std::string str() const;

 private:
  RationalVector coords_;
};

class RootSystem {
 public:
  TypeLabel label() const { return label_; }
  int rank() const noexcept { return label_.rank; }

  /// a_ij = <alpha_i^vee, alpha_j>.
  const IntMatrix& cartan_matrix() const noexcept { return cartan_; }
  /// Gram matrix (alpha_i, alpha_j) of the invariant form; short roots have
  /// squared length 2.
  const IntMatrix& gram_matrix() const noexcept { return gram_; }

  /// Ordered by height, then lexicographically with larger leading
  /// coordinates first (so simple roots come in index order).
  const std::vector<RootVec>& positive_roots() const noexcept { return positive_; }
  /// Positive roots followed by their negatives in the same order.
  const std::vector<RootVec>& roots() const noexcept { return all_; }
  std::size_t num_positive() const noexcept { return positive_.size(); }

  /// Index into roots(), if the vector is a root.
  std::optional<std::size_t> root_index(const RootVec& v) const;
  bool is_root(const RootVec& v) const { return root_index(v).has_value(); }
  std::size_t simple_root_index(int i) const;  // index of alpha_i in roots()
  std::size_t negative_of(std::size_t root_idx) const;

  const RootVec& highest_root() const { return positive_.back(); }
  const Weight& rho() const noexcept { return rho_; }

  int inner(const RootVec& a, const RootVec& b) const;
  Rational inner(const Weight& a, const Weight& b) const;
  /// <mu, alpha_i^vee>.
  Rational pairing(const Weight& mu, int i) const;
  int pairing(const RootVec& beta, int i) const;
  /// Coroot alpha^vee in simple-coroot coordinates.
  IntVector coroot(const RootVec& alpha) const;

  RationalVector to_fundamental(const Weight& mu) const;
  Weight from_fundamental(const RationalVector& fundamental) const;
  Weight from_fundamental(const IntVector& fundamental) const;
  /// Fundamental coordinates of an integral weight; throws otherwise.
  IntVector integral_fundamental(const Weight& mu) const;
  bool is_dominant_integral(const Weight& mu) const;

  Weight reflect(int i, const Weight& mu) const;
  RootVec reflect(int i, const RootVec& beta) const;
  /// s_beta(mu) for a root beta.
  Weight reflect_by_root(const RootVec& beta, const Weight& mu) const;

  /// |W| from the classification formula (saturates at UINT64_MAX).
  std::uint64_t weyl_group_order() const;

  friend RootSystem build_root_system(char family, int rank);

 private:
  TypeLabel label_;
  IntMatrix cartan_;
  IntMatrix gram_;
  std::vector<RootVec> positive_;
  std::vector<RootVec> all_;
  std::map<RootVec, std::size_t> index_;
  Weight rho_;
  std::vector<RationalVector> cartan_inverse_;  // simple = A^{-1} fundamental
};

/// Throws UsageError for an invalid (family, rank).
RootSystem build_root_system(char family, int rank);
inline RootSystem build_root_system(const TypeLabel& t) { return build_root_system(t.family, t.rank); }

/// Expected |Delta^+| from the classification.
std::size_t expected_positive_root_count(char family, int rank);

/// An element of W presented by a word in the simple reflections, with its
/// action matrix and canonical reduced word cached.
class WeylWord {
 public:
  WeylWord() = default;
  /// Any word (reduced or not) in 1-based simple reflection indices.
  WeylWord(const RootSystem& rs, const IntVector& word);
  static WeylWord identity(const RootSystem& rs) { return WeylWord(rs, {}); }

  const IntVector& word() const noexcept { return word_; }
  /// Left-greedy reduced word: the first letter is always the smallest left
  /// descent. Identical for all words representing the same element.
  const IntVector& canonical_word() const noexcept { return canonical_; }
  int length() const noexcept { return static_cast<int>(canonical_.size()); }
  /// w(rho) in fundamental coordinates; a faithful key for the element.
  const IntVector& rho_image() const noexcept { return rho_image_; }
  /// Columns are w(alpha_j) in simple-root coordinates.
  const IntMatrix& action() const noexcept { return action_; }

  Weight apply(const Weight& mu) const;
  RootVec apply(const RootVec& beta) const;
  bool is_left_descent(int i) const { return rho_image_[i - 1] < 0; }

  WeylWord operator*(const WeylWord& other) const;
  WeylWord inverse() const;

  /// "e" or "s1 s2".
  std::string str() const;

  friend bool operator==(const WeylWord& a, const WeylWord& b) { return a.rho_image_ == b.rho_image_; }
  friend bool operator<(const WeylWord& a, const WeylWord& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.canonical_ < b.canonical_;
  }

 private:
  static WeylWord from_word(const IntMatrix& cartan, const IntVector& word);

  IntVector word_;
  IntVector canonical_;
  IntVector rho_image_;
  IntMatrix action_;
  IntMatrix cartan_;  // copied so that products need no RootSystem
};

/// |{alpha > 0 : w alpha < 0}|.
int inversion_count(const RootSystem& rs, const WeylWord& w);

/// w(lambda + rho) - rho.
Weight dot_action(const RootSystem& rs, const WeylWord& w, const Weight& lambda);

/// Bruhat order by the subword criterion against the canonical reduced word
/// of w.
bool bruhat_leq(const RootSystem& rs, const WeylWord& u, const WeylWord& w);

/// All of W in BFS order (nondecreasing length). Throws ResourceError when
/// |W| exceeds bounds.weyl_elements.
std::vector<WeylWord> enumerate_weyl_group(const RootSystem& rs, const Bounds& bounds = {});

struct ParabolicSubset {
  IntVector crossed;  // 1-based indices of simple roots outside the Levi
  IntVector levi;     // complement

  static ParabolicSubset from_crossed(const RootSystem& rs, IntVector crossed);
  static ParabolicSubset borel(const RootSystem& rs);
  static ParabolicSubset whole(const RootSystem& rs);

  bool is_crossed(int i) const;
  bool is_borel() const { return levi.empty(); }
  /// "1,3" or "none".
  std::string str() const;
};

/// W^p: elements w with w^{-1}(alpha_j) > 0 for every Levi simple root, so
/// that w(lambda+rho)-rho is Levi-dominant, grouped by length with the
/// covering relations of the induced Bruhat order.
struct HasseDiagram {
  std::vector<WeylWord> elements;               // sorted by (length, canonical word)
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (u, w): u covered by w
  std::vector<std::size_t> length_profile;      // count per length

  std::optional<std::size_t> index_of(const WeylWord& w) const;
};

HasseDiagram hasse_diagram(const RootSystem& rs, const ParabolicSubset& p, const Bounds& bounds = {});

/// |W_{levi}| by enumeration of the Levi Weyl group.
std::uint64_t levi_weyl_order(const RootSystem& rs, const ParabolicSubset& p, const Bounds& bounds = {});

/// ht_P(root) = sum of coordinates at crossed simple roots.
int parabolic_height(const ParabolicSubset& p, const RootVec& root);

struct Grading {
  std::vector<int> height_of_root;              // indexed like RootSystem::roots()
  std::map<int, std::vector<RootVec>> components;  // j -> roots of g_j (j != 0 roots only; Levi roots at 0)
  int depth = 0;
  int rank_ap = 0;

  std::size_t dim(int j) const;
};

Grading parabolic_grading(const RootSystem& rs, const ParabolicSubset& p);

/// Weyl dimension of the Levi module with highest weight nu (nu must be
/// Levi-dominant integral).
Rational levi_weyl_dimension(const RootSystem& rs, const ParabolicSubset& p, const Weight& nu);

}  // namespace bgg::rootcore
