#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bgg/linalg.hpp"
#include "bgg/repkit.hpp"
#include "bgg/rootcore.hpp"

namespace bgg::chevalley {

using rootcore::IntVector;
using rootcore::ParabolicSubset;
using rootcore::RootSystem;
using rootcore::RootVec;

/// How a non-simple positive root vector is generated: e_gamma =
/// [e_epsilon, e_zeta] / divisor with epsilon the smallest simple root such
/// that gamma - epsilon is a root.
struct RootVectorRecipe {
  std::size_t epsilon = 0;  // index into roots() (a simple root)
  std::size_t zeta = 0;     // index into roots() (positive)
  int divisor = 0;          // p + 1; 0 marks a simple root
};

/// Sparse integer vector over the basis of g: roots() in order, then h_1..h_n.
using LieVector = std::map<std::size_t, long>;

/// Chevalley basis structure constants [e_a, e_b] = N_{a,b} e_{a+b}, with
/// [e_a, e_{-a}] = h_a (coroot) and [h_i, e_a] = <a, alpha_i^vee> e_a.
class StructureConstants {
 public:
  StructureConstants() = default;
  StructureConstants(RootSystem rs, std::vector<std::vector<int>> table, std::vector<RootVectorRecipe> recipes);

  const RootSystem& root_system() const noexcept { return rs_; }
  /// Indices into roots(); 0 when a + b is not a root.
  int N(std::size_t a, std::size_t b) const { return table_[a][b]; }
  const std::vector<RootVectorRecipe>& recipes() const noexcept { return recipes_; }

  /// Dimension of g and the bracket of two basis elements.
  std::size_t dim() const;
  LieVector bracket(std::size_t x, std::size_t y) const;
  LieVector bracket(const LieVector& x, const LieVector& y) const;

  struct Triple {
    std::size_t x, y, z;
  };
  /// First basis triple (x < y < z, or a repeated pair for antisymmetry)
  /// violating the Jacobi identity, scanning in lexicographic order.
  std::optional<Triple> first_jacobi_failure() const;
  /// Host-supplied table overrides, used to exercise the failure path.
  void set_constant(std::size_t a, std::size_t b, int value) { table_[a][b] = value; }

  /// Basis label: "e[1,0]", "e[-1,-1]", "h1".
  std::string basis_name(std::size_t x) const;

 private:
  RootSystem rs_;
  std::vector<std::vector<int>> table_;
  std::vector<RootVectorRecipe> recipes_;
};

/// Extracted from an explicit faithful realization of g (the adjoint module
/// built from the Cartan matrix), then verified: [e_a, e_-a] = h_a,
/// |N_{a,b}| = p + 1, antisymmetry and Jacobi on every triple.
StructureConstants chevalley_constants(const RootSystem& rs);

/// Matrices of e_a for every root a (indexed like roots()) acting on V,
/// generated from the simple e_i, f_i by the same recipes, so that they
/// realize the structure constants exactly.
std::vector<linalg::SparseMatrix> root_operators(const StructureConstants& sc, const repkit::IrrepData& v);

enum class Side { Plus, Minus };

/// p_+ (basis e_b) or its opposite n (basis y_b = -e_{-b}, so that the
/// bracket table agrees with p_+: [y_a, y_b] = N_{a,b} y_{a+b}), for the
/// positive roots b with ht_P(b) > 0 in root order.
struct GradedNilpotent {
  struct Bracket {
    std::size_t k;
    int coeff;
  };

  Side side = Side::Minus;
  std::vector<RootVec> roots;
  std::vector<std::size_t> root_indices;  // into roots() of the root system
  std::vector<int> grade;                 // ht_P(b) >= 1
  std::vector<std::string> names;         // "y10", "e11"
  std::vector<std::vector<std::optional<Bracket>>> table;
  int depth = 0;

  std::size_t dim() const { return roots.size(); }
  /// Signed degree in the grading: +grade on p_+, -grade on n.
  int degree(std::size_t i) const { return side == Side::Plus ? grade[i] : -grade[i]; }
  const std::optional<Bracket>& bracket(std::size_t i, std::size_t j) const { return table[i][j]; }
  bool is_abelian() const;
  /// Length of the lower central series.
  int nilpotency_step() const;
};

GradedNilpotent build_nilpotent(const StructureConstants& sc, const ParabolicSubset& p, Side side);

/// PBW exponent vector over the ordered basis of a GradedNilpotent.
using Monomial = std::vector<int>;

/// a > b in the PBW monomial order: the last nonzero entry of a - b is
/// negative (so y10*y01 > y11).
bool pbw_greater(const Monomial& a, const Monomial& b);

/// Rational combination of PBW monomials in U(n), kept in normal form.
class UEAElement {
 public:
  UEAElement() = default;
  explicit UEAElement(std::size_t nvars) : nvars_(nvars) {}
  static UEAElement one(std::size_t nvars);
  static UEAElement generator(std::size_t nvars, std::size_t i);
  static UEAElement monomial(const Monomial& m, const Rational& c = 1);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Monomial& m, const Rational& c);

  UEAElement operator+(const UEAElement& o) const;
  UEAElement operator-(const UEAElement& o) const;
  UEAElement operator-() const;
  friend UEAElement operator*(const Rational& s, const UEAElement& a);
  friend bool operator==(const UEAElement&, const UEAElement&) = default;

  /// Terms sorted from the leading (PBW-largest) monomial down.
  std::vector<std::pair<Monomial, Rational>> sorted_terms() const;
  std::pair<Monomial, Rational> leading_term() const;
  /// Rescaled to leading coefficient 1 (zero stays zero).
  UEAElement normalized() const;

  /// Sum of grade * exponent when every term agrees; nullopt otherwise.
  std::optional<int> graded_degree(const GradedNilpotent& g) const;
  /// Weight in simple-root coordinates (signed by side); nullopt when
  /// inhomogeneous or zero.
  std::optional<IntVector> weight(const GradedNilpotent& g) const;

  /// "y10*y01 + y11", "-2*y11", "y10^2".
  std::string str(const GradedNilpotent& g) const;

 private:
  std::size_t nvars_ = 0;
  std::map<Monomial, Rational> terms_;
};

/// Straightening engine for U(n) with a cache of generator-times-monomial
/// products; reuse one instance for many products over the same algebra.
class PBWAlgebra {
 public:
  explicit PBWAlgebra(const GradedNilpotent& g) : g_(&g) {}
  const GradedNilpotent& nilpotent() const noexcept { return *g_; }

  /// b_i * m in normal form.
  const UEAElement& generator_times(std::size_t i, const Monomial& m);
  UEAElement left_multiply(std::size_t i, const UEAElement& a);
  UEAElement multiply(const UEAElement& a, const UEAElement& b);

 private:
  const GradedNilpotent* g_;
  std::map<std::pair<std::size_t, Monomial>, UEAElement> cache_;
};

/// Product in U(n), straightened with the bracket relations only.
UEAElement multiply(const GradedNilpotent& g, const UEAElement& a, const UEAElement& b);
UEAElement left_multiply(const GradedNilpotent& g, std::size_t generator, const UEAElement& a);
/// Normal form of a formal product of factors (empty product is 1).
UEAElement normal_form(const GradedNilpotent& g, const std::vector<UEAElement>& factors);

}  // namespace bgg::chevalley
