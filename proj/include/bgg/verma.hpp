#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bgg/chevalley.hpp"
#include "bgg/linalg.hpp"
#include "bgg/rootcore.hpp"

namespace bgg::verma {

using chevalley::GradedNilpotent;
using chevalley::Monomial;
using chevalley::StructureConstants;
using chevalley::UEAElement;
using rootcore::IntVector;
using rootcore::RootSystem;
using rootcore::Weight;
using rootcore::WeylWord;

/// Number of ways to write depth as a sum of positive roots.
std::uint64_t kostant_partition(const RootSystem& rs, const IntVector& depth);

/// PBW monomials of weight -depth over the Borel n, sorted from the
/// PBW-largest down.
std::vector<Monomial> pbw_monomials(const GradedNilpotent& n, const IntVector& depth);

/// All depth vectors c >= 0 with sum(c) <= max_height, by height then
/// descending lexicographic order.
std::vector<IntVector> depths_up_to(int rank, int max_height);

/// M(lambda) = U(n) v_lambda restricted to depths of height <= cutoff.
/// Elements are represented by their U(n) coefficient of v_lambda.
class TruncatedVerma {
 public:
  TruncatedVerma(const StructureConstants& sc, Weight lambda, int cutoff);
  TruncatedVerma(const TruncatedVerma&) = delete;
  TruncatedVerma& operator=(const TruncatedVerma&) = delete;

  const StructureConstants& constants() const noexcept { return *sc_; }
  const RootSystem& root_system() const noexcept { return sc_->root_system(); }
  const GradedNilpotent& nilpotent() const noexcept { return n_; }
  const Weight& highest_weight() const noexcept { return lambda_; }
  int cutoff() const noexcept { return cutoff_; }

  /// Weight space at lambda - depth (empty beyond the cutoff).
  const std::vector<Monomial>& basis(const IntVector& depth) const;
  RationalVector coordinates(const IntVector& depth, const UEAElement& x) const;
  UEAElement element(const IntVector& depth, const RationalVector& coords) const;

  /// e_i, f_i and an arbitrary root vector e_a (index into roots()) acting on x v_lambda.
  UEAElement raise(int i, const UEAElement& x) const;
  UEAElement lower(int i, const UEAElement& x) const;
  UEAElement act_root(std::size_t root, const UEAElement& x) const;
  /// <lambda - depth, alpha_i^vee>.
  Rational cartan_scalar(int i, const IntVector& depth) const;

  /// Matrices between weight spaces: raise V_c -> V_{c - e_i}, lower V_c -> V_{c + e_i}.
  linalg::Matrix raise_matrix(int i, const IntVector& depth) const;
  linalg::Matrix lower_matrix(int i, const IntVector& depth) const;

  /// Contravariant form with <v, v> = 1 and <y_b u, w> = <u, -e_b w>.
  Rational shapovalov(const UEAElement& a, const UEAElement& b) const;
  linalg::Matrix shapovalov_matrix(const IntVector& depth) const;

  chevalley::PBWAlgebra& algebra() const { return *pbw_; }

 private:
  const UEAElement& raise_monomial(int i, const Monomial& m) const;

  const StructureConstants* sc_;
  GradedNilpotent n_;
  Weight lambda_;
  int cutoff_;
  std::unique_ptr<chevalley::PBWAlgebra> pbw_;
  mutable std::map<IntVector, std::vector<Monomial>> bases_;
  mutable std::map<std::pair<int, Monomial>, UEAElement> raise_cache_;
};

/// Basis (normalized, leading coefficient 1 when one-dimensional) of the
/// vectors at lambda - depth killed by every e_i.
std::vector<UEAElement> singular_space(const TruncatedVerma& m, const IntVector& depth);

struct SingularVector {
  UEAElement element;
  Weight source;  // w.lambda
  Weight target;  // lambda
  IntVector depth;
};

/// Singular vector of weight w.lambda in M(lambda); nullopt when the space is
/// zero. Throws ConsistencyError if lambda is dominant integral and the space
/// is not one-dimensional.
std::optional<SingularVector> singular_vector(const StructureConstants& sc, const Weight& lambda, const WeylWord& w);

struct ResolutionArrow {
  std::size_t source = 0;  // index of the longer element
  std::size_t target = 0;
  UEAElement symbol;       // normalized singular vector in M(w_target . lambda)
  Rational scalar = 1;     // gauge: the map is x v_source -> scalar * x * symbol v_target
  UEAElement map_element() const { return scalar * symbol; }
};

struct BGGResolution {
  Weight lambda;
  rootcore::HasseDiagram hasse;   // Borel: all of W
  std::vector<Weight> weights;    // w . lambda
  std::vector<IntVector> depths;  // lambda - w . lambda
  std::vector<ResolutionArrow> arrows;  // one per Hasse edge, in edge order
  int max_length = 0;

  std::vector<std::size_t> term(int k) const;
};

/// C_k = sum over l(w)=k of M(w.lambda), arrows from singular vectors, a
/// rational gauge making every square anticommute.
BGGResolution build_bgg_resolution(const StructureConstants& sc, const Weight& lambda, const Bounds& bounds = {});

/// Default cutoff ht(lambda - w0 . lambda) + 2.
int default_cutoff(const BGGResolution& res);

struct ExactnessEntry {
  Weight mu;
  IntVector depth;
  int degree;
  long defect;
};

struct ExactnessReport {
  int cutoff = 0;
  std::vector<ExactnessEntry> entries;    // every checked (mu, k)
  std::vector<std::string> composition_failures;  // delta_k delta_{k+1} != 0
  bool ok() const;
};

ExactnessReport verify_resolution(const StructureConstants& sc, const BGGResolution& res, int cutoff);

struct CharacterDefect {
  Weight mu;
  long lhs;
  long rhs;
};

struct CharacterIdentityResult {
  bool holds = true;
  std::size_t checked = 0;
  std::vector<CharacterDefect> defects;
};

/// sum_w (-1)^l(w) P(w.lambda - mu) = mult_V(mu) for all mu up to height N.
CharacterIdentityResult character_identity(const RootSystem& rs, const Weight& lambda, int cutoff,
                                           const Bounds& bounds = {});

}  // namespace bgg::verma
