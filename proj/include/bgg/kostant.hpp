#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bgg/bounds.hpp"
#include "bgg/chevalley.hpp"
#include "bgg/linalg.hpp"
#include "bgg/repkit.hpp"
#include "bgg/rootcore.hpp"
#include "bgg/verma.hpp"

namespace bgg::kostant {

using chevalley::StructureConstants;
using linalg::SparseMatrix;
using rootcore::IntVector;
using rootcore::ParabolicSubset;
using rootcore::RootSystem;
using rootcore::RootVec;
using rootcore::Weight;
using rootcore::WeylWord;

/// Basis vector xi_S (x) v_i of Lambda^k p_+^* (x) V. S is a bitmask over the
/// p_+ roots; xi_S = xi_{s_1} ^ ... ^ xi_{s_k} with s_1 < ... < s_k, where xi_t
/// is dual to e_{beta_t}.
struct CEBasisElement {
  std::uint32_t subset = 0;
  std::uint32_t vector = 0;
};

/// One weight space of one degree, with the maps touching it.
struct CEBlock {
  IntVector depth;  // lambda - weight, in simple-root coordinates
  Weight weight;
  std::vector<CEBasisElement> basis;
  SparseMatrix d;          // to the same weight in degree k + 1
  SparseMatrix codiff;     // to the same weight in degree k - 1
  SparseMatrix laplacian;  // d_{k-1} codiff_k + codiff_{k+1} d_k
};

struct CEDegree {
  std::vector<std::uint32_t> subsets;  // |S| = k, increasing
  std::map<IntVector, CEBlock> blocks;
  std::size_t dim = 0;
};

/// The cochain complex Lambda^* p_+^* (x) V(lambda) with cohomology
/// differential d, Kostant codifferential (the homology differential of
/// Lambda^* p_- (x) V, transported by xi_beta <-> ((beta,beta)/2) e_{-beta}),
/// and Laplacian, all split by weight. The identities d^2 = 0, codiff^2 = 0
/// and [laplacian, d] = [laplacian, codiff] = 0 are verified at construction.
struct CEComplex {
  StructureConstants constants;
  ParabolicSubset parabolic;
  Weight lambda;
  repkit::IrrepData module;
  std::vector<SparseMatrix> root_ops;  // e_a on V, indexed like roots()
  chevalley::GradedNilpotent nilradical;  // p_+, side Plus
  std::vector<CEDegree> degrees;          // k = 0 .. dim p_+

  const RootSystem& root_system() const { return constants.root_system(); }
  int top_degree() const { return static_cast<int>(degrees.size()) - 1; }
  std::size_t total_dim() const;
  const CEBlock* block(int k, const IntVector& depth) const;

  /// Levi raising operator e_j (j a Levi simple root index, 1-based) on a
  /// block, landing in the block at depth - alpha_j of the same degree
  /// (whose basis is given; empty when absent).
  SparseMatrix levi_raising(int k, const CEBlock& block, int j) const;
};

CEComplex ce_complex(const StructureConstants& sc, const ParabolicSubset& p, const Weight& lambda,
                     const Bounds& bounds = {});

/// Levi highest weight and multiplicity.
struct LeviComponent {
  Weight highest_weight;
  std::uint64_t multiplicity = 0;

  friend bool operator==(const LeviComponent&, const LeviComponent&) = default;
  friend bool operator<(const LeviComponent& a, const LeviComponent& b) {
    if (!(a.highest_weight == b.highest_weight)) return a.highest_weight < b.highest_weight;
    return a.multiplicity < b.multiplicity;
  }
};

struct LeviDecomposition {
  std::vector<LeviComponent> components;  // sorted by highest weight
  std::uint64_t dim = 0;                  // sum of multiplicity * Levi dimension

  friend bool operator==(const LeviDecomposition& a, const LeviDecomposition& b) {
    return a.components == b.components && a.dim == b.dim;
  }
};

/// H^k by exact ranks of d per weight space; its Levi structure from the
/// highest-weight vectors (common kernel of the Levi raising operators) in
/// ker laplacian. Throws ConsistencyError if the two counts disagree.
LeviDecomposition cohomology(const CEComplex& ce, int k);

/// dim ker d_k - rank d_{k-1}, summed over weight spaces.
std::uint64_t cohomology_dim(const CEComplex& ce, int k);

/// {w.lambda : w in W^p, l(w) = k}, multiplicity one each, per degree.
std::vector<LeviDecomposition> kostant_prediction(const RootSystem& rs, const ParabolicSubset& p,
                                                  const Weight& lambda, const Bounds& bounds = {});

struct HodgeBlock {
  IntVector depth;
  std::size_t dim = 0;
  std::size_t harmonic = 0;     // dim ker laplacian
  std::size_t exact = 0;        // dim im d_{k-1}
  std::size_t coexact = 0;      // dim im codiff_{k+1}
  std::optional<linalg::Matrix> projection;  // onto ker laplacian along the images
};

struct HodgeDecomposition {
  int degree = 0;
  std::size_t dim = 0;
  std::size_t harmonic = 0;
  std::size_t exact = 0;
  std::size_t coexact = 0;
  std::vector<HodgeBlock> blocks;
};

/// Verifies Lambda^k (x) V = ker laplacian + im d + im codiff as a direct sum
/// exactly on every weight space (throws ConsistencyError otherwise). The
/// harmonic projection is computed when requested.
HodgeDecomposition hodge_decomposition(const CEComplex& ce, int k, bool with_projection = false);

struct DiagramNode {
  WeylWord element;
  Weight weight;        // bundle label -(w.lambda)
  Weight levi_weight;   // w.lambda
  std::uint64_t rank = 1;
};

struct DiagramArrow {
  std::size_t source = 0;  // shorter element
  std::size_t target = 0;
  chevalley::UEAElement symbol;
  int heisenberg_order = 0;
};

struct BGGDiagram {
  Weight lambda;
  chevalley::GradedNilpotent nilpotent;  // the algebra the symbols live in
  std::vector<DiagramNode> nodes;
  std::vector<DiagramArrow> arrows;
};

/// Borel BGG diagram: nodes from the Hasse diagram of W, arrows dual to the
/// Verma resolution maps, carrying their signed UEA symbols.
BGGDiagram bgg_diagram(const StructureConstants& sc, const Weight& lambda, const Bounds& bounds = {});

struct EulerIndex {
  std::int64_t chi = 0;
  std::int64_t dim_v = 0;
  std::int64_t index = 0;
  std::int64_t alt_rank_sum = 0;
};

EulerIndex euler_index(const RootSystem& rs, const ParabolicSubset& p, const Weight& lambda,
                       const Bounds& bounds = {});

}  // namespace bgg::kostant
