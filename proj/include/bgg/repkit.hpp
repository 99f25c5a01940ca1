#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "bgg/bounds.hpp"
#include "bgg/linalg.hpp"
#include "bgg/rootcore.hpp"

namespace bgg::repkit {

using rootcore::IntVector;
using rootcore::RootSystem;
using rootcore::Weight;

/// Weight multiplicities of a finite-dimensional module.
struct Character {
  std::map<Weight, std::uint64_t> multiplicities;

  std::uint64_t total_dim() const;
  std::uint64_t multiplicity(const Weight& mu) const;

  friend bool operator==(const Character&, const Character&) = default;
};

/// Throws UsageError unless lambda is dominant integral.
std::uint64_t weyl_dimension(const RootSystem& rs, const Weight& lambda);

/// Freudenthal recursion, exact. Throws ResourceError above bounds.irrep_dim.
Character freudenthal_character(const RootSystem& rs, const Weight& lambda, const Bounds& bounds = {});

/// V(lambda) with explicit simple generators in a weight basis. Basis vectors
/// are grouped by depth lambda - mu (simple-root coordinates), in
/// nondecreasing height, so every weight space is a contiguous block.
struct IrrepData {
  Weight highest_weight;
  std::vector<Weight> weights;                 // per basis vector
  std::vector<IntVector> depths;               // lambda - weight, per basis vector
  std::map<IntVector, std::pair<std::size_t, std::size_t>> blocks;  // depth -> [begin, end)
  std::vector<linalg::SparseMatrix> e;         // e[i-1] raises by alpha_i
  std::vector<linalg::SparseMatrix> f;         // f[i-1] lowers by alpha_i

  std::size_t dim() const { return weights.size(); }
  /// Diagonal matrix with entries <mu, alpha_i^vee>.
  linalg::SparseMatrix h(const RootSystem& rs, int i) const;
  Character character() const;
};

/// Builds V(lambda) as the quotient of the Verma module by its maximal
/// submodule: layer by layer, a lowered vector f_i w is kept modulo the
/// common kernel of all raising operators, which is exactly the radical of
/// the contravariant form restricted to that weight space.
IrrepData build_irrep(const RootSystem& rs, const Weight& lambda, const Bounds& bounds = {});

}  // namespace bgg::repkit
