#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bgg/linalg.hpp"
#include "bgg/rootcore.hpp"

namespace bgg::splitkit {

using linalg::Matrix;

/// 0 -> V_0 -> V_1 -> ... -> V_n -> 0 with d_j = differentials[j] : V_j -> V_{j+1}.
struct FiniteComplex {
  std::vector<std::size_t> dims;
  std::vector<Matrix> differentials;  // dims.size() - 1 maps

  std::size_t length() const { return differentials.size(); }
  /// Throws PreconditionError on a shape mismatch or d_{j+1} d_j != 0.
  void validate() const;
};

/// b_j = maps[j] : V_{j+1} -> V_j, opposite to d_j.
struct Splitting {
  std::vector<Matrix> maps;
};

/// dim ker d_j - rank d_{j-1} at every V_j (zero everywhere iff exact).
std::vector<std::size_t> homology_dims(const FiniteComplex& c);

/// Contracting homotopy of an exact complex, built degree by degree: b_0 is
/// the normal-equations left inverse of d_0; then the stacked map (d_j; b_{j-1})
/// is left-inverted, L = (L_1 L_2), and b_j = L_1 d_j L_1. The identities
/// b d + d b = 1, b_{j-1} b_j = 0 and (d_j b_j)^2 = d_j b_j are checked after
/// every step. Throws PreconditionError naming the first non-exact degree.
Splitting split_exact_complex(const FiniteComplex& c);

/// Empty when every identity holds exactly; otherwise a description of each failure.
std::vector<std::string> splitting_defects(const FiniteComplex& c, const Splitting& s);

/// Normal-equations left inverse (A^T A)^{-1} A^T of an injective matrix.
Matrix left_inverse(const Matrix& a);

/// Random exact complex with 1..max_length maps and every dim V_j <= max_dim.
/// Built from a direct sum of identity pieces conjugated by random unimodular
/// integer change of basis on each space.
FiniteComplex random_exact_complex(std::mt19937_64& rng, std::size_t max_length, std::size_t max_dim);

enum class VerdictValue { Exists, NotExists, Unknown };

std::string to_string(VerdictValue v);

struct Verdict {
  VerdictValue value = VerdictValue::Unknown;
  int rank_G = 0;
  int rank_AP = 0;
  std::string rationale;
};

/// Exists when rank G <= 1, NotExists when more than one simple root is
/// crossed, Unknown in between.
Verdict splitting_verdict(const rootcore::RootSystem& rs, const rootcore::ParabolicSubset& p);

}  // namespace bgg::splitkit
