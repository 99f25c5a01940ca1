#pragma once

#include <cstddef>

namespace bgg {

/// Desk-scale resource limits. Every operation that needs a full enumeration
/// or an explicit module checks the relevant field and throws ResourceError.
struct Bounds {
  std::size_t weyl_elements = 100000;
  std::size_t irrep_dim = 2000;
  std::size_t complex_dim = 200000;
};

}  // namespace bgg
