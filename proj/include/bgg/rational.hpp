#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace bgg {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "3", "-1/2".
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Accepts "3", "-1/2".
Rational parse_rational(const std::string& text);

}  // namespace bgg
