#include <random>

#include "bgg/chevalley.hpp"
#include "bgg/errors.hpp"
#include "doctest.h"

using namespace bgg;
using namespace bgg::chevalley;
using bgg::linalg::SparseMatrix;

namespace {

struct Fixture {
  RootSystem rs;
  StructureConstants sc;
  GradedNilpotent n;
  explicit Fixture(char fam, int rank)
      : rs(rootcore::build_root_system(fam, rank)),
        sc(chevalley_constants(rs)),
        n(build_nilpotent(sc, ParabolicSubset::borel(rs), Side::Minus)) {}
};

// y_b realized as -e_{-b} on a module; monomials act in PBW order.
SparseMatrix realize(const Fixture& fx, const std::vector<SparseMatrix>& ops, const UEAElement& u, std::size_t dim) {
  SparseMatrix total(dim, dim);
  for (const auto& [m, c] : u.terms()) {
    SparseMatrix prod(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) prod.add(k, k, 1);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const SparseMatrix y = Rational(-1) * ops[fx.rs.negative_of(fx.n.root_indices[i])];
      for (int k = 0; k < m[i]; ++k) prod = prod * y;
    }
    total = total + c * prod;
  }
  return total;
}

UEAElement random_element(std::mt19937& rng, std::size_t nvars, int max_deg, int terms) {
  UEAElement u(nvars);
  for (int t = 0; t < terms; ++t) {
    Monomial m(nvars, 0);
    const int deg = static_cast<int>(rng() % (max_deg + 1));
    for (int d = 0; d < deg; ++d) ++m[rng() % nvars];
    u.add(m, make_rational(static_cast<int>(rng() % 7) - 3, 1 + rng() % 2));
  }
  return u;
}

}  // namespace

TEST_CASE("A1 constants are the sl2 relations") {
  Fixture fx('A', 1);
  CHECK(fx.sc.dim() == 3);
  // basis: e (0), f (1), h (2)
  CHECK(fx.sc.bracket(0, 1) == LieVector{{2, 1}});
  CHECK(fx.sc.bracket(2, 0) == LieVector{{0, 2}});
  CHECK(fx.sc.bracket(2, 1) == LieVector{{1, -2}});
}

TEST_CASE("A2 and G2 constants") {
  Fixture a2('A', 2);
  const std::size_t x = a2.rs.simple_root_index(1), y = a2.rs.simple_root_index(2);
  CHECK(std::abs(a2.sc.N(x, y)) == 1);
  CHECK(a2.sc.N(x, y) == 1);  // extraspecial pair chosen positive

  Fixture g2('G', 2);
  int biggest = 0;
  for (std::size_t a = 0; a < g2.rs.roots().size(); ++a)
    for (std::size_t b = 0; b < g2.rs.roots().size(); ++b) biggest = std::max(biggest, std::abs(g2.sc.N(a, b)));
  CHECK(biggest == 3);
}

TEST_CASE("structure constant invariants on every small type") {
  for (auto [fam, rank] : {std::pair{'A', 3}, std::pair{'B', 3}, std::pair{'C', 3}, std::pair{'D', 4}, std::pair{'G', 2},
                           std::pair{'F', 4}, std::pair{'B', 2}}) {
    RootSystem rs = rootcore::build_root_system(fam, rank);
    StructureConstants sc = chevalley_constants(rs);
    CHECK_FALSE(sc.first_jacobi_failure().has_value());
    for (std::size_t a = 0; a < rs.roots().size(); ++a)
      for (std::size_t b = 0; b < rs.roots().size(); ++b) CHECK(sc.N(a, b) == -sc.N(b, a));
  }
}

TEST_CASE("a corrupted constant is caught by the Jacobi check") {
  Fixture fx('A', 2);
  const std::size_t x = fx.rs.simple_root_index(1), y = fx.rs.simple_root_index(2);
  fx.sc.set_constant(x, y, 2);
  fx.sc.set_constant(y, x, -2);
  auto failure = fx.sc.first_jacobi_failure();
  REQUIRE(failure.has_value());
  CHECK(failure->x < failure->y);
  CHECK(failure->y < failure->z);
}

TEST_CASE("root operators on other modules realize the same constants") {
  for (auto [fam, rank, hw] : {std::tuple{'A', 2, IntVector{2, 1}}, std::tuple{'G', 2, IntVector{1, 0}},
                               std::tuple{'B', 2, IntVector{1, 1}}}) {
    RootSystem rs = rootcore::build_root_system(fam, rank);
    StructureConstants sc = chevalley_constants(rs);
    repkit::IrrepData v = repkit::build_irrep(rs, rs.from_fundamental(hw));
    auto ops = root_operators(sc, v);
    for (std::size_t a = 0; a < rs.roots().size(); ++a) {
      for (std::size_t b = 0; b < rs.roots().size(); ++b) {
        const LieVector br = sc.bracket(a, b);
        SparseMatrix expect(v.dim(), v.dim());
        for (const auto& [k, c] : br)
          expect = expect + Rational(c) * (k < rs.roots().size() ? ops[k] : v.h(rs, static_cast<int>(k - rs.roots().size()) + 1));
        CHECK(commutator(ops[a], ops[b]) == expect);
      }
    }
  }
}

TEST_CASE("build_nilpotent examples") {
  Fixture a2('A', 2);
  REQUIRE(a2.n.dim() == 3);
  CHECK(a2.n.names == std::vector<std::string>{"y10", "y01", "y11"});
  REQUIRE(a2.n.bracket(0, 1).has_value());
  CHECK(a2.n.bracket(0, 1)->k == 2);
  CHECK(a2.n.bracket(0, 1)->coeff == 1);  // [X, Y] = Z
  CHECK(a2.n.degree(0) == -1);
  CHECK(a2.n.degree(2) == -2);
  CHECK(a2.n.nilpotency_step() == 2);

  GradedNilpotent px = build_nilpotent(a2.sc, ParabolicSubset::from_crossed(a2.rs, {1}), Side::Minus);
  CHECK(px.dim() == 2);
  CHECK(px.is_abelian());

  Fixture a1('A', 1);
  CHECK(a1.n.dim() == 1);
  CHECK(a1.n.is_abelian());

  GradedNilpotent plus = build_nilpotent(a2.sc, ParabolicSubset::borel(a2.rs), Side::Plus);
  CHECK(plus.bracket(0, 1)->coeff == a2.sc.N(0, 1));
  CHECK(plus.degree(2) == 2);
}

TEST_CASE("graded brackets on every parabolic") {
  for (auto [fam, rank] : {std::pair{'B', 3}, std::pair{'G', 2}, std::pair{'A', 4}}) {
    RootSystem rs = rootcore::build_root_system(fam, rank);
    StructureConstants sc = chevalley_constants(rs);
    for (int mask = 1; mask < (1 << rank); ++mask) {
      IntVector crossed;
      for (int i = 0; i < rank; ++i)
        if (mask & (1 << i)) crossed.push_back(i + 1);
      for (Side side : {Side::Plus, Side::Minus}) {
        GradedNilpotent g = build_nilpotent(sc, ParabolicSubset::from_crossed(rs, crossed), side);
        CHECK(g.nilpotency_step() == g.depth);
        for (std::size_t i = 0; i < g.dim(); ++i)
          for (std::size_t j = 0; j < g.dim(); ++j)
            if (g.bracket(i, j)) CHECK(g.degree(g.bracket(i, j)->k) == g.degree(i) + g.degree(j));
      }
    }
  }
}

TEST_CASE("PBW normal form examples") {
  Fixture fx('A', 2);
  const auto X = UEAElement::generator(3, 0), Y = UEAElement::generator(3, 1), Z = UEAElement::generator(3, 2);
  CHECK(normal_form(fx.n, {Y, X}) == normal_form(fx.n, {X, Y}) - Z);
  CHECK(normal_form(fx.n, {X, X}) == UEAElement::monomial({2, 0, 0}));
  CHECK(normal_form(fx.n, {X, Y}).str(fx.n) == "y10*y01");
  CHECK((normal_form(fx.n, {X, Y}) + Z).str(fx.n) == "y10*y01 + y11");
  CHECK(pbw_greater({1, 1, 0}, {0, 0, 1}));

  const UEAElement xy_z = normal_form(fx.n, {X, Y}) + Z;
  const UEAElement prod = multiply(fx.n, xy_z, X);
  // (XY + Z) X = X(YX) + ZX = X(XY - Z) + XZ = X^2 Y
  CHECK(prod == UEAElement::monomial({2, 1, 0}));
  CHECK(prod.weight(fx.n) == IntVector{-2, -1});
  CHECK(prod.graded_degree(fx.n) == 3);
  CHECK((Rational(-2) * xy_z).normalized() == xy_z);
}

TEST_CASE("PBW multiplication agrees with a matrix realization") {
  std::mt19937 rng(17);
  for (auto [fam, rank, hw] : {std::tuple{'A', 2, IntVector{2, 1}}, std::tuple{'B', 2, IntVector{1, 1}},
                               std::tuple{'G', 2, IntVector{1, 0}}, std::tuple{'A', 3, IntVector{1, 0, 1}}}) {
    Fixture fx(fam, rank);
    repkit::IrrepData v = repkit::build_irrep(fx.rs, fx.rs.from_fundamental(hw));
    auto ops = root_operators(fx.sc, v);
    for (int trial = 0; trial < 15; ++trial) {
      UEAElement a = random_element(rng, fx.n.dim(), 3, 3), b = random_element(rng, fx.n.dim(), 3, 3);
      // random exponent vectors are already PBW monomials; products need straightening
      const UEAElement ab = multiply(fx.n, a, b);
      CHECK(realize(fx, ops, ab, v.dim()) == realize(fx, ops, a, v.dim()) * realize(fx, ops, b, v.dim()));
      const UEAElement c = random_element(rng, fx.n.dim(), 2, 2);
      CHECK(multiply(fx.n, ab, c) == multiply(fx.n, a, multiply(fx.n, b, c)));
      CHECK(normal_form(fx.n, {a, b, c}) == multiply(fx.n, ab, c));
    }
  }
}

TEST_CASE("weight homogeneity and additive graded degree") {
  std::mt19937 rng(23);
  Fixture fx('B', 3);
  for (int trial = 0; trial < 30; ++trial) {
    Monomial ma(fx.n.dim(), 0), mb(fx.n.dim(), 0);
    for (int d = 0; d < 3; ++d) ++ma[rng() % fx.n.dim()];
    for (int d = 0; d < 2; ++d) ++mb[rng() % fx.n.dim()];
    const UEAElement a = UEAElement::monomial(ma), b = UEAElement::monomial(mb);
    const UEAElement ab = multiply(fx.n, b, a);
    REQUIRE(ab.weight(fx.n).has_value());
    IntVector expect = *a.weight(fx.n);
    for (std::size_t i = 0; i < expect.size(); ++i) expect[i] += (*b.weight(fx.n))[i];
    CHECK(*ab.weight(fx.n) == expect);
    CHECK(*ab.graded_degree(fx.n) == *a.graded_degree(fx.n) + *b.graded_degree(fx.n));
  }
}
