#include <functional>
#include <set>

#include "bgg/errors.hpp"
#include "bgg/repkit.hpp"
#include "bgg/verma.hpp"
#include "doctest.h"

using namespace bgg;
using namespace bgg::verma;
using bgg::linalg::Matrix;

namespace {

struct Setup {
  RootSystem rs;
  StructureConstants sc;
  Setup(char fam, int rank) : rs(rootcore::build_root_system(fam, rank)), sc(chevalley::chevalley_constants(rs)) {}
  Weight hw(const IntVector& f) const { return rs.from_fundamental(f); }
};

// Direct recount, independent of the memoized partition function.
std::uint64_t brute_partitions(const RootSystem& rs, IntVector rem, std::size_t k = 0) {
  for (int x : rem)
    if (x < 0) return 0;
  if (k == rs.num_positive()) {
    for (int x : rem)
      if (x != 0) return 0;
    return 1;
  }
  std::uint64_t total = 0;
  for (;;) {
    bool ok = true;
    for (int x : rem) ok = ok && x >= 0;
    if (!ok) break;
    total += brute_partitions(rs, rem, k + 1);
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] -= rs.positive_roots()[k][i];
  }
  return total;
}

UEAElement gen(std::size_t n, std::size_t i) { return UEAElement::generator(n, i); }

bool same_up_to_scalar(const UEAElement& a, const UEAElement& b) { return a.normalized() == b.normalized(); }

std::vector<IntVector> grid(int rank, int max_coord) {
  std::vector<IntVector> out;
  IntVector v(rank, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == rank) {
      out.push_back(v);
      return;
    }
    for (int c = 0; c <= max_coord; ++c) {
      v[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST_CASE("truncated_verma weight spaces") {
  Setup a1('A', 1);
  TruncatedVerma m1(a1.sc, a1.hw({3}), 3);
  for (int k = 0; k <= 3; ++k) CHECK(m1.basis({k}).size() == 1);
  CHECK(m1.basis({4}).empty());

  Setup a2('A', 2);
  TruncatedVerma m0(a2.sc, Weight::zero(2), 2);
  CHECK(m0.basis({1, 1}).size() == 2);  // XY and Z

  for (auto [fam, rank] : {std::pair{'A', 2}, std::pair{'B', 2}, std::pair{'G', 2}, std::pair{'A', 3}}) {
    Setup s(fam, rank);
    TruncatedVerma m(s.sc, Weight::zero(rank), 6);
    for (const IntVector& c : depths_up_to(rank, 6)) {
      CHECK(m.basis(c).size() == kostant_partition(s.rs, c));
      CHECK(kostant_partition(s.rs, c) == brute_partitions(s.rs, c));
    }
  }
}

TEST_CASE("Verma module relations hold on truncated weight spaces") {
  for (auto [fam, rank, hw] : {std::tuple{'A', 2, IntVector{1, 0}}, std::tuple{'B', 2, IntVector{0, 1}},
                               std::tuple{'G', 2, IntVector{0, 0}}}) {
    Setup s(fam, rank);
    TruncatedVerma m(s.sc, s.hw(hw), 4);
    const std::size_t nr = s.rs.roots().size();
    for (const IntVector& c : depths_up_to(rank, 3)) {
      for (const Monomial& x : m.basis(c)) {
        const UEAElement xv = UEAElement::monomial(x);
        for (std::size_t a = 0; a < nr; ++a) {
          for (std::size_t b = 0; b < nr; ++b) {
            const UEAElement lhs = m.act_root(a, m.act_root(b, xv)) - m.act_root(b, m.act_root(a, xv));
            UEAElement rhs(m.nilpotent().dim());
            for (const auto& [k, coeff] : s.sc.bracket(a, b)) {
              if (k < nr) {
                rhs = rhs + Rational(coeff) * m.act_root(k, xv);
              } else {
                rhs = rhs + (Rational(coeff) * m.cartan_scalar(static_cast<int>(k - nr) + 1, c)) * xv;
              }
            }
            CHECK(lhs == rhs);
          }
        }
      }
    }
  }
}

TEST_CASE("Shapovalov form is contravariant and its rank gives the irreducible quotient") {
  for (auto [fam, rank, hw] : {std::tuple{'A', 2, IntVector{1, 1}}, std::tuple{'B', 2, IntVector{1, 0}},
                               std::tuple{'A', 1, IntVector{2}}, std::tuple{'G', 2, IntVector{1, 0}}}) {
    Setup s(fam, rank);
    const Weight lambda = s.hw(hw);
    TruncatedVerma m(s.sc, lambda, 6);
    const repkit::Character ch = repkit::freudenthal_character(s.rs, lambda);
    for (const IntVector& c : depths_up_to(rank, 5)) {
      const auto& b = m.basis(c);
      CHECK(linalg::rank(m.shapovalov_matrix(c)) == ch.multiplicity(lambda - Weight::from_root(c)));
      for (int i = 1; i <= rank; ++i) {
        IntVector up = c;
        ++up[i - 1];
        for (const Monomial& x : b) {
          for (const Monomial& y : m.basis(up)) {
            const UEAElement u = UEAElement::monomial(x), w = UEAElement::monomial(y);
            CHECK(m.shapovalov(m.raise(i, w), u) == m.shapovalov(w, m.lower(i, u)));
            CHECK(m.shapovalov(m.lower(i, u), w) == m.shapovalov(u, m.raise(i, w)));
          }
        }
      }
    }
  }
}

TEST_CASE("singular_vector examples") {
  Setup a1('A', 1);
  for (int k = 0; k <= 3; ++k) {
    auto sv = singular_vector(a1.sc, a1.hw({k}), rootcore::WeylWord(a1.rs, {1}));
    REQUIRE(sv.has_value());
    CHECK(sv->element == UEAElement::monomial({k + 1}));
    CHECK(sv->depth == IntVector{k + 1});
  }
  // m = 0: e f v = h v = 0
  TruncatedVerma m0(a1.sc, Weight::zero(1), 1);
  CHECK(m0.raise(1, m0.lower(1, UEAElement::one(1))).is_zero());

  Setup a2('A', 2);
  const Weight zero = Weight::zero(2);
  auto sx = singular_vector(a2.sc, zero, rootcore::WeylWord(a2.rs, {1}));
  REQUIRE(sx.has_value());
  CHECK(sx->element == gen(3, 0));

  // The length-two element of weight -2a_x - a_y sits in M(0) at X^2 Y.
  const rootcore::WeylWord w(a2.rs, {1, 2});
  CHECK(rootcore::dot_action(a2.rs, w, zero) == Weight({-2, -1}));
  auto sv = singular_vector(a2.sc, zero, w);
  REQUIRE(sv.has_value());
  CHECK(sv->element == UEAElement::monomial({2, 1, 0}));
}

TEST_CASE("relation vectors against the length-one pair") {
  Setup a2('A', 2);
  const GradedNilpotent n = chevalley::build_nilpotent(a2.sc, rootcore::ParabolicSubset::borel(a2.rs),
                                                       chevalley::Side::Minus);
  const UEAElement X = gen(3, 0), Y = gen(3, 1), Z = gen(3, 2);
  // Singular vectors in M(-a_x) and M(-a_y).
  TruncatedVerma mx(a2.sc, Weight({-1, 0}), 3), my(a2.sc, Weight({0, -1}), 3);
  auto in_x = singular_space(mx, {1, 1});
  auto in_y = singular_space(my, {1, 1});
  REQUIRE(in_x.size() == 1);
  REQUIRE(in_y.size() == 1);
  CHECK(in_x[0] == chevalley::normal_form(n, {X, Y}) + Z);
  CHECK(in_y[0] == chevalley::normal_form(n, {Y, X}) - Z);
  CHECK(singular_space(mx, {0, 2}) == std::vector<UEAElement>{UEAElement::monomial({0, 2, 0})});
  CHECK(singular_space(my, {2, 0}) == std::vector<UEAElement>{UEAElement::monomial({2, 0, 0})});
}

TEST_CASE("uniqueness and injectivity of Verma morphisms on the grid") {
  for (auto [fam, rank, maxc] : {std::tuple{'A', 1, 3}, std::tuple{'A', 2, 2}, std::tuple{'B', 2, 1}, std::tuple{'G', 2, 0}}) {
    Setup s(fam, rank);
    for (const IntVector& f : grid(rank, maxc)) {
      const Weight lambda = s.hw(f);
      for (const auto& w : rootcore::enumerate_weyl_group(s.rs)) {
        auto sv = singular_vector(s.sc, lambda, w);
        REQUIRE(sv.has_value());
        // u * (.) from M(w.lambda)_mu into M(lambda)_mu has no kernel a few levels down.
        TruncatedVerma m(s.sc, lambda, 0);
        for (const IntVector& extra : depths_up_to(rank, 2)) {
          const auto src = pbw_monomials(m.nilpotent(), extra);
          IntVector tgt = extra;
          for (int i = 0; i < rank; ++i) tgt[i] += sv->depth[i];
          const auto dst = pbw_monomials(m.nilpotent(), tgt);
          std::map<Monomial, std::size_t> pos;
          for (std::size_t k = 0; k < dst.size(); ++k) pos[dst[k]] = k;
          Matrix mat(dst.size(), src.size());
          for (std::size_t col = 0; col < src.size(); ++col) {
            const UEAElement image = m.algebra().multiply(UEAElement::monomial(src[col]), sv->element);
            for (const auto& [mono, c] : image.terms()) mat(pos.at(mono), col) = c;
          }
          CHECK(linalg::rank(mat) == src.size());
        }
      }
    }
  }
}

TEST_CASE("BGG resolution assembly") {
  Setup a1('A', 1);
  BGGResolution r1 = build_bgg_resolution(a1.sc, Weight::zero(1));
  REQUIRE(r1.arrows.size() == 1);
  CHECK(r1.weights[1] == Weight({-1}));
  CHECK(r1.arrows[0].symbol == UEAElement::monomial({1}));

  Setup a2('A', 2);
  BGGResolution r = build_bgg_resolution(a2.sc, Weight::zero(2));
  REQUIRE(r.weights.size() == 6);
  std::multiset<Weight> weights(r.weights.begin(), r.weights.end());
  CHECK(weights == std::multiset<Weight>{Weight({0, 0}), Weight({-1, 0}), Weight({0, -1}), Weight({-2, -1}),
                                         Weight({-1, -2}), Weight({-2, -2})});
  const GradedNilpotent n =
      chevalley::build_nilpotent(a2.sc, rootcore::ParabolicSubset::borel(a2.rs), chevalley::Side::Minus);
  std::multiset<std::string> symbols;
  for (const auto& a : r.arrows) symbols.insert(a.symbol.str(n));
  CHECK(symbols == std::multiset<std::string>{"y10", "y01", "y10*y01 + y11", "y10^2", "y01^2", "y10*y01 - 2*y11",
                                              "y01", "y10"});
  for (const auto& a : r.arrows) CHECK((a.scalar == 1 || a.scalar == -1));

  BGGResolution rw = build_bgg_resolution(a2.sc, a2.hw({1, 0}));
  for (std::size_t k = 0; k < rw.weights.size(); ++k)
    CHECK(rw.weights[k] == rootcore::dot_action(a2.rs, rw.hasse.elements[k], a2.hw({1, 0})));
  CHECK(verify_resolution(a2.sc, rw, 6).composition_failures.empty());
}

TEST_CASE("verify_resolution examples") {
  Setup a2('A', 2);
  BGGResolution r = build_bgg_resolution(a2.sc, Weight::zero(2));
  ExactnessReport rep = verify_resolution(a2.sc, r, 4);
  CHECK(rep.ok());
  for (const auto& e : rep.entries) CHECK(e.defect == 0);

  Setup a1('A', 1);
  BGGResolution r1 = build_bgg_resolution(a1.sc, a1.hw({2}));
  CHECK(verify_resolution(a1.sc, r1, 5).ok());

  ExactnessReport tiny = verify_resolution(a2.sc, r, 0);
  CHECK(tiny.ok());
  CHECK(tiny.entries.size() == 4);  // one weight, degrees 0..3
}

TEST_CASE("a wrong gauge is detected as a composition failure") {
  Setup a2('A', 2);
  BGGResolution r = build_bgg_resolution(a2.sc, Weight::zero(2));
  for (auto& a : r.arrows)
    if (r.hasse.elements[a.source].length() == 2) {
      a.scalar = -a.scalar;
      break;
    }
  CHECK_FALSE(verify_resolution(a2.sc, r, 4).composition_failures.empty());
}

TEST_CASE("character_identity examples and grid") {
  Setup a2('A', 2);
  auto r0 = character_identity(a2.rs, Weight::zero(2), 8);
  CHECK(r0.holds);
  CHECK(r0.defects.empty());
  Setup a1('A', 1);
  CHECK(character_identity(a1.rs, a1.hw({3}), 10).holds);
  CHECK(character_identity(a2.rs, Weight::zero(2), 0).checked == 1);
  for (auto [fam, rank] : {std::pair{'A', 1}, std::pair{'A', 2}, std::pair{'B', 2}}) {
    Setup s(fam, rank);
    for (const IntVector& f : grid(rank, 2)) CHECK(character_identity(s.rs, s.hw(f), 10).holds);
  }
}
