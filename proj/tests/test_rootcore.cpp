#include <functional>
#include <random>
#include <set>

#include "bgg/errors.hpp"
#include "bgg/rootcore.hpp"
#include "doctest.h"

using namespace bgg;
using namespace bgg::rootcore;

namespace {

const std::vector<TypeLabel> kAllSmallTypes = {
    {'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'A', 5}, {'B', 2}, {'B', 3}, {'B', 4}, {'C', 2}, {'C', 3},
    {'C', 4}, {'D', 4}, {'F', 4}, {'G', 2}};

std::vector<TypeLabel> all_types_for_counts() {
  std::vector<TypeLabel> t;
  for (int n = 1; n <= 8; ++n) t.push_back({'A', n});
  for (int n = 2; n <= 7; ++n) t.push_back({'B', n});
  for (int n = 2; n <= 7; ++n) t.push_back({'C', n});
  for (int n = 4; n <= 8; ++n) t.push_back({'D', n});
  for (int n = 6; n <= 8; ++n) t.push_back({'E', n});
  t.push_back({'F', 4});
  t.push_back({'G', 2});
  return t;
}

// Brute force: every element reachable as a subword of a reduced word.
std::set<IntVector> subword_elements(const RootSystem& rs, const IntVector& word) {
  std::set<IntVector> out;
  const std::size_t n = word.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    IntVector sub;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (std::size_t{1} << k)) sub.push_back(word[k]);
    out.insert(WeylWord(rs, sub).rho_image());
  }
  return out;
}

std::vector<std::vector<int>> all_subsets(int rank) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << rank); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < rank; ++i)
      if (mask & (1 << i)) s.push_back(i + 1);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("build_root_system examples") {
  RootSystem a1 = build_root_system('A', 1);
  CHECK(a1.positive_roots() == std::vector<RootVec>{{1}});
  CHECK(a1.rho() == Weight({make_rational(1, 2)}));

  RootSystem a2 = build_root_system('A', 2);
  CHECK(a2.positive_roots() == std::vector<RootVec>{{1, 0}, {0, 1}, {1, 1}});
  CHECK(a2.rho() == Weight({1, 1}));

  CHECK(build_root_system('G', 2).num_positive() == 6);
}

TEST_CASE("invalid types are rejected") {
  CHECK_THROWS_AS(build_root_system('A', 0), UsageError);
  CHECK_THROWS_AS(build_root_system('D', 3), UsageError);
  CHECK_THROWS_AS(build_root_system('E', 9), UsageError);
  CHECK_THROWS_AS(build_root_system('H', 3), UsageError);
  CHECK_THROWS_AS(TypeLabel::parse("A"), UsageError);
}

TEST_CASE("root system invariants across the classification") {
  for (const TypeLabel& t : all_types_for_counts()) {
    CAPTURE(t.str());
    RootSystem rs = build_root_system(t);
    CHECK(rs.num_positive() == expected_positive_root_count(t.family, t.rank));
    int min_len = 1 << 20;
    for (const RootVec& a : rs.positive_roots()) {
      for (int x : a) CHECK(x >= 0);
      min_len = std::min(min_len, rs.inner(a, a));
      for (const RootVec& b : rs.positive_roots()) {
        RootVec s = a;
        for (int i = 0; i < rs.rank(); ++i) s[i] += b[i];
        if (rs.is_root(s)) CHECK(*rs.root_index(s) < rs.num_positive());
      }
    }
    CHECK(min_len == 2);
    for (int i = 1; i <= rs.rank(); ++i) CHECK(rs.pairing(rs.rho(), i) == 1);
    // Invariance of the form: (s_i a, s_i b) = (a, b) on simple roots.
    for (int i = 1; i <= rs.rank(); ++i) {
      for (int a = 0; a < rs.rank(); ++a) {
        for (int b = 0; b < rs.rank(); ++b) {
          RootVec ea(rs.rank(), 0), eb(rs.rank(), 0);
          ea[a] = 1;
          eb[b] = 1;
          CHECK(rs.inner(rs.reflect(i, ea), rs.reflect(i, eb)) == rs.gram_matrix()[a][b]);
        }
      }
    }
  }
}

TEST_CASE("fundamental and simple coordinates are mutually inverse") {
  std::mt19937 rng(3);
  for (const TypeLabel& t : kAllSmallTypes) {
    RootSystem rs = build_root_system(t);
    for (int trial = 0; trial < 10; ++trial) {
      RationalVector f(rs.rank());
      for (auto& x : f) x = make_rational(static_cast<int>(rng() % 9) - 4, 1 + rng() % 3);
      CHECK(rs.to_fundamental(rs.from_fundamental(f)) == f);
      Weight mu(f);
      CHECK(rs.from_fundamental(rs.to_fundamental(mu)) == mu);
    }
  }
}

TEST_CASE("dot action examples") {
  RootSystem a2 = build_root_system('A', 2);
  const Weight zero = Weight::zero(2);
  CHECK(dot_action(a2, WeylWord::identity(a2), Weight({3, 1})) == Weight({3, 1}));
  CHECK(dot_action(a2, WeylWord(a2, {1}), zero) == Weight({-1, 0}));
  CHECK(dot_action(a2, WeylWord(a2, {1, 2, 1}), zero) == Weight({-2, -2}));
}

TEST_CASE("dot action is a twisted W-action") {
  std::mt19937 rng(11);
  for (const TypeLabel& t : kAllSmallTypes) {
    RootSystem rs = build_root_system(t);
    for (int trial = 0; trial < 20; ++trial) {
      IntVector wu, wv;
      for (int k = 0; k < 6; ++k) wu.push_back(1 + static_cast<int>(rng() % rs.rank()));
      for (int k = 0; k < 5; ++k) wv.push_back(1 + static_cast<int>(rng() % rs.rank()));
      WeylWord u(rs, wu), v(rs, wv);
      RationalVector f(rs.rank());
      for (auto& x : f) x = make_rational(static_cast<int>(rng() % 7) - 3, 1 + rng() % 2);
      Weight lambda = rs.from_fundamental(f);
      CHECK(dot_action(rs, u, dot_action(rs, v, lambda)) == dot_action(rs, u * v, lambda));
    }
  }
}

TEST_CASE("length equals inversion count on every group up to F4 size") {
  for (const TypeLabel& t : kAllSmallTypes) {
    RootSystem rs = build_root_system(t);
    if (rs.weyl_group_order() > 1152) continue;
    CAPTURE(t.str());
    auto group = enumerate_weyl_group(rs);
    CHECK(group.size() == rs.weyl_group_order());
    for (const WeylWord& w : group) CHECK(w.length() == inversion_count(rs, w));
    CHECK(group.back().length() == static_cast<int>(rs.num_positive()));
  }
}

TEST_CASE("canonical word does not depend on the presentation") {
  RootSystem a2 = build_root_system('A', 2);
  CHECK(WeylWord(a2, {1, 2, 1}).canonical_word() == WeylWord(a2, {2, 1, 2}).canonical_word());
  CHECK(WeylWord(a2, {1, 1}).canonical_word().empty());
  std::mt19937 rng(5);
  for (const TypeLabel& t : {TypeLabel{'B', 3}, TypeLabel{'G', 2}, TypeLabel{'A', 4}}) {
    RootSystem rs = build_root_system(t);
    for (int trial = 0; trial < 50; ++trial) {
      IntVector word;
      for (int k = 0; k < 12; ++k) word.push_back(1 + static_cast<int>(rng() % rs.rank()));
      WeylWord w(rs, word);
      WeylWord again(rs, w.canonical_word());
      CHECK(again.canonical_word() == w.canonical_word());
      CHECK(w.inverse() * w == WeylWord::identity(rs));
      CHECK(w.action() == again.action());
    }
  }
}

TEST_CASE("bruhat order examples") {
  RootSystem a2 = build_root_system('A', 2);
  for (const WeylWord& w : enumerate_weyl_group(a2)) CHECK(bruhat_leq(a2, WeylWord::identity(a2), w));
  CHECK(bruhat_leq(a2, WeylWord(a2, {1}), WeylWord(a2, {1, 2})));
  CHECK_FALSE(bruhat_leq(a2, WeylWord(a2, {1}), WeylWord(a2, {2})));
}

TEST_CASE("bruhat order agrees with brute-force subword enumeration") {
  for (const TypeLabel& t : {TypeLabel{'A', 2}, TypeLabel{'A', 3}, TypeLabel{'B', 2}, TypeLabel{'G', 2},
                             TypeLabel{'B', 3}}) {
    RootSystem rs = build_root_system(t);
    auto group = enumerate_weyl_group(rs);
    for (const WeylWord& w : group) {
      const auto below = subword_elements(rs, w.canonical_word());
      for (const WeylWord& u : group) CHECK(bruhat_leq(rs, u, w) == (below.count(u.rho_image()) > 0));
    }
  }
}

TEST_CASE("hasse diagram examples") {
  RootSystem a2 = build_root_system('A', 2);
  HasseDiagram full = hasse_diagram(a2, ParabolicSubset::borel(a2));
  CHECK(full.elements.size() == 6);
  CHECK(full.length_profile == std::vector<std::size_t>{1, 2, 2, 1});
  CHECK(full.edges.size() == 8);

  HasseDiagram px = hasse_diagram(a2, ParabolicSubset::from_crossed(a2, {1}));
  REQUIRE(px.elements.size() == 3);
  CHECK(px.elements[0].length() == 0);
  CHECK(px.elements[1].length() == 1);
  CHECK(px.elements[2].length() == 2);

  RootSystem a1 = build_root_system('A', 1);
  CHECK(hasse_diagram(a1, ParabolicSubset::borel(a1)).length_profile == std::vector<std::size_t>{1, 1});
}

TEST_CASE("coset counting |W^p| * |W_levi| = |W| and edges are Bruhat covers") {
  for (const TypeLabel& t : kAllSmallTypes) {
    RootSystem rs = build_root_system(t);
    if (rs.weyl_group_order() > 1152) continue;
    for (const auto& crossed : all_subsets(rs.rank())) {
      ParabolicSubset p = ParabolicSubset::from_crossed(rs, crossed);
      HasseDiagram h = hasse_diagram(rs, p);
      CHECK(h.elements.size() * levi_weyl_order(rs, p) == rs.weyl_group_order());
      for (const auto& [u, w] : h.edges) {
        CHECK(bruhat_leq(rs, h.elements[u], h.elements[w]));
        CHECK(h.elements[u].length() + 1 == h.elements[w].length());
      }
    }
  }
}

TEST_CASE("weyl enumeration bound is enforced") {
  RootSystem e7 = build_root_system('E', 7);
  CHECK_THROWS_AS(enumerate_weyl_group(e7), ResourceError);
  Bounds tiny;
  tiny.weyl_elements = 5;
  RootSystem a2 = build_root_system('A', 2);
  CHECK_THROWS_AS(hasse_diagram(a2, ParabolicSubset::borel(a2), tiny), ResourceError);
}

TEST_CASE("parabolic grading examples") {
  RootSystem a2 = build_root_system('A', 2);
  Grading borel = parabolic_grading(a2, ParabolicSubset::borel(a2));
  CHECK(borel.depth == 2);
  CHECK(borel.rank_ap == 2);
  CHECK(borel.components[-1] == std::vector<RootVec>{{-1, 0}, {0, -1}});
  CHECK(borel.components[-2] == std::vector<RootVec>{{-1, -1}});

  Grading px = parabolic_grading(a2, ParabolicSubset::from_crossed(a2, {1}));
  CHECK(px.depth == 1);
  CHECK(px.height_of_root[*a2.root_index({0, 1})] == 0);

  for (const TypeLabel& t : kAllSmallTypes) {
    RootSystem rs = build_root_system(t);
    Grading g = parabolic_grading(rs, ParabolicSubset::whole(rs));
    CHECK(g.depth == 0);
    CHECK(g.dim(0) == rs.roots().size());
  }
}

TEST_CASE("grading invariants on every parabolic") {
  for (const TypeLabel& t : kAllSmallTypes) {
    RootSystem rs = build_root_system(t);
    for (const auto& crossed : all_subsets(rs.rank())) {
      ParabolicSubset p = ParabolicSubset::from_crossed(rs, crossed);
      Grading g = parabolic_grading(rs, p);
      std::size_t total = 0;
      for (int j = -g.depth; j <= g.depth; ++j) {
        CHECK(g.dim(j) == g.dim(-j));
        total += g.dim(j);
      }
      CHECK(total + rs.rank() == rs.roots().size() + rs.rank());
      for (std::size_t a = 0; a < rs.roots().size(); ++a) {
        for (std::size_t b = 0; b < rs.roots().size(); ++b) {
          RootVec s = rs.roots()[a];
          for (int i = 0; i < rs.rank(); ++i) s[i] += rs.roots()[b][i];
          if (auto k = rs.root_index(s)) CHECK(g.height_of_root[*k] == g.height_of_root[a] + g.height_of_root[b]);
        }
      }
    }
  }
}
