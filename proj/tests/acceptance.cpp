// Acceptance run: one PASS/FAIL line per criterion, each with its own time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bgg/app.hpp"
#include "bgg/document.hpp"
#include "bgg/errors.hpp"
#include "bgg/kostant.hpp"
#include "bgg/splitkit.hpp"
#include "bgg/verify.hpp"
#include "bgg/verma.hpp"

using namespace bgg;
using chevalley::GradedNilpotent;
using chevalley::Monomial;
using chevalley::UEAElement;
using linalg::Matrix;
using rootcore::IntVector;
using rootcore::ParabolicSubset;
using rootcore::RootSystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void expect(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) o.detail = what;
  o.pass = o.pass && ok;
}

RootSystem system_of(const char* type) { return rootcore::build_root_system(rootcore::TypeLabel::parse(type)); }

ParabolicSubset parabolic(const RootSystem& rs, const std::optional<IntVector>& crossed) {
  return crossed ? ParabolicSubset::from_crossed(rs, *crossed) : ParabolicSubset::borel(rs);
}

// Sign-free comparison key for a symbol.
std::string up_to_sign(const UEAElement& u, const GradedNilpotent& n) {
  if (u.is_zero()) return "0";
  return (sgn(u.leading_term().second) < 0 ? -u : u).str(n);
}

struct A2Symbols {
  RootSystem rs = system_of("A2");
  chevalley::StructureConstants sc = chevalley::chevalley_constants(rs);
  GradedNilpotent n = chevalley::build_nilpotent(sc, ParabolicSubset::borel(rs), chevalley::Side::Minus);
  UEAElement X, Y, Z;

  A2Symbols() {
    X = UEAElement::generator(n.dim(), index("y10"));
    Y = UEAElement::generator(n.dim(), index("y01"));
    Z = (*this)({X, Y}) - (*this)({Y, X});  // [X, Y] = Z
  }
  std::size_t index(const std::string& name) const {
    for (std::size_t i = 0; i < n.names.size(); ++i)
      if (n.names[i] == name) return i;
    throw ConsistencyError("no basis element " + name);
  }
  UEAElement operator()(const std::vector<UEAElement>& factors) const { return chevalley::normal_form(n, factors); }
};

// ---------------------------------------------------------------------------

Outcome criterion_1() {
  Outcome o;
  const auto parsed = app::parse_arguments({"bgg", "A2", "--hw", "0,0", "--format", "json"});
  const app::RunResult r = app::run(*parsed.spec);
  expect(o, r.status == 0, "bgg A2 --hw 0,0 failed: " + r.diagnostics);
  if (!o.pass) return o;
  const app::DiagramDocument doc = app::document_from_json(nlohmann::ordered_json::parse(r.output));
  A2Symbols s;
  expect(o, doc.symbol_basis == s.n.names, "unexpected symbol basis");
  expect(o, up_to_sign(s.Z, s.n) == "y11", "[X, Y] is not the third basis vector");

  std::multiset<std::vector<Rational>> weights;
  for (const auto& node : doc.nodes) weights.insert(node.weight_simple_coords);
  const std::multiset<std::vector<Rational>> expected_weights = {
      {0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 2}, {2, 2}};
  expect(o, doc.nodes.size() == 6 && weights == expected_weights, "node weights differ");
  expect(o, doc.arrows.size() == 8, "expected 8 arrows, got " + std::to_string(doc.arrows.size()));

  // Layer by source length: symbols up to sign and Heisenberg orders.
  const UEAElement &X = s.X, &Y = s.Y, &Z = s.Z;
  const std::vector<std::multiset<std::string>> expected_symbols = {
      {up_to_sign(X, s.n), up_to_sign(Y, s.n)},
      {up_to_sign(s({X, Y}) + Z, s.n), up_to_sign(s({X, X}), s.n), up_to_sign(s({Y, Y}), s.n),
       up_to_sign(s({Y, X}) - Z, s.n)},
      {up_to_sign(Y, s.n), up_to_sign(X, s.n)}};
  const std::vector<std::multiset<int>> expected_orders = {{1, 1}, {2, 2, 2, 2}, {1, 1}};
  std::vector<std::multiset<std::string>> symbols(3);
  std::vector<std::multiset<int>> orders(3);
  for (const auto& a : doc.arrows) {
    const int layer = doc.nodes.at(a.src).length;
    expect(o, layer >= 0 && layer < 3 && doc.nodes.at(a.dst).length == layer + 1, "arrow skips a length");
    if (layer < 0 || layer >= 3) continue;
    UEAElement u(s.n.dim());
    for (const auto& t : a.symbol) u.add(t.exponent_vector, t.coefficient);
    symbols[layer].insert(up_to_sign(u, s.n));
    orders[layer].insert(a.heisenberg_order);
  }
  expect(o, symbols == expected_symbols, "arrow symbols differ");
  expect(o, orders == expected_orders, "Heisenberg orders differ");
  o.detail = o.pass ? "6 nodes, 8 arrows, orders (1,1;2,2,2,2;1,1)" : o.detail;
  return o;
}

// Elements of U(n)^2 as coordinate maps.
using Pair = std::map<std::pair<int, Monomial>, Rational>;

Pair pair_of(const UEAElement& a, const UEAElement& b) {
  Pair p;
  for (const auto& [m, c] : a.terms()) p[{0, m}] = c;
  for (const auto& [m, c] : b.terms()) p[{1, m}] = c;
  return p;
}

std::size_t span_rank(const std::vector<Pair>& vs) {
  std::map<std::pair<int, Monomial>, std::size_t> index;
  for (const Pair& v : vs)
    for (const auto& [k, c] : v) index.emplace(k, index.size());
  if (vs.empty() || index.empty()) return 0;
  Matrix m(vs.size(), index.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (const auto& [k, c] : vs[i]) m(i, index.at(k)) = c;
  return linalg::rank(m);
}

Outcome criterion_2() {
  Outcome o;
  A2Symbols s;
  const verma::BGGResolution res = verma::build_bgg_resolution(s.sc, s.rs.from_fundamental(IntVector{0, 0}));
  const auto& elems = res.hasse.elements;

  // Length-1 maps are c * X or c * Y; record which and the scalar.
  std::map<std::size_t, std::pair<int, Rational>> against;  // node -> (component, c)
  for (const auto& a : res.arrows) {
    if (elems[a.source].length() != 1) continue;
    const UEAElement m = a.map_element();
    for (int comp = 0; comp < 2; ++comp) {
      const UEAElement& g = comp == 0 ? s.X : s.Y;
      const Rational c = m.leading_term().second;
      if (m == c * g) against[a.source] = {comp, c};
    }
  }
  expect(o, against.size() == 2, "length-1 maps are not multiples of X and Y");
  if (!o.pass) return o;

  std::map<std::size_t, std::pair<UEAElement, UEAElement>> relations;
  for (const auto& a : res.arrows) {
    if (elems[a.source].length() != 2) continue;
    auto& rel = relations.try_emplace(a.source, UEAElement(s.n.dim()), UEAElement(s.n.dim())).first->second;
    const auto& [comp, c] = against.at(a.target);
    (comp == 0 ? rel.first : rel.second) = c * a.map_element();
  }
  expect(o, relations.size() == 2, "expected two elements of length 2");

  std::vector<Pair> ours, theirs;
  for (const auto& [w, rel] : relations) {
    expect(o, (s({rel.first, s.X}) + s({rel.second, s.Y})).is_zero(), "a relation vector does not compose to zero");
    ours.push_back(pair_of(rel.first, rel.second));
  }
  const UEAElement r1a = -s({s.X, s.Y}) - s.Z, r1b = s({s.X, s.X});
  const UEAElement r2a = -s({s.Y, s.Y}), r2b = s({s.Y, s.X}) - s.Z;
  expect(o, (s({r1a, s.X}) + s({r1b, s.Y})).is_zero() && (s({r2a, s.X}) + s({r2b, s.Y})).is_zero(),
         "reference vectors are not relations");
  theirs = {pair_of(r1a, r1b), pair_of(r2a, r2b)};
  std::vector<Pair> both = ours;
  both.insert(both.end(), theirs.begin(), theirs.end());
  expect(o, span_rank(ours) == 2 && span_rank(theirs) == 2 && span_rank(both) == 2, "spans differ");

  // They generate the whole kernel of (a, b) -> aX + bY as a left module, checked per weight to height 6.
  chevalley::PBWAlgebra alg(s.n);
  std::size_t checked = 0;
  for (const IntVector& d : verma::depths_up_to(2, 6)) {
    std::vector<Pair> domain_basis;
    std::vector<UEAElement> images;
    for (int comp = 0; comp < 2; ++comp) {
      IntVector e = d;
      e[comp] -= 1;
      if (e[comp] < 0) continue;
      for (const Monomial& m : verma::pbw_monomials(s.n, e)) {
        const UEAElement u = UEAElement::monomial(m);
        images.push_back(alg.multiply(u, comp == 0 ? s.X : s.Y));
        domain_basis.push_back(comp == 0 ? pair_of(u, UEAElement(s.n.dim())) : pair_of(UEAElement(s.n.dim()), u));
      }
    }
    std::vector<Pair> image_pairs;
    for (const UEAElement& u : images) image_pairs.push_back(pair_of(u, UEAElement(s.n.dim())));
    const std::size_t kernel_dim = domain_basis.size() - span_rank(image_pairs);
    std::vector<Pair> generated;
    for (const auto& [w, rel] : relations) {
      // Depth of the composite a X + b Y; weight() is -(depth) on n.
      const int comp = rel.first.is_zero() ? 1 : 0;
      const IntVector w_part = *(comp == 0 ? rel.first : rel.second).weight(s.n);
      IntVector e = d;
      bool ok = true;
      for (int i = 0; i < 2; ++i) {
        e[i] = d[i] - (-w_part[i] + (i == comp ? 1 : 0));
        ok = ok && e[i] >= 0;
      }
      if (!ok) continue;
      for (const Monomial& m : verma::pbw_monomials(s.n, e)) {
        const UEAElement u = UEAElement::monomial(m);
        const UEAElement a = alg.multiply(u, rel.first), b = alg.multiply(u, rel.second);
        expect(o, (alg.multiply(a, s.X) + alg.multiply(b, s.Y)).is_zero(), "generated vector leaves the kernel");
        generated.push_back(pair_of(a, b));
      }
    }
    expect(o, span_rank(generated) == kernel_dim, "kernel not generated at a weight of height " +
                                                      std::to_string(d[0] + d[1]));
    ++checked;
  }
  if (o.pass) o.detail = "rank 2, equal spans; generate the kernel on " + std::to_string(checked) + " weights";
  return o;
}

Outcome criterion_3() {
  Outcome o;
  const auto cases = app::parse_grid("kostant", "default", Bounds{});
  expect(o, cases.size() == 330, "grid has " + std::to_string(cases.size()) + " cases");
  std::map<std::string, std::pair<RootSystem, chevalley::StructureConstants>> cache;
  for (const auto& g : cases) {
    auto it = cache.find(g.type.str());
    if (it == cache.end()) {
      RootSystem rs = rootcore::build_root_system(g.type);
      auto sc = chevalley::chevalley_constants(rs);
      it = cache.emplace(g.type.str(), std::make_pair(std::move(rs), std::move(sc))).first;
    }
    const auto& [rs, sc] = it->second;
    const ParabolicSubset p = parabolic(rs, g.crossed);
    const auto lambda = rs.from_fundamental(g.hw);
    const auto ce = kostant::ce_complex(sc, p, lambda);
    const auto pred = kostant::kostant_prediction(rs, p, lambda);
    expect(o, static_cast<int>(pred.size()) == ce.top_degree() + 1, g.id() + ": degree count");
    if (!o.pass) break;
    std::size_t components = 0;
    for (int k = 0; k <= ce.top_degree(); ++k) {
      const auto h = kostant::cohomology(ce, k);
      const auto& q = pred[static_cast<std::size_t>(k)];
      expect(o, h == q, g.id() + ": H^" + std::to_string(k) + " differs from the prediction");
      expect(o, kostant::cohomology_dim(ce, k) == q.dim, g.id() + ": rank count differs in degree " + std::to_string(k));
      for (const auto& c : h.components) expect(o, c.multiplicity == 1, g.id() + ": multiplicity above one");
      components += q.components.size();
    }
    expect(o, components == rootcore::hasse_diagram(rs, p).elements.size(), g.id() + ": not one component per W^p");
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " cases, brute force == prediction, multiplicity 1";
  return o;
}

Outcome criterion_4() {
  Outcome o;
  const std::vector<std::pair<const char*, IntVector>> cases = {
      {"A2", {0, 0}}, {"A2", {1, 0}}, {"A2", {1, 1}}, {"A1", {0}}, {"A1", {1}}};
  std::size_t entries = 0;
  for (const auto& [type, hw] : cases) {
    const RootSystem rs = system_of(type);
    const auto sc = chevalley::chevalley_constants(rs);
    const auto res = verma::build_bgg_resolution(sc, rs.from_fundamental(hw));
    const auto rep = verma::verify_resolution(sc, res, verma::default_cutoff(res));
    expect(o, rep.composition_failures.empty(), std::string(type) + ": composition is not zero");
    expect(o, !rep.entries.empty(), std::string(type) + ": nothing checked");
    for (const auto& e : rep.entries) expect(o, e.defect == 0, std::string(type) + ": nonzero defect");
    entries += rep.entries.size();
  }
  if (o.pass) o.detail = "5 resolutions, " + std::to_string(entries) + " weight spaces, zero defects";
  return o;
}

Outcome criterion_5() {
  Outcome o;
  const auto cases = app::parse_grid("character", "default", Bounds{});
  std::size_t checked = 0;
  for (const auto& g : cases) {
    const RootSystem rs = rootcore::build_root_system(g.type);
    const auto r = verma::character_identity(rs, rs.from_fundamental(g.hw), 10);
    expect(o, r.holds && r.defects.empty() && r.checked > 0, g.id() + ": character identity fails");
    checked += r.checked;
  }
  if (o.pass)
    o.detail = std::to_string(cases.size()) + " weights, " + std::to_string(checked) + " multiplicities to height 10";
  return o;
}

Outcome criterion_6() {
  Outcome o;
  const auto cases = app::parse_grid("hodge", "default", Bounds{});
  std::map<std::string, std::pair<RootSystem, chevalley::StructureConstants>> cache;
  for (const auto& g : cases) {
    auto it = cache.find(g.type.str());
    if (it == cache.end()) {
      RootSystem rs = rootcore::build_root_system(g.type);
      auto sc = chevalley::chevalley_constants(rs);
      it = cache.emplace(g.type.str(), std::make_pair(std::move(rs), std::move(sc))).first;
    }
    const auto& [rs, sc] = it->second;
    const auto ce = kostant::ce_complex(sc, parabolic(rs, g.crossed), rs.from_fundamental(g.hw));
    std::size_t previous_coexact = 0;
    for (int k = 0; k <= ce.top_degree(); ++k) {
      const auto h = kostant::hodge_decomposition(ce, k);
      const std::string at = g.id() + " degree " + std::to_string(k);
      expect(o, h.harmonic + h.exact + h.coexact == h.dim, at + ": dimensions do not add up");
      expect(o, h.harmonic == kostant::cohomology_dim(ce, k), at + ": dim ker laplacian != dim H");
      // im d_{k-1} and im d_{k-1}^* both have dimension rank d_{k-1}.
      expect(o, h.exact == previous_coexact, at + ": exact and coexact ranks disagree");
      previous_coexact = h.coexact;
    }
    expect(o, previous_coexact == 0, g.id() + ": coexact part in the top degree");
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " cases, dim ker laplacian == dim H^k";
  return o;
}

Outcome criterion_7() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::size_t maps = 0;
  for (int t = 0; t < 500 && o.pass; ++t) {
    const splitkit::FiniteComplex c = splitkit::random_exact_complex(rng, 6, 40);
    const std::size_t n = c.length();
    bool exact = true;
    for (std::size_t h : splitkit::homology_dims(c)) exact = exact && h == 0;
    expect(o, exact && n <= 6, "generated complex is not exact or too long");
    for (std::size_t d : c.dims) expect(o, d <= 40, "dimension above 40");
    const splitkit::Splitting s = splitkit::split_exact_complex(c);
    expect(o, s.maps.size() == n, "wrong number of maps");
    if (!o.pass) break;
    const auto& d = c.differentials;
    for (std::size_t j = 0; j <= n; ++j) {
      Matrix h(c.dims[j], c.dims[j]);
      if (j < n) h = h + s.maps[j] * d[j];
      if (j > 0) h = h + d[j - 1] * s.maps[j - 1];
      expect(o, (h - Matrix::identity(c.dims[j])).is_zero(), "b d + d b != 1");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j + 1 < n) expect(o, (s.maps[j] * s.maps[j + 1]).is_zero(), "b b != 0");
      const Matrix p = d[j] * s.maps[j];
      expect(o, (p * p - p).is_zero(), "d b is not idempotent");
    }
    maps += n;
  }
  if (o.pass) o.detail = "500 complexes, " + std::to_string(maps) + " maps, all identities exact";
  return o;
}

Outcome criterion_8() {
  Outcome o;
  using splitkit::VerdictValue;
  const auto verdict = [](const char* type, std::optional<IntVector> crossed) {
    const RootSystem rs = system_of(type);
    return splitkit::splitting_verdict(rs, parabolic(rs, crossed)).value;
  };
  expect(o, verdict("A1", std::nullopt) == VerdictValue::Exists, "(A1, Borel)");
  expect(o, verdict("A2", std::nullopt) == VerdictValue::NotExists, "(A2, Borel)");
  expect(o, verdict("A2", IntVector{1}) == VerdictValue::Unknown, "(A2, {1})");
  expect(o, verdict("A2", IntVector{2}) == VerdictValue::Unknown, "(A2, {2})");
  expect(o, verdict("A3", std::nullopt) == VerdictValue::NotExists, "(A3, Borel)");
  if (o.pass) o.detail = "Exists, NotExists, Unknown, NotExists";
  return o;
}

Outcome criterion_9() {
  Outcome o;
  const RootSystem rs = system_of("A2");
  const auto a = kostant::euler_index(rs, ParabolicSubset::borel(rs), rs.from_fundamental(IntVector{0, 0}));
  expect(o, a.chi == 6 && a.index == 6 && a.alt_rank_sum == 0, "(A2, Borel, 0)");
  const auto b = kostant::euler_index(rs, ParabolicSubset::from_crossed(rs, IntVector{1}), rs.from_fundamental(IntVector{1, 0}));
  expect(o, b.chi == 3 && b.index == 9, "(A2, {1}, w1)");
  if (o.pass) o.detail = "chi 6 / index 6 / alt 0; chi 3 / index 9";
  return o;
}

Outcome criterion_10() {
  Outcome o;
  const RootSystem rs = system_of("A2");
  expect(o, !chevalley::chevalley_constants(rs).first_jacobi_failure(), "clean table fails Jacobi");
  expect(o, app::constants_for(rs, {{0, 1, 2}}).first_jacobi_failure().has_value(), "corruption not detected");
  const auto run = [](std::vector<std::string> args) { return app::run(*app::parse_arguments(args).spec); };
  expect(o, run({"verify", "jacobi", "--grid", "A2"}).status == 0, "clean control run fails");
  const app::RunResult j = run({"verify", "jacobi", "--grid", "A2", "--corrupt-constant", "0,1,2"});
  expect(o, j.status == app::exit_code::consistency && j.output.find("Jacobi identity fails") != std::string::npos,
         "corrupted jacobi run exit " + std::to_string(j.status));
  const app::RunResult k = run({"verify", "kostant", "--grid", "A2:borel:0,0", "--corrupt-constant", "0,1,2"});
  expect(o, k.status == app::exit_code::consistency, "corrupted kostant run exit " + std::to_string(k.status));
  if (o.pass) o.detail = "Jacobi failure reported, exit 4";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit_s;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, 5, criterion_1},    {2, 5, criterion_2},  {3, 600, criterion_3}, {4, 120, criterion_4},
      {5, 60, criterion_5},   {6, 300, criterion_6}, {7, 60, criterion_7},  {8, 1, criterion_8},
      {9, 1, criterion_9},    {10, 60, criterion_10}};
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail += " (over time limit)";
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2d: %s  %8.2f s / %g s  %s\n", c.id, o.pass ? "PASS" : "FAIL", secs, c.limit_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
