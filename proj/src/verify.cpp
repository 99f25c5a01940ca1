#include "bgg/verify.hpp"

#include <map>
#include <random>
#include <sstream>

#include "bgg/errors.hpp"
#include "bgg/kostant.hpp"
#include "bgg/repkit.hpp"
#include "bgg/splitkit.hpp"
#include "bgg/verma.hpp"

namespace bgg::app {

using rootcore::IntVector;
using rootcore::ParabolicSubset;
using rootcore::RootSystem;
using rootcore::TypeLabel;

namespace {

constexpr std::uint64_t kSplittingSeed = 20261014;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

IntVector parse_ints(const std::string& s) {
  IntVector out;
  if (s.empty()) return out;
  for (const std::string& part : split(s, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: '" + s + "'");
    }
  }
  return out;
}

ParabolicSubset parabolic(const RootSystem& rs, const std::optional<IntVector>& crossed) {
  return crossed ? ParabolicSubset::from_crossed(rs, *crossed) : ParabolicSubset::borel(rs);
}

// Every parabolic (crossed = nullopt for the Borel) and every lambda with
// coordinates <= max_coord and dim V(lambda) <= max_dim.
void add_full_grid(std::vector<GridCase>& out, const TypeLabel& t, int max_coord, bool all_parabolics,
                   std::uint64_t max_dim) {
  const RootSystem rs = rootcore::build_root_system(t);
  const int r = rs.rank();
  std::vector<std::optional<IntVector>> parabolics;
  if (all_parabolics) {
    for (int mask = 0; mask < (1 << r); ++mask) {
      IntVector crossed;
      for (int i = 0; i < r; ++i)
        if (mask >> i & 1) crossed.push_back(i + 1);
      if (static_cast<int>(crossed.size()) == r)
        parabolics.push_back(std::nullopt);
      else
        parabolics.push_back(crossed);
    }
  } else {
    parabolics.push_back(std::nullopt);
  }
  int total = 1;
  for (int i = 0; i < r; ++i) total *= max_coord + 1;
  for (const auto& p : parabolics) {
    for (int code = 0; code < total; ++code) {
      IntVector hw;
      for (int i = 0, c = code; i < r; ++i, c /= max_coord + 1) hw.push_back(c % (max_coord + 1));
      if (repkit::weyl_dimension(rs, rs.from_fundamental(hw)) > max_dim) continue;
      out.push_back({t, p, hw});
    }
  }
}

std::vector<GridCase> explicit_grid(const std::string& grid) {
  std::vector<GridCase> out;
  for (const std::string& item : split(grid, ';')) {
    if (item.empty()) continue;
    const auto parts = split(item, ':');
    if (parts.empty() || parts.size() > 3) throw UsageError("grid case '" + item + "' is not TYPE[:PARABOLIC[:HW]]");
    GridCase c;
    c.type = TypeLabel::parse(parts[0]);
    const RootSystem rs = rootcore::build_root_system(c.type);
    const std::string p = parts.size() > 1 ? parts[1] : "borel";
    if (p == "borel" || p.empty())
      c.crossed = std::nullopt;
    else if (p == "none")
      c.crossed = IntVector{};
    else
      c.crossed = parse_ints(p);
    if (c.crossed) ParabolicSubset::from_crossed(rs, *c.crossed);  // validates indices
    c.hw = parts.size() > 2 ? parse_ints(parts[2]) : IntVector(rs.rank(), 0);
    if (static_cast<int>(c.hw.size()) != rs.rank()) throw UsageError("grid case '" + item + "': wrong weight length");
    out.push_back(c);
  }
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

std::string components_str(const RootSystem& rs, const kostant::LeviDecomposition& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    const auto& c = d.components[i];
    s += (i ? ", " : "") + c.highest_weight.str();
    if (c.multiplicity != 1) s += " x" + std::to_string(c.multiplicity);
  }
  (void)rs;
  return s + "}";
}

struct TypeCache {
  std::map<std::string, RootSystem> systems;
  std::map<std::string, chevalley::StructureConstants> constants;
  std::map<std::string, std::string> jacobi;  // type -> failure text ("" when it holds)
};

void kostant_case(const RootSystem& rs, const chevalley::StructureConstants& sc, const GridCase& g, const Bounds& b,
                  CaseReport& rep) {
  const ParabolicSubset p = parabolic(rs, g.crossed);
  const auto lambda = rs.from_fundamental(g.hw);
  const kostant::CEComplex ce = kostant::ce_complex(sc, p, lambda, b);
  const auto pred = kostant::kostant_prediction(rs, p, lambda, b);
  if (static_cast<int>(pred.size()) != ce.top_degree() + 1) {
    rep.defects.push_back("prediction has the wrong number of degrees");
    return;
  }
  for (int k = 0; k <= ce.top_degree(); ++k) {
    const auto h = kostant::cohomology(ce, k);
    for (const auto& c : h.components)
      if (c.multiplicity != 1)
        rep.defects.push_back("H^" + std::to_string(k) + ": multiplicity " + std::to_string(c.multiplicity) + " at " +
                              c.highest_weight.str());
    if (!(h == pred[static_cast<std::size_t>(k)]))
      rep.defects.push_back("H^" + std::to_string(k) + ": brute force " + components_str(rs, h) + " != prediction " +
                            components_str(rs, pred[static_cast<std::size_t>(k)]));
  }
}

void hodge_case(const RootSystem& rs, const chevalley::StructureConstants& sc, const GridCase& g, const Bounds& b,
                CaseReport& rep) {
  const ParabolicSubset p = parabolic(rs, g.crossed);
  const kostant::CEComplex ce = kostant::ce_complex(sc, p, rs.from_fundamental(g.hw), b);
  for (int k = 0; k <= ce.top_degree(); ++k) {
    const auto h = kostant::hodge_decomposition(ce, k);
    const std::uint64_t hk = kostant::cohomology_dim(ce, k);
    if (h.harmonic + h.exact + h.coexact != h.dim)
      rep.defects.push_back("degree " + std::to_string(k) + ": dimensions do not add up");
    if (h.harmonic != hk)
      rep.defects.push_back("degree " + std::to_string(k) + ": dim ker laplacian " + std::to_string(h.harmonic) +
                            " != dim H " + std::to_string(hk));
  }
}

void resolution_case(const RootSystem& rs, const chevalley::StructureConstants& sc, const GridCase& g, const Bounds& b,
                     CaseReport& rep) {
  if (g.crossed) throw UsageError("resolution cases must use the Borel");
  const verma::BGGResolution res = verma::build_bgg_resolution(sc, rs.from_fundamental(g.hw), b);
  const verma::ExactnessReport r = verma::verify_resolution(sc, res, verma::default_cutoff(res));
  for (const std::string& f : r.composition_failures) rep.defects.push_back(f);
  for (const auto& e : r.entries)
    if (e.defect != 0)
      rep.defects.push_back("degree " + std::to_string(e.degree) + " at " + e.mu.str() + ": defect " +
                            std::to_string(e.defect));
}

void character_case(const RootSystem& rs, const GridCase& g, const Bounds& b, CaseReport& rep) {
  const auto r = verma::character_identity(rs, rs.from_fundamental(g.hw), 10, b);
  for (const auto& d : r.defects)
    rep.defects.push_back("at " + d.mu.str() + ": " + std::to_string(d.lhs) + " != " + std::to_string(d.rhs));
  if (!r.holds && rep.defects.empty()) rep.defects.push_back("character identity fails");
}

std::size_t splitting_count(const std::string& grid) {
  if (grid == "default") return 500;
  if (grid == "small") return 50;
  const IntVector n = parse_ints(grid);
  if (n.size() != 1 || n[0] <= 0) throw UsageError("splitting grid is 'default', 'small' or a positive count");
  return static_cast<std::size_t>(n[0]);
}

}  // namespace

std::string GridCase::id() const {
  std::string s = type.str() + " ";
  if (!crossed)
    s += "borel";
  else if (crossed->empty())
    s += "none";
  else
    for (std::size_t i = 0; i < crossed->size(); ++i) s += (i ? "," : "") + std::to_string((*crossed)[i]);
  s += " (";
  for (std::size_t i = 0; i < hw.size(); ++i) s += (i ? "," : "") + std::to_string(hw[i]);
  return s + ")";
}

std::vector<GridCase> parse_grid(const std::string& suite, const std::string& grid, const Bounds& bounds) {
  std::vector<GridCase> out;
  const std::uint64_t max_dim = bounds.irrep_dim;
  const auto t = [](const char* s) { return TypeLabel::parse(s); };
  if (suite == "kostant" || suite == "hodge") {
    if (grid == "default") {
      for (const char* s : {"A1", "A2", "A3", "B2", "G2"}) add_full_grid(out, t(s), 2, true, max_dim);
    } else if (grid == "small") {
      for (const char* s : {"A1", "A2", "B2"}) add_full_grid(out, t(s), 1, true, max_dim);
      add_full_grid(out, t("A3"), 0, true, max_dim);
      add_full_grid(out, t("G2"), 0, true, max_dim);
    } else {
      out = explicit_grid(grid);
    }
  } else if (suite == "resolution") {
    if (grid == "default" || grid == "small") {
      out.push_back({t("A2"), std::nullopt, {0, 0}});
      out.push_back({t("A1"), std::nullopt, {0}});
      if (grid == "default") {
        out.push_back({t("A2"), std::nullopt, {1, 0}});
        out.push_back({t("A2"), std::nullopt, {1, 1}});
        out.push_back({t("A1"), std::nullopt, {1}});
      }
    } else {
      out = explicit_grid(grid);
    }
  } else if (suite == "character") {
    if (grid == "default") {
      for (const char* s : {"A1", "A2", "B2"}) add_full_grid(out, t(s), 2, false, max_dim);
    } else if (grid == "small") {
      for (const char* s : {"A1", "A2"}) add_full_grid(out, t(s), 1, false, max_dim);
    } else {
      out = explicit_grid(grid);
    }
  } else if (suite == "jacobi") {
    if (grid == "default") {
      for (const char* s : {"A1", "A2", "A3", "B2", "G2"}) out.push_back({t(s), std::nullopt, {}});
    } else if (grid == "small") {
      out.push_back({t("A2"), std::nullopt, {}});
    } else {
      out = explicit_grid(grid);
    }
  } else if (suite == "splitting") {
    splitting_count(grid);
  } else {
    throw UsageError("unknown verify suite '" + suite +
                     "' (expected kostant, hodge, resolution, character, splitting or jacobi)");
  }
  return out;
}

chevalley::StructureConstants constants_for(const RootSystem& rs, const std::vector<Corruption>& corruptions) {
  chevalley::StructureConstants sc = chevalley::chevalley_constants(rs);
  const std::size_t n = rs.roots().size();
  for (const Corruption& c : corruptions) {
    if (c.a >= n || c.b >= n || c.a == c.b)
      throw UsageError("corruption indices must be distinct roots below " + std::to_string(n));
    sc.set_constant(c.a, c.b, c.value);
    sc.set_constant(c.b, c.a, -c.value);
  }
  return sc;
}

std::size_t VerifyReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.pass ? 0 : 1;
  return n;
}

std::string VerifyReport::summary() const {
  const std::size_t n = cases.size();
  if (failures() > 0) {
    std::string s = std::to_string(failures()) + " of " + std::to_string(n) + " cases failed";
    if (jacobi_failure) s += " (Jacobi identity failure)";
    return s;
  }
  const std::string all = "all " + std::to_string(n) + " cases: ";
  if (suite == "kostant") return all + "brute force == prediction";
  if (suite == "hodge") return all + "ker laplacian + im d + im codiff direct, dim ker laplacian == dim H";
  if (suite == "resolution") return all + "exact in degrees >= 1, degree 0 homology == V(lambda)";
  if (suite == "character") return all + "character identity holds to height 10";
  if (suite == "splitting") return all + "b d + d b = 1, b b = 0, d b idempotent";
  return all + "Jacobi identity holds";
}

VerifyReport verify_suite(const std::string& suite, const std::string& grid, const Bounds& bounds,
                          const std::vector<Corruption>& corruptions) {
  VerifyReport report;
  report.suite = suite;
  report.grid = grid;
  const std::vector<GridCase> cases = parse_grid(suite, grid, bounds);

  if (suite == "splitting") {
    std::mt19937_64 rng(kSplittingSeed);
    const std::size_t count = splitting_count(grid);
    for (std::size_t i = 0; i < count; ++i) {
      CaseReport rep;
      rep.id = "complex " + std::to_string(i);
      const splitkit::FiniteComplex c = splitkit::random_exact_complex(rng, 6, 40);
      try {
        rep.defects = splitkit::splitting_defects(c, splitkit::split_exact_complex(c));
      } catch (const ConsistencyError& e) {
        rep.defects.push_back(e.what());
      }
      rep.pass = rep.defects.empty();
      report.cases.push_back(std::move(rep));
    }
    return report;
  }

  TypeCache cache;
  for (const GridCase& g : cases) {
    const std::string key = g.type.str();
    if (!cache.systems.count(key)) {
      RootSystem rs = rootcore::build_root_system(g.type);
      chevalley::StructureConstants sc = constants_for(rs, corruptions);
      std::string failure;
      if (auto t = sc.first_jacobi_failure())
        failure = "Jacobi identity fails on " + sc.basis_name(t->x) + ", " + sc.basis_name(t->y) + ", " +
                  sc.basis_name(t->z);
      cache.systems.emplace(key, std::move(rs));
      cache.constants.emplace(key, std::move(sc));
      cache.jacobi.emplace(key, failure);
    }
    CaseReport rep;
    rep.id = suite == "jacobi" ? key : g.id();
    const std::string& jac = cache.jacobi.at(key);
    if (!jac.empty()) {
      // Nothing built on a broken table is meaningful.
      rep.defects.push_back(jac);
      report.jacobi_failure = true;
    } else if (suite != "jacobi") {
      const RootSystem& rs = cache.systems.at(key);
      const chevalley::StructureConstants& sc = cache.constants.at(key);
      try {
        if (suite == "kostant") kostant_case(rs, sc, g, bounds, rep);
        if (suite == "hodge") hodge_case(rs, sc, g, bounds, rep);
        if (suite == "resolution") resolution_case(rs, sc, g, bounds, rep);
        if (suite == "character") character_case(rs, g, bounds, rep);
      } catch (const ConsistencyError& e) {
        rep.defects.push_back(e.what());
      }
    }
    rep.pass = rep.defects.empty();
    report.cases.push_back(std::move(rep));
  }
  return report;
}

nlohmann::ordered_json to_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["grid"] = report.grid;
  j["passed"] = report.cases.size() - report.failures();
  j["failed"] = report.failures();
  j["jacobi_failure"] = report.jacobi_failure;
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const auto& c : report.cases) cases.push_back({{"id", c.id}, {"pass", c.pass}, {"defects", c.defects}});
  j["cases"] = cases;
  j["summary"] = report.summary();
  return j;
}

std::string to_text(const VerifyReport& report) {
  std::ostringstream os;
  for (const auto& c : report.cases) {
    os << (c.pass ? "pass " : "FAIL ") << c.id << "\n";
    for (const auto& d : c.defects) os << "    " << d << "\n";
  }
  os << report.summary() << "\n";
  return os.str();
}

}  // namespace bgg::app
