#include "bgg/app.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bgg/chevalley.hpp"
#include "bgg/document.hpp"
#include "bgg/errors.hpp"
#include "bgg/kostant.hpp"
#include "bgg/repkit.hpp"
#include "bgg/splitkit.hpp"
#include "bgg/verify.hpp"
#include "bgg/verma.hpp"

namespace bgg::app {

using nlohmann::ordered_json;
using rootcore::IntVector;
using rootcore::ParabolicSubset;
using rootcore::RootSystem;
using rootcore::Weight;

namespace {

const std::vector<std::pair<Command, std::string>> kCommands = {
    {Command::Roots, "roots"},           {Command::Hasse, "hasse"},     {Command::Grading, "grading"},
    {Command::Irrep, "irrep"},           {Command::Resolution, "resolution"}, {Command::Kostant, "kostant"},
    {Command::Bgg, "bgg"},               {Command::Verdict, "verdict"}, {Command::Index, "index"},
    {Command::Verify, "verify"}};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::size_t parse_bound(const std::string& value, const std::string& source) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used == value.size() && v > 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw UsageError(source + ": bound must be a positive integer, got '" + value + "'");
}

IntVector parse_int_list(const std::string& s, const std::string& what) {
  IntVector out;
  if (trim(s).empty()) return out;
  std::istringstream is(s);
  std::string part;
  while (std::getline(is, part, ',')) {
    part = trim(part);
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(what + " must be a comma-separated integer list, got '" + s + "'");
    }
  }
  return out;
}

std::optional<IntVector> parse_crossed(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty() || t == "borel" || t == "all") return std::nullopt;
  if (t == "none") return IntVector{};
  return parse_int_list(t, "--crossed");
}

std::string ints_str(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

ordered_json weight_json(const Weight& w) {
  ordered_json a = ordered_json::array();
  for (const Rational& q : w.coords()) a.push_back(rational_to_json(q));
  return a;
}

// Everything a command needs about the type and parabolic of a job.
struct Context {
  RootSystem rs;
  ParabolicSubset p;
  Weight lambda;
  IntVector hw;
  Bounds bounds;
};

Context make_context(const JobSpec& spec) {
  if (spec.type.empty()) throw UsageError("missing Lie type (e.g. A2)");
  Context c{rootcore::build_root_system(rootcore::TypeLabel::parse(spec.type)), {}, {}, spec.hw, effective_bounds(spec)};
  c.p = spec.crossed ? ParabolicSubset::from_crossed(c.rs, *spec.crossed) : ParabolicSubset::borel(c.rs);
  if (c.hw.empty()) c.hw.assign(static_cast<std::size_t>(c.rs.rank()), 0);
  if (static_cast<int>(c.hw.size()) != c.rs.rank())
    throw UsageError("--hw needs " + std::to_string(c.rs.rank()) + " fundamental coordinates");
  for (int x : c.hw)
    if (x < 0) throw UsageError("--hw must be dominant (non-negative coordinates)");
  c.lambda = c.rs.from_fundamental(c.hw);
  return c;
}

void require_format(const JobSpec& spec, bool dot_allowed) {
  if (spec.format == Format::Dot && !dot_allowed)
    throw UsageError("--format dot is only available for bgg and hasse");
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

RunResult roots_cmd(const JobSpec& spec) {
  require_format(spec, false);
  const Context c = make_context(spec);
  const RootSystem& rs = c.rs;
  if (spec.format == Format::Json) {
    ordered_json roots = ordered_json::array();
    for (std::size_t i = 0; i < rs.positive_roots().size(); ++i) {
      const auto& r = rs.positive_roots()[i];
      int h = 0;
      for (int x : r) h += x;
      roots.push_back({{"index", i}, {"coords", r}, {"height", h}});
    }
    ordered_json j = {{"type", rs.label().str()},
                      {"rank", rs.rank()},
                      {"weyl_order", rs.weyl_group_order()},
                      {"cartan_matrix", rs.cartan_matrix()},
                      {"positive_roots", roots}};
    return {0, dump(j), ""};
  }
  std::ostringstream os;
  os << rs.label().str() << ": rank " << rs.rank() << ", |W| = " << rs.weyl_group_order() << ", "
     << rs.num_positive() << " positive roots\n";
  os << "Cartan matrix:\n";
  for (const auto& row : rs.cartan_matrix()) {
    os << " ";
    for (int x : row) os << " " << (x >= 0 ? " " : "") << x;
    os << "\n";
  }
  os << "positive roots (simple-root coordinates):\n";
  for (std::size_t i = 0; i < rs.positive_roots().size(); ++i) {
    const auto& r = rs.positive_roots()[i];
    int h = 0;
    for (int x : r) h += x;
    os << "  [" << i << "] " << ints_str(r) << "  height " << h << "\n";
  }
  return {0, os.str(), ""};
}

RunResult hasse_cmd(const JobSpec& spec) {
  require_format(spec, true);
  const Context c = make_context(spec);
  const auto h = rootcore::hasse_diagram(c.rs, c.p, c.bounds);
  if (spec.format == Format::Json) {
    ordered_json elems = ordered_json::array();
    for (std::size_t i = 0; i < h.elements.size(); ++i)
      elems.push_back({{"id", i}, {"weyl_word", h.elements[i].str()}, {"length", h.elements[i].length()}});
    ordered_json edges = ordered_json::array();
    for (const auto& [u, w] : h.edges) edges.push_back({u, w});
    ordered_json j = {{"type", c.rs.label().str()},
                      {"crossed", c.p.str()},
                      {"elements", elems},
                      {"edges", edges},
                      {"length_profile", h.length_profile}};
    return {0, dump(j), ""};
  }
  std::ostringstream os;
  if (spec.format == Format::Dot) {
    os << "digraph hasse {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < h.elements.size(); ++i)
      os << "  n" << i << " [label=\"" << h.elements[i].str() << "\"];\n";
    for (const auto& [u, w] : h.edges) os << "  n" << u << " -> n" << w << ";\n";
    os << "}\n";
    return {0, os.str(), ""};
  }
  os << "W^p for " << c.rs.label().str() << ", crossed " << c.p.str() << ": " << h.elements.size() << " elements\n";
  for (std::size_t i = 0; i < h.elements.size(); ++i)
    os << "  [" << i << "] " << h.elements[i].str() << "  length " << h.elements[i].length() << "\n";
  os << "covering relations:\n";
  for (const auto& [u, w] : h.edges) os << "  [" << u << "] < [" << w << "]\n";
  return {0, os.str(), ""};
}

RunResult grading_cmd(const JobSpec& spec) {
  require_format(spec, false);
  const Context c = make_context(spec);
  const auto g = rootcore::parabolic_grading(c.rs, c.p);
  const auto sc = chevalley::chevalley_constants(c.rs);
  const auto n = chevalley::build_nilpotent(sc, c.p, chevalley::Side::Minus);
  if (spec.format == Format::Json) {
    ordered_json comps = ordered_json::array();
    for (const auto& [j, roots] : g.components) comps.push_back({{"grade", j}, {"dim", g.dim(j)}, {"roots", roots}});
    ordered_json j = {{"type", c.rs.label().str()},
                      {"crossed", c.p.str()},
                      {"depth", g.depth},
                      {"rank_ap", g.rank_ap},
                      {"nilradical_dim", n.dim()},
                      {"nilpotency_step", n.nilpotency_step()},
                      {"components", comps}};
    return {0, dump(j), ""};
  }
  std::ostringstream os;
  os << "|" << g.depth << "|-grading of " << c.rs.label().str() << " by crossed " << c.p.str()
     << ", rank A_P = " << g.rank_ap << "\n";
  for (const auto& [j, roots] : g.components) {
    os << "  g_" << j << ": dim " << g.dim(j) << "  roots";
    for (const auto& r : roots) os << " " << ints_str(r);
    os << "\n";
  }
  os << "nilradical: dim " << n.dim() << ", step " << n.nilpotency_step() << "\n";
  return {0, os.str(), ""};
}

RunResult irrep_cmd(const JobSpec& spec) {
  require_format(spec, false);
  const Context c = make_context(spec);
  const auto ch = repkit::freudenthal_character(c.rs, c.lambda, c.bounds);
  const std::uint64_t dim = repkit::weyl_dimension(c.rs, c.lambda);
  if (ch.total_dim() != dim) throw ConsistencyError("Freudenthal character disagrees with the Weyl dimension");
  // Highest weight first: sort by depth height, then weight.
  std::vector<std::pair<Weight, std::uint64_t>> rows(ch.multiplicities.begin(), ch.multiplicities.end());
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    const Rational ha = (c.lambda - a.first).height(), hb = (c.lambda - b.first).height();
    if (ha != hb) return ha < hb;
    return b.first < a.first;
  });
  if (spec.format == Format::Json) {
    ordered_json ws = ordered_json::array();
    for (const auto& [w, m] : rows)
      ws.push_back({{"weight_fundamental_coords", c.rs.integral_fundamental(w)},
                    {"weight_simple_coords", weight_json(w)},
                    {"multiplicity", m}});
    ordered_json j = {{"type", c.rs.label().str()}, {"lambda", c.hw}, {"dim", dim}, {"weights", ws}};
    return {0, dump(j), ""};
  }
  std::ostringstream os;
  os << "V" << ints_str(c.hw) << " of " << c.rs.label().str() << ": dim " << dim << ", " << rows.size()
     << " weights\n";
  for (const auto& [w, m] : rows) os << "  " << ints_str(c.rs.integral_fundamental(w)) << "  mult " << m << "\n";
  return {0, os.str(), ""};
}

RunResult resolution_cmd(const JobSpec& spec) {
  require_format(spec, false);
  const Context c = make_context(spec);
  if (!c.p.is_borel()) throw UsageError("the Verma resolution is built for the Borel (omit --crossed)");
  const auto sc = chevalley::chevalley_constants(c.rs);
  const auto res = verma::build_bgg_resolution(sc, c.lambda, c.bounds);
  const int cutoff = spec.cutoff.value_or(verma::default_cutoff(res));
  if (cutoff < 0) throw UsageError("--cutoff must be non-negative");
  const auto report = verma::verify_resolution(sc, res, cutoff);
  const auto n = chevalley::build_nilpotent(sc, c.p, chevalley::Side::Minus);
  std::vector<const verma::ExactnessEntry*> bad;
  for (const auto& e : report.entries)
    if (e.defect != 0) bad.push_back(&e);
  const int status = report.ok() ? exit_code::ok : exit_code::consistency;
  if (spec.format == Format::Json) {
    ordered_json terms = ordered_json::array();
    for (int k = 0; k <= res.max_length; ++k) {
      ordered_json ws = ordered_json::array();
      for (std::size_t i : res.term(k))
        ws.push_back({{"id", i},
                      {"weyl_word", res.hasse.elements[i].str()},
                      {"weight_fundamental_coords", c.rs.integral_fundamental(res.weights[i])}});
      terms.push_back({{"degree", k}, {"modules", ws}});
    }
    ordered_json arrows = ordered_json::array();
    for (const auto& a : res.arrows)
      arrows.push_back({{"src", a.source},
                        {"dst", a.target},
                        {"symbol", a.symbol.str(n)},
                        {"scalar", rational_to_json(a.scalar)}});
    ordered_json defects = ordered_json::array();
    for (const auto* e : bad)
      defects.push_back({{"degree", e->degree}, {"weight", weight_json(e->mu)}, {"defect", e->defect}});
    ordered_json j = {{"type", c.rs.label().str()},
                      {"lambda", c.hw},
                      {"cutoff", cutoff},
                      {"terms", terms},
                      {"arrows", arrows},
                      {"checked", report.entries.size()},
                      {"composition_failures", report.composition_failures},
                      {"defects", defects},
                      {"exact", report.ok()}};
    return {status, dump(j), ""};
  }
  std::ostringstream os;
  os << "BGG resolution of V" << ints_str(c.hw) << " for " << c.rs.label().str() << "\n";
  for (int k = 0; k <= res.max_length; ++k) {
    os << "  C_" << k << ":";
    for (std::size_t i : res.term(k)) os << " M" << ints_str(c.rs.integral_fundamental(res.weights[i]));
    os << "\n";
  }
  os << "maps (source -> target: scalar * symbol):\n";
  for (const auto& a : res.arrows)
    os << "  [" << a.source << "] " << res.hasse.elements[a.source].str() << " -> [" << a.target << "] "
       << res.hasse.elements[a.target].str() << ": " << a.scalar.get_str() << " * (" << a.symbol.str(n) << ")\n";
  os << "exactness up to height " << cutoff << ": " << report.entries.size() << " (weight, degree) checks, "
     << bad.size() << " defects, " << report.composition_failures.size() << " composition failures\n";
  for (const auto* e : bad) os << "  degree " << e->degree << " at " << e->mu.str() << ": defect " << e->defect << "\n";
  for (const auto& f : report.composition_failures) os << "  " << f << "\n";
  return {status, os.str(), ""};
}

RunResult kostant_cmd(const JobSpec& spec) {
  require_format(spec, false);
  const Context c = make_context(spec);
  const auto sc = chevalley::chevalley_constants(c.rs);
  const auto ce = kostant::ce_complex(sc, c.p, c.lambda, c.bounds);
  const auto pred = kostant::kostant_prediction(c.rs, c.p, c.lambda, c.bounds);
  bool all = true;
  ordered_json degrees = ordered_json::array();
  std::ostringstream os;
  os << "H^k(p_+, V" << ints_str(c.hw) << ") for " << c.rs.label().str() << ", crossed " << c.p.str()
     << ", complex dim " << ce.total_dim() << "\n";
  const auto comps = [&](const kostant::LeviDecomposition& d) {
    ordered_json a = ordered_json::array();
    for (const auto& x : d.components)
      a.push_back({{"highest_weight_fundamental_coords", c.rs.integral_fundamental(x.highest_weight)},
                   {"multiplicity", x.multiplicity}});
    return a;
  };
  const auto comps_text = [&](const kostant::LeviDecomposition& d) {
    std::string s;
    for (const auto& x : d.components) {
      s += (s.empty() ? "" : " + ") + std::string("L") + ints_str(c.rs.integral_fundamental(x.highest_weight));
      if (x.multiplicity != 1) s += "^" + std::to_string(x.multiplicity);
    }
    return s.empty() ? std::string("0") : s;
  };
  for (int k = 0; k <= ce.top_degree(); ++k) {
    const auto h = kostant::cohomology(ce, k);
    const auto& p = pred[static_cast<std::size_t>(k)];
    const bool match = h == p;
    all = all && match;
    degrees.push_back({{"degree", k},
                       {"dim", h.dim},
                       {"brute_force", comps(h)},
                       {"prediction", comps(p)},
                       {"match", match}});
    os << "  H^" << k << ": dim " << h.dim << "  " << comps_text(h) << (match ? "" : "   != prediction " + comps_text(p))
       << "\n";
  }
  os << (all ? "brute force == prediction in every degree\n" : "MISMATCH with the prediction\n");
  const int status = all ? exit_code::ok : exit_code::consistency;
  if (spec.format == Format::Json) {
    ordered_json j = {{"type", c.rs.label().str()},
                      {"crossed", c.p.str()},
                      {"lambda", c.hw},
                      {"complex_dim", ce.total_dim()},
                      {"weights", "highest weights are w.lambda"},
                      {"degrees", degrees},
                      {"match", all}};
    return {status, dump(j), ""};
  }
  return {status, os.str(), ""};
}

RunResult bgg_cmd(const JobSpec& spec) {
  require_format(spec, true);
  const Context c = make_context(spec);
  if (!c.p.is_borel()) throw UsageError("BGG diagrams are built for the Borel (omit --crossed)");
  const auto sc = chevalley::chevalley_constants(c.rs);
  const DiagramDocument doc = make_document(kostant::bgg_diagram(sc, c.lambda, c.bounds), c.rs);
  if (spec.format == Format::Json) return {0, dump(to_json(doc)), ""};
  if (spec.format == Format::Dot) return {0, to_dot(doc), ""};
  return {0, to_text(doc), ""};
}

RunResult verdict_cmd(const JobSpec& spec) {
  require_format(spec, false);
  const Context c = make_context(spec);
  const auto v = splitkit::splitting_verdict(c.rs, c.p);
  if (spec.format == Format::Json) {
    ordered_json j = {{"type", c.rs.label().str()},
                      {"crossed", c.p.str()},
                      {"value", splitkit::to_string(v.value)},
                      {"rank_G", v.rank_G},
                      {"rank_AP", v.rank_AP},
                      {"rationale", v.rationale}};
    return {0, dump(j), ""};
  }
  std::ostringstream os;
  os << splitkit::to_string(v.value) << "  (rank_G = " << v.rank_G << ", rank_AP = " << v.rank_AP << ")\n";
  os << "  " << v.rationale << "\n";
  return {0, os.str(), ""};
}

RunResult index_cmd(const JobSpec& spec) {
  require_format(spec, false);
  const Context c = make_context(spec);
  const auto e = kostant::euler_index(c.rs, c.p, c.lambda, c.bounds);
  if (spec.format == Format::Json) {
    ordered_json j = {{"type", c.rs.label().str()}, {"crossed", c.p.str()}, {"lambda", c.hw},
                      {"chi", e.chi},           {"dim_v", e.dim_v},      {"index", e.index},
                      {"alt_rank_sum", e.alt_rank_sum}};
    return {0, dump(j), ""};
  }
  std::ostringstream os;
  os << "chi = " << e.chi << ", dim V = " << e.dim_v << ", index = chi * dim V = " << e.index
     << ", alternating rank sum = " << e.alt_rank_sum << "\n";
  return {0, os.str(), ""};
}

RunResult verify_cmd(const JobSpec& spec) {
  require_format(spec, false);
  if (spec.suite.empty()) throw UsageError("verify needs a suite (kostant, hodge, resolution, character, splitting, jacobi)");
  const VerifyReport r = verify_suite(spec.suite, spec.grid, effective_bounds(spec), spec.corruptions);
  const int status = r.failures() == 0 ? exit_code::ok : exit_code::consistency;
  return {status, spec.format == Format::Json ? dump(to_json(r)) : to_text(r),
          status == 0 ? "" : r.summary()};
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "roots";
}

std::string to_string(Format f) {
  switch (f) {
    case Format::Text: return "text";
    case Format::Json: return "json";
    case Format::Dot: return "dot";
  }
  return "text";
}

Command parse_command(const std::string& s) {
  for (const auto& [cmd, name] : kCommands)
    if (name == s) return cmd;
  throw UsageError("unknown command '" + s + "'");
}

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "dot") return Format::Dot;
  throw UsageError("unknown format '" + s + "' (expected text, json or dot)");
}

ordered_json to_json(const JobSpec& spec) {
  ordered_json j;
  j["command"] = to_string(spec.command);
  j["type"] = spec.type;
  j["crossed"] = spec.crossed ? ordered_json(*spec.crossed) : ordered_json(nullptr);
  j["hw"] = spec.hw;
  j["cutoff"] = spec.cutoff ? ordered_json(*spec.cutoff) : ordered_json(nullptr);
  j["format"] = to_string(spec.format);
  const auto opt = [](const std::optional<std::size_t>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  j["bounds"] = {{"weyl_bound", opt(spec.bounds.weyl_elements)},
                 {"dim_bound", opt(spec.bounds.irrep_dim)},
                 {"complex_bound", opt(spec.bounds.complex_dim)}};
  j["config"] = spec.config;
  j["out"] = spec.out;
  j["suite"] = spec.suite;
  j["grid"] = spec.grid;
  ordered_json corr = ordered_json::array();
  for (const auto& c : spec.corruptions) corr.push_back({c.a, c.b, c.value});
  j["corruptions"] = corr;
  return j;
}

JobSpec job_from_json(const ordered_json& j) {
  try {
    JobSpec s;
    s.command = parse_command(j.at("command").get<std::string>());
    s.type = j.value("type", "");
    if (j.contains("crossed") && !j.at("crossed").is_null()) s.crossed = j.at("crossed").get<IntVector>();
    if (j.contains("hw")) s.hw = j.at("hw").get<IntVector>();
    if (j.contains("cutoff") && !j.at("cutoff").is_null()) s.cutoff = j.at("cutoff").get<int>();
    s.format = parse_format(j.value("format", "text"));
    if (j.contains("bounds")) {
      const auto& b = j.at("bounds");
      const auto get = [&](const char* key, std::optional<std::size_t>& out) {
        if (b.contains(key) && !b.at(key).is_null()) out = b.at(key).get<std::size_t>();
      };
      get("weyl_bound", s.bounds.weyl_elements);
      get("dim_bound", s.bounds.irrep_dim);
      get("complex_bound", s.bounds.complex_dim);
    }
    s.config = j.value("config", "");
    s.out = j.value("out", "");
    s.suite = j.value("suite", "");
    s.grid = j.value("grid", "default");
    if (j.contains("corruptions"))
      for (const auto& c : j.at("corruptions")) s.corruptions.push_back({c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>(), c.at(2).get<int>()});
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed job: ") + e.what());
  }
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

Bounds effective_bounds(const JobSpec& spec) {
  Bounds b;
  const std::vector<std::tuple<const char*, const char*, std::size_t Bounds::*, std::optional<std::size_t> BoundOverrides::*>>
      keys = {{"BGG_WEYL_BOUND", "weyl_bound", &Bounds::weyl_elements, &BoundOverrides::weyl_elements},
              {"BGG_DIM_BOUND", "dim_bound", &Bounds::irrep_dim, &BoundOverrides::irrep_dim},
              {"BGG_COMPLEX_BOUND", "complex_bound", &Bounds::complex_dim, &BoundOverrides::complex_dim}};
  for (const auto& [env, key, field, flag] : keys)
    if (const char* v = std::getenv(env)) b.*field = parse_bound(v, env);
  if (!spec.config.empty()) {
    const auto cfg = read_config(spec.config);
    for (const auto& [k, v] : cfg) {
      bool known = false;
      for (const auto& [env, key, field, flag] : keys)
        if (k == key) {
          b.*field = parse_bound(v, spec.config + ": " + k);
          known = true;
        }
      if (!known) throw UsageError(spec.config + ": unknown key '" + k + "'");
    }
  }
  for (const auto& [env, key, field, flag] : keys)
    if (spec.bounds.*flag) b.*field = *(spec.bounds.*flag);
  return b;
}

RunResult run(const JobSpec& spec) {
  try {
    switch (spec.command) {
      case Command::Roots: return roots_cmd(spec);
      case Command::Hasse: return hasse_cmd(spec);
      case Command::Grading: return grading_cmd(spec);
      case Command::Irrep: return irrep_cmd(spec);
      case Command::Resolution: return resolution_cmd(spec);
      case Command::Kostant: return kostant_cmd(spec);
      case Command::Bgg: return bgg_cmd(spec);
      case Command::Verdict: return verdict_cmd(spec);
      case Command::Index: return index_cmd(spec);
      case Command::Verify: return verify_cmd(spec);
    }
    throw UsageError("unknown command");
  } catch (const UsageError& e) {
    return {exit_code::usage, "", std::string("usage error: ") + e.what()};
  } catch (const PreconditionError& e) {
    return {exit_code::usage, "", std::string("precondition failed: ") + e.what()};
  } catch (const ResourceError& e) {
    return {exit_code::resource, "", "resource bound '" + e.bound() + "' exceeded: " + e.what()};
  } catch (const ConsistencyError& e) {
    return {exit_code::consistency, "", std::string("internal consistency failure: ") + e.what()};
  }
}

ParseResult parse_arguments(const std::vector<std::string>& args) {
  CLI::App app{"BGG complexes, Kostant cohomology and Heisenberg splittings with exact arithmetic", "bggcli"};
  app.require_subcommand(1);
  JobSpec spec;
  std::string crossed, hw, format = "text", job_file;
  bool crossed_set = false, dump_job = false;
  std::optional<std::size_t> weyl, dim, complex;
  std::vector<std::string> corrupt;
  app.add_option("--job", job_file, "Run a job serialized as JSON (other arguments are ignored)");
  app.add_flag("--dump-job", dump_job, "Print the parsed job as JSON instead of running it");

  const auto common = [&](CLI::App* sub, bool with_type) {
    if (with_type) sub->add_option("type", spec.type, "Lie type, e.g. A2, B3, G2")->required();
    sub->add_option("--format", format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_option("--weyl-bound", weyl, "Maximum Weyl group size");
    sub->add_option("--dim-bound", dim, "Maximum irreducible module dimension");
    sub->add_option("--complex-bound", complex, "Maximum cochain complex dimension");
    sub->add_option("--config", spec.config, "key=value file with weyl_bound, dim_bound, complex_bound");
    sub->add_option("--out", spec.out, "Write the output to this file");
  };
  const auto with_crossed = [&](CLI::App* sub) {
    sub->add_option("--crossed", crossed,
                    "Crossed simple roots, e.g. 1,3; empty or 'borel' for the Borel, 'none' for P = G")
        ->expected(0, 1);
  };
  const auto with_hw = [&](CLI::App* sub) {
    sub->add_option("--hw", hw, "Highest weight in fundamental coordinates, e.g. 1,0");
  };

  std::map<CLI::App*, Command> subs;
  const auto add = [&](Command c, const std::string& help) {
    CLI::App* sub = app.add_subcommand(to_string(c), help);
    subs[sub] = c;
    return sub;
  };
  CLI::App* s;
  s = add(Command::Roots, "Positive roots and Cartan matrix");
  common(s, true);
  s = add(Command::Hasse, "Hasse diagram of W^p");
  common(s, true), with_crossed(s);
  s = add(Command::Grading, "|k|-grading induced by a parabolic");
  common(s, true), with_crossed(s);
  s = add(Command::Irrep, "Weight multiplicities of V(lambda)");
  common(s, true), with_hw(s);
  s = add(Command::Resolution, "BGG resolution by Verma modules and its exactness check");
  common(s, true), with_hw(s);
  s->add_option("--cutoff", spec.cutoff, "Height up to which exactness is checked");
  s = add(Command::Kostant, "Lie algebra cohomology H^k(p_+, V(lambda)) against the Weyl-group prediction");
  common(s, true), with_crossed(s), with_hw(s);
  s = add(Command::Bgg, "BGG diagram with symbols and Heisenberg orders");
  common(s, true), with_hw(s);
  s = add(Command::Verdict, "Existence of an equivariant Heisenberg splitting from the ranks");
  common(s, true), with_crossed(s);
  s = add(Command::Index, "Euler characteristic and index integer");
  common(s, true), with_crossed(s), with_hw(s);
  s = add(Command::Verify, "Run a verification suite over a grid");
  common(s, false);
  s->add_option("suite", spec.suite, "kostant, hodge, resolution, character, splitting or jacobi")->required();
  s->add_option("--grid", spec.grid, "default, small, or cases TYPE:PARABOLIC:HW separated by ';'");
  s->add_option("--corrupt-constant", corrupt, "Test fixture: set N(a,b)=v, N(b,a)=-v, given as a,b,v")
      ->take_all();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, 0, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return {std::nullopt, 0, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    // A missing subcommand with --job is fine.
    if (job_file.empty()) return {std::nullopt, exit_code::usage, e.what()};
  }
  try {
    if (!job_file.empty()) {
      std::ifstream in(job_file);
      if (!in) throw UsageError("cannot read job file '" + job_file + "'");
      ordered_json j;
      try {
        j = ordered_json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("job file is not JSON: ") + e.what());
      }
      return {job_from_json(j), 0, ""};
    }
    for (const auto& [sub, cmd] : subs) {
      if (!sub->parsed()) continue;
      spec.command = cmd;
      if (const CLI::Option* o = sub->get_option_no_throw("--crossed")) crossed_set = o->count() > 0;
    }
    if (crossed_set) spec.crossed = parse_crossed(crossed);
    spec.hw = parse_int_list(hw, "--hw");
    spec.format = parse_format(format);
    spec.bounds = {weyl, dim, complex};
    for (const std::string& c : corrupt) {
      const IntVector v = parse_int_list(c, "--corrupt-constant");
      if (v.size() != 3 || v[0] < 0 || v[1] < 0) throw UsageError("--corrupt-constant takes a,b,value");
      spec.corruptions.push_back({static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]), v[2]});
    }
  } catch (const UsageError& e) {
    return {std::nullopt, exit_code::usage, e.what()};
  }
  if (dump_job) return {std::nullopt, 0, to_json(spec).dump(2) + "\n"};
  return {spec, 0, ""};
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  const ParseResult parsed = parse_arguments(args);
  if (!parsed.spec) {
    (parsed.status == 0 ? std::cout : std::cerr) << parsed.message << (parsed.status == 0 ? "" : "\n");
    return parsed.status;
  }
  const RunResult r = run(*parsed.spec);
  if (!parsed.spec->out.empty()) {
    std::ofstream out(parsed.spec->out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << parsed.spec->out << "'\n";
      return exit_code::usage;
    }
    out << r.output;
  } else {
    std::cout << r.output;
  }
  if (!r.diagnostics.empty()) std::cerr << r.diagnostics << "\n";
  return r.status;
}

}  // namespace bgg::app
