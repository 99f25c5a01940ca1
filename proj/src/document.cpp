#include "bgg/document.hpp"

#include <sstream>

#include "bgg/errors.hpp"

namespace bgg::app {

using nlohmann::ordered_json;

namespace {

ordered_json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class integer_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw UsageError("expected an integer");
}

const ordered_json& field(const ordered_json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("document is missing field '") + key + "'");
  return j.at(key);
}

std::string weight_label(const DocumentNode& n) { return root_combination(n.weight_simple_coords); }

}  // namespace

ordered_json rational_to_json(const Rational& q) {
  if (q.get_den() == 1) return integer_to_json(q.get_num());
  return q.get_str();
}

Rational rational_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw UsageError("expected a rational number");
}

Conventions default_conventions(const chevalley::GradedNilpotent& n) {
  std::string basis;
  for (std::size_t i = 0; i < n.names.size(); ++i) basis += (i ? ", " : "") + n.names[i];
  Conventions c;
  c.pbw_order = "monomials in basis order " + basis +
                " (roots by height, then descending lexicographic); a > b iff the last nonzero entry of a - b "
                "is negative; symbols listed from the leading term, singular vectors normalized to leading "
                "coefficient 1";
  c.chevalley_gauge =
      "[e_a, e_b] = N_ab e_(a+b) with e_g = [e_eps, e_zeta]/(p+1), eps the smallest simple root with g - eps "
      "a root; [e_a, e_-a] = h_a; y_b = -e_(-b); arrow signs from a rational gauge making every square "
      "anticommute";
  c.orientation =
      "node weight = -(w.lambda) in simple-root coordinates; cohomology weights are w.lambda (calibrated on A2, "
      "Borel, lambda = 0)";
  return c;
}

DiagramDocument make_document(const kostant::BGGDiagram& diagram, const rootcore::RootSystem& rs) {
  DiagramDocument doc;
  doc.type = rs.label().str();
  doc.rank = rs.rank();
  doc.lambda = rs.integral_fundamental(diagram.lambda);
  doc.symbol_basis = diagram.nilpotent.names;
  doc.conventions = default_conventions(diagram.nilpotent);
  for (std::size_t i = 0; i < diagram.nodes.size(); ++i) {
    const kostant::DiagramNode& n = diagram.nodes[i];
    DocumentNode out;
    out.id = i;
    out.weyl_word = n.element.str();
    out.length = n.element.length();
    out.weight_simple_coords = n.weight.coords();
    out.weight_fundamental_coords = rs.integral_fundamental(n.weight);
    out.rank = n.rank;
    doc.nodes.push_back(std::move(out));
  }
  for (const kostant::DiagramArrow& a : diagram.arrows) {
    DocumentArrow out;
    out.src = a.source;
    out.dst = a.target;
    out.heisenberg_order = a.heisenberg_order;
    for (const auto& [m, c] : a.symbol.sorted_terms()) out.symbol.push_back({m, c});
    doc.arrows.push_back(std::move(out));
  }
  return doc;
}

ordered_json to_json(const DiagramDocument& doc) {
  ordered_json j;
  j["schema_version"] = doc.schema_version;
  ordered_json meta;
  meta["type"] = doc.type;
  meta["rank"] = doc.rank;
  meta["lambda"] = doc.lambda;
  meta["symbol_basis"] = doc.symbol_basis;
  meta["conventions"] = {{"pbw_order", doc.conventions.pbw_order},
                         {"chevalley_gauge", doc.conventions.chevalley_gauge},
                         {"orientation", doc.conventions.orientation}};
  j["metadata"] = meta;
  ordered_json nodes = ordered_json::array();
  for (const DocumentNode& n : doc.nodes) {
    ordered_json simple = ordered_json::array();
    for (const Rational& q : n.weight_simple_coords) simple.push_back(rational_to_json(q));
    nodes.push_back({{"id", n.id},
                     {"weyl_word", n.weyl_word},
                     {"length", n.length},
                     {"weight_simple_coords", simple},
                     {"weight_fundamental_coords", n.weight_fundamental_coords},
                     {"rank", n.rank}});
  }
  j["nodes"] = nodes;
  ordered_json arrows = ordered_json::array();
  for (const DocumentArrow& a : doc.arrows) {
    ordered_json symbol = ordered_json::array();
    for (const SymbolTerm& t : a.symbol)
      symbol.push_back({{"exponent_vector", t.exponent_vector},
                        {"numerator", integer_to_json(t.coefficient.get_num())},
                        {"denominator", integer_to_json(t.coefficient.get_den())}});
    arrows.push_back({{"src", a.src}, {"dst", a.dst}, {"heisenberg_order", a.heisenberg_order}, {"symbol", symbol}});
  }
  j["arrows"] = arrows;
  return j;
}

DiagramDocument document_from_json(const ordered_json& j) {
  DiagramDocument doc;
  doc.schema_version = field(j, "schema_version").get<int>();
  if (doc.schema_version != kSchemaVersion)
    throw UsageError("unsupported schema version " + std::to_string(doc.schema_version));
  const ordered_json& meta = field(j, "metadata");
  doc.type = field(meta, "type").get<std::string>();
  doc.rank = field(meta, "rank").get<int>();
  doc.lambda = field(meta, "lambda").get<std::vector<int>>();
  doc.symbol_basis = field(meta, "symbol_basis").get<std::vector<std::string>>();
  const ordered_json& conv = field(meta, "conventions");
  doc.conventions.pbw_order = field(conv, "pbw_order").get<std::string>();
  doc.conventions.chevalley_gauge = field(conv, "chevalley_gauge").get<std::string>();
  doc.conventions.orientation = field(conv, "orientation").get<std::string>();
  for (const ordered_json& n : field(j, "nodes")) {
    DocumentNode node;
    node.id = field(n, "id").get<std::size_t>();
    node.weyl_word = field(n, "weyl_word").get<std::string>();
    node.length = field(n, "length").get<int>();
    for (const ordered_json& q : field(n, "weight_simple_coords")) node.weight_simple_coords.push_back(rational_from_json(q));
    node.weight_fundamental_coords = field(n, "weight_fundamental_coords").get<std::vector<int>>();
    node.rank = field(n, "rank").get<std::uint64_t>();
    if (node.id != doc.nodes.size()) throw UsageError("node ids must be 0, 1, 2, ... in order");
    doc.nodes.push_back(std::move(node));
  }
  for (const ordered_json& a : field(j, "arrows")) {
    DocumentArrow arrow;
    arrow.src = field(a, "src").get<std::size_t>();
    arrow.dst = field(a, "dst").get<std::size_t>();
    if (arrow.src >= doc.nodes.size() || arrow.dst >= doc.nodes.size())
      throw UsageError("arrow references a node that does not exist");
    arrow.heisenberg_order = field(a, "heisenberg_order").get<int>();
    for (const ordered_json& t : field(a, "symbol")) {
      Rational c(integer_from_json(field(t, "numerator")), integer_from_json(field(t, "denominator")));
      if (sgn(c.get_den()) == 0) throw UsageError("zero denominator in a symbol");
      c.canonicalize();
      arrow.symbol.push_back({field(t, "exponent_vector").get<std::vector<int>>(), c});
    }
    doc.arrows.push_back(std::move(arrow));
  }
  return doc;
}

std::string symbol_string(const std::vector<SymbolTerm>& symbol, const std::vector<std::string>& basis) {
  if (symbol.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < symbol.size(); ++k) {
    const SymbolTerm& t = symbol[k];
    Rational c = t.coefficient;
    if (k == 0) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    c = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < t.exponent_vector.size(); ++i) {
      const int e = t.exponent_vector[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < basis.size() ? basis[i] : "b" + std::to_string(i);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += mono;
    }
  }
  return out;
}

std::string root_combination(const std::vector<Rational>& simple_coords) {
  std::string out;
  for (std::size_t i = 0; i < simple_coords.size(); ++i) {
    Rational c = simple_coords[i];
    if (sgn(c) == 0) continue;
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    c = abs(c);
    if (c != 1) out += c.get_str();
    out += "a" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

std::string to_text(const DiagramDocument& doc) {
  std::ostringstream os;
  os << "BGG diagram " << doc.type << ", lambda = (";
  for (std::size_t i = 0; i < doc.lambda.size(); ++i) os << (i ? ", " : "") << doc.lambda[i];
  os << ") in fundamental coordinates\n";
  os << "nodes: " << doc.nodes.size() << "\n";
  for (const DocumentNode& n : doc.nodes)
    os << "  [" << n.id << "] " << n.weyl_word << "  length " << n.length << "  weight " << weight_label(n)
       << "  rank " << n.rank << "\n";
  os << "arrows: " << doc.arrows.size() << "\n";
  for (const DocumentArrow& a : doc.arrows)
    os << "  [" << a.src << "] -> [" << a.dst << "]  order " << a.heisenberg_order << "  "
       << symbol_string(a.symbol, doc.symbol_basis) << "\n";
  os << "conventions:\n";
  os << "  pbw_order: " << doc.conventions.pbw_order << "\n";
  os << "  chevalley_gauge: " << doc.conventions.chevalley_gauge << "\n";
  os << "  orientation: " << doc.conventions.orientation << "\n";
  return os.str();
}

std::string to_dot(const DiagramDocument& doc) {
  std::ostringstream os;
  os << "digraph bgg {\n";
  os << "  // " << doc.type << ", conventions: " << doc.conventions.orientation << "\n";
  os << "  rankdir=LR;\n";
  for (const DocumentNode& n : doc.nodes)
    os << "  n" << n.id << " [label=\"" << n.weyl_word << " / " << weight_label(n) << " / " << n.rank << "\"];\n";
  for (const DocumentArrow& a : doc.arrows)
    os << "  n" << a.src << " -> n" << a.dst << " [label=\"" << a.heisenberg_order << ": "
       << symbol_string(a.symbol, doc.symbol_basis) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace bgg::app
