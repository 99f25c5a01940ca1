#pragma once

#include <string>
#include <vector>

#include "bgg/kostant.hpp"
#include "json.hpp"

namespace bgg::app {

constexpr int kSchemaVersion = 1;

struct Conventions {
  std::string pbw_order;
  std::string chevalley_gauge;
  std::string orientation;
  friend bool operator==(const Conventions&, const Conventions&) = default;
};

struct DocumentNode {
  std::size_t id = 0;
  std::string weyl_word;  // "e", "s1 s2"
  int length = 0;
  std::vector<Rational> weight_simple_coords;
  std::vector<int> weight_fundamental_coords;
  std::uint64_t rank = 1;
  friend bool operator==(const DocumentNode&, const DocumentNode&) = default;
};

struct SymbolTerm {
  std::vector<int> exponent_vector;
  Rational coefficient;
  friend bool operator==(const SymbolTerm&, const SymbolTerm&) = default;
};

struct DocumentArrow {
  std::size_t src = 0;
  std::size_t dst = 0;
  int heisenberg_order = 0;
  std::vector<SymbolTerm> symbol;  // PBW-largest term first
  friend bool operator==(const DocumentArrow&, const DocumentArrow&) = default;
};

/// Stable serializable form of a BGGDiagram. Every document carries its
/// conventions, since symbols and signs are only meaningful relative to them.
struct DiagramDocument {
  int schema_version = kSchemaVersion;
  std::string type;
  int rank = 0;
  std::vector<int> lambda;  // fundamental coordinates
  std::vector<std::string> symbol_basis;
  Conventions conventions;
  std::vector<DocumentNode> nodes;
  std::vector<DocumentArrow> arrows;
  friend bool operator==(const DiagramDocument&, const DiagramDocument&) = default;
};

Conventions default_conventions(const chevalley::GradedNilpotent& n);

DiagramDocument make_document(const kostant::BGGDiagram& diagram, const rootcore::RootSystem& rs);

nlohmann::ordered_json to_json(const DiagramDocument& doc);
/// Throws UsageError on a missing schema version, missing conventions or an
/// arrow referencing an unknown node.
DiagramDocument document_from_json(const nlohmann::ordered_json& j);

std::string to_text(const DiagramDocument& doc);
/// Graph description: node labels "w / weight / rank", edge labels "order: symbol".
std::string to_dot(const DiagramDocument& doc);

/// "y10*y01 - 2*y11" from the stored terms and basis names.
std::string symbol_string(const std::vector<SymbolTerm>& symbol, const std::vector<std::string>& basis);
/// "2a1 + a2", "0", "-1/3a1".
std::string root_combination(const std::vector<Rational>& simple_coords);

/// Rationals in documents: integers as numbers, others as "p/q" strings.
nlohmann::ordered_json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::ordered_json& j);

}  // namespace bgg::app
