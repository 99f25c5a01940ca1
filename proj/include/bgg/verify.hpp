#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bgg/app.hpp"
#include "bgg/chevalley.hpp"

namespace bgg::app {

/// One (type, parabolic, lambda) case of a verification grid.
struct GridCase {
  rootcore::TypeLabel type;
  std::optional<rootcore::IntVector> crossed;  // nullopt: Borel
  rootcore::IntVector hw;
  std::string id() const;  // "A2 borel (1,0)"
};

/// "default": the suite's acceptance grid; "small": a quick subset; otherwise
/// an explicit list "A3:borel:0,1,0;A2:1:1,0;B2:none:0,0" (parabolic given as
/// borel, none or crossed indices). For the splitting suite the grid is a
/// complex count ("default" = 500, "small" = 50, or a number).
std::vector<GridCase> parse_grid(const std::string& suite, const std::string& grid, const Bounds& bounds);

struct CaseReport {
  std::string id;
  bool pass = true;
  std::vector<std::string> defects;
};

struct VerifyReport {
  std::string suite;
  std::string grid;
  std::vector<CaseReport> cases;
  bool jacobi_failure = false;
  std::size_t failures() const;
  std::string summary() const;
};

VerifyReport verify_suite(const std::string& suite, const std::string& grid, const Bounds& bounds,
                          const std::vector<Corruption>& corruptions = {});

/// Structure constants with the fixture corruptions applied (out-of-range
/// indices are a usage error).
chevalley::StructureConstants constants_for(const rootcore::RootSystem& rs, const std::vector<Corruption>& corruptions);

nlohmann::ordered_json to_json(const VerifyReport& report);
std::string to_text(const VerifyReport& report);

}  // namespace bgg::app
