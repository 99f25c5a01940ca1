#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bgg/bounds.hpp"
#include "bgg/rootcore.hpp"
#include "json.hpp"

namespace bgg::app {

enum class Command { Roots, Hasse, Grading, Irrep, Resolution, Kostant, Bgg, Verdict, Index, Verify };
enum class Format { Text, Json, Dot };

std::string to_string(Command c);
std::string to_string(Format f);
Command parse_command(const std::string& s);
Format parse_format(const std::string& s);

namespace exit_code {
constexpr int ok = 0;
constexpr int usage = 2;
constexpr int resource = 3;
constexpr int consistency = 4;
}  // namespace exit_code

struct BoundOverrides {
  std::optional<std::size_t> weyl_elements;
  std::optional<std::size_t> irrep_dim;
  std::optional<std::size_t> complex_dim;
  friend bool operator==(const BoundOverrides&, const BoundOverrides&) = default;
};

/// Test fixture: overwrite N(a, b) = value and N(b, a) = -value after the
/// structure constants are built (indices into roots()).
struct Corruption {
  std::size_t a = 0;
  std::size_t b = 0;
  int value = 0;
  friend bool operator==(const Corruption&, const Corruption&) = default;
};

struct JobSpec {
  Command command = Command::Roots;
  std::string type;                      // "A2"; unused by verify
  std::optional<rootcore::IntVector> crossed;  // nullopt: Borel; {}: nothing crossed
  rootcore::IntVector hw;                // fundamental coordinates; empty means 0
  std::optional<int> cutoff;
  Format format = Format::Text;
  BoundOverrides bounds;
  std::string config;                    // key=value file
  std::string out;                       // output path; empty for stdout
  std::string suite;                     // verify: kostant, hodge, resolution, character, splitting, jacobi
  std::string grid = "default";
  std::vector<Corruption> corruptions;
  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

nlohmann::ordered_json to_json(const JobSpec& spec);
/// Throws UsageError on unknown commands, formats or malformed fields.
JobSpec job_from_json(const nlohmann::ordered_json& j);

/// Bounds in force: defaults, then BGG_WEYL_BOUND / BGG_DIM_BOUND /
/// BGG_COMPLEX_BOUND from the environment, then the config file
/// (weyl_bound, dim_bound, complex_bound), then flags.
Bounds effective_bounds(const JobSpec& spec);
/// key=value lines; '#' starts a comment. Throws UsageError.
std::map<std::string, std::string> read_config(const std::string& path);

struct RunResult {
  int status = 0;
  std::string output;       // the serialized result
  std::string diagnostics;  // error message, if any
};

/// Dispatches a job. Usage errors give status 2, resource bounds 3 (the bound
/// is named in the diagnostics), violated identities 4. Failing verify cases
/// also give 4.
RunResult run(const JobSpec& spec);

struct ParseResult {
  std::optional<JobSpec> spec;  // empty for --help or errors
  int status = 0;
  std::string message;          // help text or error
};

ParseResult parse_arguments(const std::vector<std::string>& args);

/// Parses, runs and writes to stdout or the --out path.
int main_entry(int argc, char** argv);

}  // namespace bgg::app
