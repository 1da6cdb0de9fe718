#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "avmod/module.hpp"
#include "avmod/zoo.hpp"

namespace avmod {

inline constexpr const char* kToolName = "avtool";
inline constexpr const char* kToolVersion = "1.0.0";

/// Invalid flags or configuration; maps to exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::vector<std::size_t> dims{1, 2, 3};
  unsigned max_degree = 4;
  /// Random samples per identity and dimension (per module for module suites).
  unsigned trials = 112;
  std::uint64_t seed = 1;
  /// p and q range over 1..p_max.
  unsigned p_max = 4;
  /// Terms per random polynomial are drawn from 1..max_terms.
  unsigned max_terms = 2;
  /// Flip one right-hand-side sign in every identity check (negative control).
  bool inject_fault = false;
};

/// Throws UsageError unless trials >= 1, max_degree >= 1, p_max >= 1 and
/// every dim lies in 1..kMaxVariables/2.
void check_config(const RunConfig& config);

/// `zoo:<name>` (with params) or a path to a module-definition file.
struct ModuleSpec {
  std::string module;
  ZooParams params;
};

/// Loads and validates. Throws UnknownModule, SchemaError, ParseError or
/// InvalidModule.
AVModule load_module_spec(const ModuleSpec& spec);

/// Report envelope {tool, version, command, config, results, summary,
/// exit_status}; exit_status is 0 iff nothing failed, 1 on a violated check,
/// 2 on an input or usage error.
struct CommandResult {
  nlohmann::json report;
  int exit_status = 0;
};

/// Suites: lemma2, lemma3, lemma4, lemma5, lemma4.1, closed-form (identities);
/// localize, annihilation, orders, representation, exterior (modules); all.
/// Individual identity ids are accepted as suites too.
CommandResult cmd_verify(const RunConfig& config, const std::vector<std::string>& suites);
/// Rank, lie_map_order, oracle_order and the rank² bound.
CommandResult cmd_order(const ModuleSpec& spec, std::optional<unsigned> n_max);
/// min_annihilating_order of Ω_p(f, η) and the verified tail range.
CommandResult cmd_annihilator(const ModuleSpec& spec, const std::string& f, const std::string& eta);
/// Validation report of a module; exit 1 if it is not bracket compatible.
CommandResult cmd_validate(const ModuleSpec& spec);
/// The module-definition JSON of a loaded module.
CommandResult cmd_export(const ModuleSpec& spec);

std::vector<std::string> known_suites();

/// One full record per failing check: {identity, inputs, status, witness, note}.
nlohmann::json report_to_json(const VerificationReport& report);

/// Line-oriented rendering derived from the JSON report.
std::string render_text(const nlohmann::json& report);

}  // namespace avmod
