#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bohmslit/config.hpp"
#include "bohmslit/outputs.hpp"
#include "bohmslit/validation.hpp"

namespace bohmslit {

enum class Command { simulate_bqm, simulate_sqm, trajectories, selective, compare, validate };

std::string_view to_string(Command c);
/// Accepts the CLI spelling ("simulate-bqm", ...). nullopt if unknown.
std::optional<Command> command_from_string(std::string_view name);

struct StageCounts {
  std::uint64_t proposed = 0;  // rejection-sampler proposals
  std::uint64_t accepted = 0;  // pairs that reached the screens
  std::uint64_t aborted = 0;   // node-aborted trajectories
};

/// Everything written to manifest.json. Only the timing fields vary between
/// identical runs.
struct RunManifest {
  Command command = Command::validate;
  RunConfig config;
  std::string version;
  std::string rng_algorithm;
  std::string started_at;  // UTC, ISO 8601
  double wall_clock_seconds = 0;
  StageCounts counts;
  std::vector<EmittedFile> files;
  std::vector<CheckResult> checks;  // validate only
  bool flagged = false;             // some BQM run crossed the abort threshold
  bool success = true;              // false if a validation check failed
};

/// Runs one pipeline and writes its files (plus manifest.json) into
/// cfg.output_dir. Module errors propagate; the CLI maps them to exit codes.
RunManifest run_command(Command cmd, const RunConfig& cfg);

/// Exit status for an exception escaping run_command: 2 config, 3 numerical,
/// 4 I/O, 1 anything else.
int exit_code_for(const std::exception& e);

}  // namespace bohmslit
