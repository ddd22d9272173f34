#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "bohmslit/born.hpp"
#include "bohmslit/dynamics.hpp"
#include "bohmslit/experiment.hpp"
#include "bohmslit/model.hpp"

namespace bohmslit {

struct EnsembleSettings {
  std::size_t n = 100'000;            // pairs per statistics run
  std::size_t n_trajectories = 200;   // pairs per trajectory-plot run
  SourceMode mode = SourceMode::constrained_com;
  std::uint64_t seed = 20011;
  int joint_bins = 10;                // per axis, for joint comparisons

  void validate() const;
  bool operator==(const EnsembleSettings&) const = default;
};

/// Everything a single CLI run needs. Unset `grid` means automatic.
struct RunConfig {
  PhysicalConfig physical;
  IntegratorSettings integrator;
  EnsembleSettings ensemble;
  std::optional<GridSpec> grid;
  std::string output_dir = "out";
  unsigned threads = 0;  // 0 = all hardware threads; results do not depend on it

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

/// Parses a JSON document. Missing keys take their defaults; an empty
/// document yields the full default config. Unknown keys, wrong types and
/// violated invariants throw ValidationError naming the field; malformed
/// JSON throws ParseError.
RunConfig parse_config(std::string_view text);

/// Reads and parses a config file; IoError if it cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON text with every field spelled out.
std::string serialize_config(const RunConfig& cfg);

}  // namespace bohmslit
