#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bohmslit/dynamics.hpp"
#include "bohmslit/experiment.hpp"
#include "bohmslit/statistics.hpp"

namespace bohmslit {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

std::string sha256_hex(std::string_view bytes);

struct EmittedFile {
  std::string name;
  std::string sha256;
  std::uint64_t bytes = 0;
};

// CSV renderers. Headers are fixed; one row per record.
std::string trajectories_csv(const std::vector<Trajectory>& trajectories);  // pair_id,t,y1,y2
std::string arrivals_csv(const ArrivalSet& set);              // pair_id,right,left,same_side
std::string histogram_csv(const ScreenHistogram& h);          // bin_left_edge,count

/// Writes files into one output directory and keeps their checksums.
class OutputDirectory {
 public:
  /// Creates the directory if needed; IoError on failure.
  explicit OutputDirectory(std::filesystem::path dir);

  /// Writes `contents` to dir/name (binary, truncating). IoError on failure.
  const EmittedFile& write(const std::string& name, std::string_view contents);

  const std::vector<EmittedFile>& files() const { return files_; }
  const std::filesystem::path& path() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<EmittedFile> files_;
};

}  // namespace bohmslit
