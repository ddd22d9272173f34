#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>

namespace bohmslit {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11): a keyed
/// bijection of a 128-bit counter. Any draw is addressable without
/// sequential state, which is what makes per-pair substreams cheap.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::string_view kAlgorithm = "philox4x32-10";

  static Counter block(Counter ctr, Key key);
};

/// Purposes get disjoint counter spaces so the same seed never reuses draws.
enum class StreamTag : std::uint32_t {
  born_sampling = 1,
  initial_conditions = 2,
  validation = 3,
  test_points = 4,
};

/// Sequential view onto one substream: counter words 1..3 fix
/// (index, purpose), word 0 advances.
class Substream {
 public:
  Substream(std::uint64_t seed, std::uint64_t index, StreamTag tag);

  std::uint32_t next_u32();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_low() { return 1.0 - uniform(); }
  /// Two independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair();

 private:
  Philox4x32::Key key_;
  Philox4x32::Counter ctr_;
  Philox4x32::Counter buf_{};
  int used_ = 4;
};

}  // namespace bohmslit
