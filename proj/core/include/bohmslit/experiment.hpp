#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bohmslit/born.hpp"
#include "bohmslit/dynamics.hpp"
#include "bohmslit/statistics.hpp"

namespace bohmslit {

/// How the source prepares initial positions.
///  - constrained_com: y1(0) from the Born marginal, y2(0) = -y1(0), i.e. the
///    centre of mass starts (and, by the guidance law, stays) on the x-axis.
///  - unconstrained_qeh: (y1(0), y2(0)) from the full Born density.
enum class SourceMode { constrained_com, unconstrained_qeh };

std::string_view to_string(SourceMode m);
SourceMode source_mode_from_string(std::string_view name);

enum class Theory { bqm, sqm };

std::string_view to_string(Theory t);

/// Abort fraction at or above which a BQM run is flagged.
inline constexpr double kAbortFlagFraction = 1e-3;

/// Joint detections (right screen, left screen) at t0.
struct ArrivalSet {
  std::vector<std::pair<double, double>> pairs;
  Theory theory = Theory::sqm;
  std::optional<SourceMode> source_mode;
  std::size_t n_total = 0;
  std::size_t n_aborted = 0;
  std::uint64_t seed = 0;
  std::uint64_t n_proposed = 0;
  // BQM only: initial centre of mass per accepted pair, and the largest
  // deviation of the final centre of mass from its closed form.
  std::vector<double> com_initial;
  double com_residual_max = 0;

  bool flagged() const;
  std::size_t same_side_count() const;
  double same_side_fraction() const;
  std::vector<double> right() const;
  std::vector<double> left() const;
};

std::vector<std::pair<double, double>> draw_initial_conditions(const EffectiveState& state,
                                                               SourceMode mode, std::size_t n,
                                                               std::uint64_t seed,
                                                               unsigned threads = 1);

/// Integrates n pairs to t0. Only endpoints are recorded (n_samples is
/// forced to 2); node-aborted pairs are counted and left out of `pairs`.
ArrivalSet run_bqm_ensemble(const EffectiveState& state, SourceMode mode, std::size_t n,
                            const IntegratorSettings& settings, std::uint64_t seed,
                            unsigned threads = 1);

/// Full trajectories for plotting, on the settings' sample grid.
std::vector<Trajectory> run_trajectories(const EffectiveState& state, SourceMode mode,
                                         std::size_t n, const IntegratorSettings& settings,
                                         std::uint64_t seed, unsigned threads = 1);

ArrivalSet run_sqm_ensemble(const EffectiveState& state, std::size_t n, std::uint64_t seed,
                            unsigned threads = 1);

/// Conditional left-screen pattern of pairs whose right member is in the
/// upper half (right > 0).
struct SelectiveReport {
  std::string selection_rule;
  std::size_t n_selected = 0;
  std::size_t n_total = 0;
  ScreenHistogram left_histogram;
  ScreenHistogram right_histogram;
  double left_upper_fraction = 0;
  /// TV(left histogram, mirror image of right histogram).
  double mirror_tv = 0;
};

SelectiveReport selective_detection(const ArrivalSet& arrivals, double bin_width);

/// Statistics of one arrival set against the Born rule at t0.
struct BornReference {
  double same_side_probability = 0;  // quadrature
  double joint_tv = 0;               // empirical joint cells vs Born cells
  ChiSquare joint_chi_square;
  /// TV(right-screen histogram, Born marginal). For a constrained BQM set
  /// it measures how far that ensemble is from the standard single-screen
  /// pattern. No threshold.
  double right_marginal_tv = 0;
};

struct ComparisonReport {
  std::string label_a;
  std::string label_b;  // empty when there is no second set
  double tv_distance = 0;
  ChiSquare chi_square;
  double same_side_a = 0;
  std::optional<double> same_side_b;
  std::optional<double> com_residual_max;
  BornReference born;  // for set a
  int bins_per_axis = 0;
  std::vector<std::string> notes;
};

std::string describe(const ArrivalSet& set);

/// Compares a with b (if given) over `binning`, and a with the Born rule.
ComparisonReport compare_theories(const EffectiveState& state, const ArrivalSet& a,
                                  const ArrivalSet* b, const JointBinning& binning);

}  // namespace bohmslit
