#include "bohmslit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bohmslit/errors.hpp"
#include "bohmslit/parallel.hpp"

namespace bohmslit {

std::string_view to_string(SourceMode m) {
  return m == SourceMode::constrained_com ? "constrained_com" : "unconstrained_qeh";
}

SourceMode source_mode_from_string(std::string_view name) {
  if (name == "constrained_com") return SourceMode::constrained_com;
  if (name == "unconstrained_qeh") return SourceMode::unconstrained_qeh;
  throw ValidationError("mode", "expected \"constrained_com\" or \"unconstrained_qeh\", got \"" +
                                    std::string(name) + "\"");
}

std::string_view to_string(Theory t) { return t == Theory::bqm ? "bqm" : "sqm"; }

bool ArrivalSet::flagged() const {
  return n_total > 0 &&
         static_cast<double>(n_aborted) / static_cast<double>(n_total) >= kAbortFlagFraction;
}

std::size_t ArrivalSet::same_side_count() const {
  return static_cast<std::size_t>(std::count_if(
      pairs.begin(), pairs.end(), [](const auto& p) { return p.first * p.second > 0; }));
}

double ArrivalSet::same_side_fraction() const {
  return pairs.empty() ? 0.0
                       : static_cast<double>(same_side_count()) / static_cast<double>(pairs.size());
}

std::vector<double> ArrivalSet::right() const {
  std::vector<double> out(pairs.size());
  std::transform(pairs.begin(), pairs.end(), out.begin(), [](const auto& p) { return p.first; });
  return out;
}

std::vector<double> ArrivalSet::left() const {
  std::vector<double> out(pairs.size());
  std::transform(pairs.begin(), pairs.end(), out.begin(), [](const auto& p) { return p.second; });
  return out;
}

namespace {

// The y1-marginal of a joint draw is a draw from the marginal density, so
// both modes share one sampler and differ only in how y2 is set.
SampleBatch initial_batch(const EffectiveState& state, SourceMode mode, std::size_t n,
                          std::uint64_t seed, unsigned threads) {
  auto batch = sample_joint(state, 0.0, n, seed, StreamTag::initial_conditions, threads);
  if (mode == SourceMode::constrained_com) {
    for (auto& [y1, y2] : batch.pairs) y2 = -y1;
  }
  return batch;
}

}  // namespace

std::vector<std::pair<double, double>> draw_initial_conditions(const EffectiveState& state,
                                                               SourceMode mode, std::size_t n,
                                                               std::uint64_t seed,
                                                               unsigned threads) {
  return initial_batch(state, mode, n, seed, threads).pairs;
}

ArrivalSet run_bqm_ensemble(const EffectiveState& state, SourceMode mode, std::size_t n,
                            const IntegratorSettings& settings, std::uint64_t seed,
                            unsigned threads) {
  if (n == 0) throw std::invalid_argument("run_bqm_ensemble: n must be >= 1");
  IntegratorSettings endpoint_only = settings;
  endpoint_only.n_samples = 2;
  endpoint_only.validate();

  const auto batch = initial_batch(state, mode, n, seed, threads);
  const auto& starts = batch.pairs;
  std::vector<std::optional<std::pair<double, double>>> ends(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto traj = integrate_pair(state, starts[i].first, starts[i].second, endpoint_only);
    if (traj.status == TrajectoryStatus::completed) ends[i] = arrivals(traj);
  });

  ArrivalSet set;
  set.theory = Theory::bqm;
  set.source_mode = mode;
  set.n_total = n;
  set.seed = seed;
  set.n_proposed = batch.n_proposed;
  const double t0 = state.detection_time();
  for (std::size_t i = 0; i < n; ++i) {
    if (!ends[i]) {
      ++set.n_aborted;
      continue;
    }
    const double com0 = 0.5 * (starts[i].first + starts[i].second);
    const auto [right, left] = *ends[i];
    set.pairs.emplace_back(right, left);
    set.com_initial.push_back(com0);
    set.com_residual_max =
        std::max(set.com_residual_max,
                 std::abs(0.5 * (right + left) - com_closed_form(state.config(), com0, t0)));
  }
  return set;
}

std::vector<Trajectory> run_trajectories(const EffectiveState& state, SourceMode mode,
                                         std::size_t n, const IntegratorSettings& settings,
                                         std::uint64_t seed, unsigned threads) {
  settings.validate();
  const auto starts = draw_initial_conditions(state, mode, n, seed, threads);
  std::vector<Trajectory> out(n);
  parallel_for(n, threads, [&](std::size_t i) {
    out[i] = integrate_pair(state, starts[i].first, starts[i].second, settings);
  });
  return out;
}

ArrivalSet run_sqm_ensemble(const EffectiveState& state, std::size_t n, std::uint64_t seed,
                            unsigned threads) {
  auto batch =
      sample_joint(state, state.detection_time(), n, seed, StreamTag::born_sampling, threads);
  ArrivalSet set;
  set.theory = Theory::sqm;
  set.n_total = n;
  set.seed = seed;
  set.n_proposed = batch.n_proposed;
  set.pairs = std::move(batch.pairs);
  return set;
}

SelectiveReport selective_detection(const ArrivalSet& arrivals, double bin_width) {
  SelectiveReport r;
  r.selection_rule = "right > 0 (right-screen detection in the upper half)";
  r.n_total = arrivals.pairs.size();
  std::vector<double> right;
  std::vector<double> left;
  for (const auto& [rv, lv] : arrivals.pairs) {
    if (rv > 0) {
      right.push_back(rv);
      left.push_back(lv);
    }
  }
  r.n_selected = right.size();
  r.right_histogram = make_histogram(right, bin_width);
  r.left_histogram = make_histogram(left, bin_width);
  if (r.n_selected > 0) {
    r.left_upper_fraction =
        static_cast<double>(r.left_histogram.upper) / static_cast<double>(r.n_selected);
  }
  r.mirror_tv = tv_distance(r.left_histogram, r.right_histogram.mirrored());
  return r;
}

std::string describe(const ArrivalSet& set) {
  std::string s(to_string(set.theory));
  if (set.source_mode) s += "/" + std::string(to_string(*set.source_mode));
  return s;
}

ComparisonReport compare_theories(const EffectiveState& state, const ArrivalSet& a,
                                  const ArrivalSet* b, const JointBinning& binning) {
  if (a.pairs.empty()) throw std::invalid_argument("compare_theories: empty arrival set");
  if (b && b->pairs.empty()) throw std::invalid_argument("compare_theories: empty arrival set");

  const double t0 = state.detection_time();
  const BornQuadrature born(state, t0);
  const auto cells = born_cell_probabilities(born, binning);
  const auto ha = bin_pairs(a.pairs, binning);

  ComparisonReport r;
  r.label_a = describe(a);
  r.bins_per_axis = binning.bins_per_axis();
  r.same_side_a = a.same_side_fraction();
  r.born.same_side_probability = born.same_side_probability();
  r.born.joint_tv = tv_distance(ha, cells);
  r.born.joint_chi_square = chi_square_goodness(ha, cells);
  r.born.right_marginal_tv =
      tv_distance_to_marginal(make_histogram(a.right(), state.config().deltaQ), born);

  if (b) {
    const auto hb = bin_pairs(b->pairs, binning);
    r.label_b = describe(*b);
    r.tv_distance = tv_distance(ha, hb);
    r.chi_square = chi_square_two_sample(ha, hb);
    r.same_side_b = b->same_side_fraction();
  }

  for (const ArrivalSet* s : {&a, b}) {
    if (s && s->theory == Theory::bqm) {
      r.com_residual_max = std::max(r.com_residual_max.value_or(0.0), s->com_residual_max);
    }
  }

  r.notes.push_back("exchange_sign=" + std::string(to_string(state.config().exchange_sign)) +
                    " is recorded only; detected-sector densities and velocities do not depend "
                    "on it");
  r.notes.push_back(
      "born.right_marginal_tv measures how far set a's right-screen pattern is from the Born "
      "single-screen marginal; for a constrained_com set it shows whether the constrained source "
      "still produces the standard single-screen pattern. No pass/fail threshold applies");
  for (const ArrivalSet* s : {&a, b}) {
    if (!s) continue;
    if (s->flagged()) {
      std::ostringstream msg;
      msg << describe(*s) << ": run flagged, " << s->n_aborted << " of " << s->n_total
          << " trajectories aborted at nodes";
      r.notes.push_back(msg.str());
    }
    if (s->source_mode == SourceMode::constrained_com && s->n_aborted > 0) {
      r.notes.push_back(describe(*s) +
                        ": unexpected node abort on the anti-diagonal (the symmetric state has "
                        "no nodes there when ky = 0)");
    }
  }
  return r;
}

}  // namespace bohmslit
