#include "bohmslit/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bohmslit/born.hpp"
#include "bohmslit/dynamics.hpp"
#include "bohmslit/entangled_state.hpp"
#include "bohmslit/experiment.hpp"
#include "bohmslit/rng.hpp"
#include "bohmslit/statistics.hpp"

namespace bohmslit {

namespace {

constexpr int kRandomPoints = 1000;
constexpr std::size_t kTrajectoryChecks = 20;
constexpr std::size_t kMirrorChecks = 5;
constexpr std::size_t kConstrainedPairs = 1000;
constexpr std::size_t kSamplerPairs = 20000;

CheckResult below(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value < threshold, value, threshold, std::move(detail)};
}

JointPoint random_point(const EffectiveState& state, Substream& rng) {
  const auto& cfg = state.config();
  const double t = state.detection_time() * rng.uniform();
  const double reach = std::abs(packet_center(cfg, Slit::A, t)) + 3.0 * sigma_t(cfg, t).modulus();
  return {reach * (2.0 * rng.uniform() - 1.0), reach * (2.0 * rng.uniform() - 1.0), t};
}

CheckResult total_momentum_identity(const EffectiveState& state, std::uint64_t seed) {
  Substream rng(seed, 0, StreamTag::validation);
  double worst = 0;
  for (int i = 0; i < kRandomPoints; ++i) {
    const auto p = random_point(state, rng);
    const auto [g1, g2] = log_grad_joint(state, p);
    const cplx lhs = cplx(0.0, -state.config().hbar) * (g1 + g2);
    const cplx rhs = total_momentum_local(state, p);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return below("total_momentum_identity", worst, 1e-10,
               "max relative error of -i hbar (g1 + g2) vs i hbar (y1 + y2) / (2 sigma0 sigma_t)");
}

CheckResult log_grad_finite_difference(const EffectiveState& state, std::uint64_t seed) {
  Substream rng(seed, 1, StreamTag::validation);
  const double h = 1e-5 * state.config().sigma0;
  double worst = 0;
  for (int i = 0; i < kRandomPoints; ++i) {
    const auto p = random_point(state, rng);
    const StateSlice slice(state, p.t);
    const cplx psi = slice.psi(p.y1, p.y2);
    const cplx fd1 = (slice.psi(p.y1 + h, p.y2) - slice.psi(p.y1 - h, p.y2)) / (2.0 * h * psi);
    const cplx fd2 = (slice.psi(p.y1, p.y2 + h) - slice.psi(p.y1, p.y2 - h)) / (2.0 * h * psi);
    const auto [g1, g2] = slice.log_grad(p.y1, p.y2);
    worst = std::max({worst, std::abs(fd1 - g1) / std::abs(g1), std::abs(fd2 - g2) / std::abs(g2)});
  }
  return below("log_grad_finite_difference", worst, 1e-5,
               "max relative error of analytic log-gradients vs central differences");
}

CheckResult commutator_order(const EffectiveState& state) {
  const auto& cfg = state.config();
  const JointPoint p{cfg.Y + 0.37 * cfg.sigma0, -cfg.Y + 0.81 * cfg.sigma0,
                     0.3 * state.detection_time()};
  const StateSlice slice(state, p.t);
  const TestFunction f = [&](double a, double b) { return slice.psi(a, b); };
  const double r2 = std::abs(commutator_residual(cfg, f, p, 1e-2 * cfg.sigma0));
  const double r3 = std::abs(commutator_residual(cfg, f, p, 1e-3 * cfg.sigma0));
  const double r4 = std::abs(commutator_residual(cfg, f, p, 1e-4 * cfg.sigma0));
  const double order_a = std::log10(r2 / r3);
  const double order_b = std::log10(r3 / r4);
  std::ostringstream detail;
  detail << "residuals " << r2 << ", " << r3 << ", " << r4 << " at h = 1e-2, 1e-3, 1e-4 sigma0";
  const double worst = std::max(std::abs(order_a - 2.0), std::abs(order_b - 2.0));
  return below("commutator_second_order", worst, 0.3, detail.str() + "; value = |order - 2|");
}

CheckResult normalization(const EffectiveState& state) {
  const double t0 = state.detection_time();
  double worst = 0;
  for (double t : {0.0, 0.5 * t0, t0}) {
    worst = std::max(worst, std::abs(1.0 - BornQuadrature(state, t).rect_probability({}, {})));
  }
  return below("normalization", worst, 1e-4, "max |1 - total probability| at t = 0, t0/2, t0");
}

CheckResult com_law(const EffectiveState& state, const IntegratorSettings& settings,
                    std::uint64_t seed) {
  const auto& cfg = state.config();
  const auto starts = sample_joint(state, 0.0, kTrajectoryChecks, seed, StreamTag::validation).pairs;
  double worst = 0;
  std::size_t aborted = 0;
  for (const auto& [a, b] : starts) {
    const auto tr = integrate_pair(state, a, b, settings);
    if (tr.status != TrajectoryStatus::completed) {
      ++aborted;
      continue;
    }
    const double scale = std::max(std::abs(tr.y_com_initial), cfg.sigma0);
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      const double com = 0.5 * (tr.y1[k] + tr.y2[k]);
      worst = std::max(worst,
                       std::abs(com - com_closed_form(cfg, tr.y_com_initial, tr.times[k])) / scale);
    }
  }
  auto r = below("com_closed_form", worst, 1e-6,
                 "max |COM(t) - closed form| / max(|y_com0|, sigma0) over unconstrained starts");
  if (aborted > 0) r.detail += "; " + std::to_string(aborted) + " node aborts";
  return r;
}

CheckResult anti_diagonal(const EffectiveState& state, const IntegratorSettings& settings,
                          std::uint64_t seed) {
  const auto starts =
      draw_initial_conditions(state, SourceMode::constrained_com, kTrajectoryChecks, seed);
  double worst = 0;
  bool aborted = false;
  for (const auto& [a, b] : starts) {
    const auto tr = integrate_pair(state, a, b, settings);
    aborted = aborted || tr.status != TrajectoryStatus::completed;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      worst = std::max(worst, std::abs(tr.y1[k] + tr.y2[k]));
    }
  }
  worst /= state.config().sigma0;
  auto r = below("anti_diagonal_invariance", worst, 1e-8, "max |y1 + y2| / sigma0 along trajectories");
  if (aborted) {
    r.passed = false;
    r.detail += "; node abort on the anti-diagonal";
  }
  return r;
}

CheckResult mirror_equivariance(const EffectiveState& state, const IntegratorSettings& settings,
                                std::uint64_t seed) {
  const auto starts =
      sample_joint(state, 0.0, kMirrorChecks, seed + 1, StreamTag::validation).pairs;
  double worst = 0;
  for (const auto& [a, b] : starts) {
    const auto fwd = integrate_pair(state, a, b, settings);
    const auto mir = integrate_pair(state, -a, -b, settings);
    if (fwd.times.size() != mir.times.size()) {
      worst = INFINITY;
      break;
    }
    for (std::size_t k = 0; k < fwd.times.size(); ++k) {
      worst = std::max({worst, std::abs(fwd.y1[k] + mir.y1[k]), std::abs(fwd.y2[k] + mir.y2[k])});
    }
  }
  return below("mirror_equivariance", worst / state.config().sigma0, 1e-10,
               "max |traj(a, b) + traj(-a, -b)| / sigma0");
}

CheckResult constrained_symmetry(const EffectiveState& state, const IntegratorSettings& settings,
                                 std::size_t n, std::uint64_t seed, unsigned threads) {
  const auto set = run_bqm_ensemble(state, SourceMode::constrained_com, n, settings, seed, threads);
  double worst = 0;
  for (const auto& [r, l] : set.pairs) worst = std::max(worst, std::abs(r + l));
  worst /= state.config().sigma0;
  auto res = below("constrained_symmetry", worst, 1e-6,
                   "max |right + left| / sigma0; same-side count must be 0");
  res.detail += " (same-side " + std::to_string(set.same_side_count()) + ", aborted " +
                std::to_string(set.n_aborted) + ")";
  res.passed = res.passed && set.same_side_count() == 0 && set.n_aborted == 0;
  return res;
}

CheckResult sampler_vs_quadrature(const EffectiveState& state, const EnsembleSettings& ens,
                                  unsigned threads) {
  const double t0 = state.detection_time();
  const auto set = run_sqm_ensemble(state, kSamplerPairs, ens.seed, threads);
  const auto binning = JointBinning::for_state(state, t0, ens.joint_bins);
  const auto cells = born_cell_probabilities(BornQuadrature(state, t0), binning);
  const auto chi = chi_square_goodness(bin_pairs(set.pairs, binning), cells);
  CheckResult r{"sampler_vs_quadrature", chi.p_value > 1e-3, chi.p_value, 1e-3,
                "chi-square p-value of Born samples vs quadrature cells (n = " +
                    std::to_string(kSamplerPairs) + ", dof = " + std::to_string(chi.dof) + ")"};
  return r;
}

}  // namespace

std::vector<CheckResult> run_validation_suite(const RunConfig& cfg) {
  const EffectiveState state(cfg.physical);
  const auto seed = cfg.ensemble.seed;
  std::vector<CheckResult> checks;
  checks.push_back(total_momentum_identity(state, seed));
  checks.push_back(log_grad_finite_difference(state, seed));
  checks.push_back(commutator_order(state));
  checks.push_back(normalization(state));
  checks.push_back(com_law(state, cfg.integrator, seed));
  checks.push_back(anti_diagonal(state, cfg.integrator, seed));
  checks.push_back(mirror_equivariance(state, cfg.integrator, seed));
  checks.push_back(constrained_symmetry(state, cfg.integrator,
                                        std::min(cfg.ensemble.n, kConstrainedPairs), seed,
                                        cfg.threads));
  checks.push_back(sampler_vs_quadrature(state, cfg.ensemble, cfg.threads));
  return checks;
}

}  // namespace bohmslit
