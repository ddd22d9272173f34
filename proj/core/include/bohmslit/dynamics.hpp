#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "bohmslit/entangled_state.hpp"

namespace bohmslit {

enum class IntegratorMethod { rk4_fixed, rk45_adaptive };

std::string_view to_string(IntegratorMethod m);
IntegratorMethod integrator_method_from_string(std::string_view name);

struct IntegratorSettings {
  IntegratorMethod method = IntegratorMethod::rk45_adaptive;
  double dt = 1e-2;          // rk4_fixed step (time units)
  double rel_tol = 1e-9;     // rk45_adaptive
  double abs_tol = 1e-12;    // rk45_adaptive, in units of sigma0
  double node_epsilon = kDefaultNodeEpsilon;
  long max_steps = 1'000'000;
  int n_samples = 200;       // uniformly spaced records on [0, t0], endpoints included

  /// Throws ValidationError naming the offending field.
  void validate() const;

  bool operator==(const IntegratorSettings&) const = default;
};

enum class TrajectoryStatus { completed, node_aborted };

/// A Bohmian pair sampled on a uniform time grid from t = 0 towards t0.
/// A node-aborted trajectory keeps the samples reached before the abort.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> y1;
  std::vector<double> y2;
  TrajectoryStatus status = TrajectoryStatus::completed;
  double y_com_initial = 0;
  long steps = 0;  // accepted + rejected steps, or fixed steps
};

struct Velocity {
  double v1;
  double v2;
};

/// Guidance law (hbar/m) Im(d ln psi / dy_i). NodeError propagates.
Velocity guidance_velocity(const EffectiveState& state, const JointPoint& p,
                           double node_epsilon = kDefaultNodeEpsilon);

/// Integrates one pair from t = 0 to the detection time t0.
///
/// Detection happens at the fixed time t0 rather than at an x-plane crossing:
/// the longitudinal motion is ballistic at hbar kx / m, so both coincide.
/// Returns a node_aborted trajectory if the path hits a node; throws
/// StepLimitExceeded when max_steps is exhausted.
Trajectory integrate_pair(const EffectiveState& state, double y1_0, double y2_0,
                          const IntegratorSettings& settings);

/// Centre of mass y(t) = y(0) sqrt(1 + (hbar t / 2 m sigma0^2)^2).
double com_closed_form(const PhysicalConfig& cfg, double y_com_0, double t);

/// Analytic trajectory of a lone packet from `slit`:
/// c(t) + (y_0 - c(0)) sqrt(1 + (hbar t / 2 m sigma0^2)^2).
double single_packet_trajectory(const PhysicalConfig& cfg, Slit slit, double y_0, double t);

/// (y1(t0), y2(t0)). Throws IncompleteTrajectory unless completed.
std::pair<double, double> arrivals(const Trajectory& traj);

}  // namespace bohmslit
