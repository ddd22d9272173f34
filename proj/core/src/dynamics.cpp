#include "bohmslit/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "bohmslit/errors.hpp"

namespace bohmslit {

std::string_view to_string(IntegratorMethod m) {
  return m == IntegratorMethod::rk4_fixed ? "rk4_fixed" : "rk45_adaptive";
}

IntegratorMethod integrator_method_from_string(std::string_view name) {
  if (name == "rk4_fixed") return IntegratorMethod::rk4_fixed;
  if (name == "rk45_adaptive") return IntegratorMethod::rk45_adaptive;
  throw ValidationError("method", "expected \"rk4_fixed\" or \"rk45_adaptive\", got \"" +
                                      std::string(name) + "\"");
}

void IntegratorSettings::validate() const {
  if (!(std::isfinite(dt) && dt > 0)) throw ValidationError("dt", "must be finite and > 0");
  if (!(std::isfinite(rel_tol) && rel_tol > 0))
    throw ValidationError("rel_tol", "must be finite and > 0");
  if (!(std::isfinite(abs_tol) && abs_tol > 0))
    throw ValidationError("abs_tol", "must be finite and > 0");
  if (!(std::isfinite(node_epsilon) && node_epsilon > 0 && node_epsilon < 1))
    throw ValidationError("node_epsilon", "must lie in (0, 1)");
  if (max_steps <= 0) throw ValidationError("max_steps", "must be > 0");
  if (n_samples < 2) throw ValidationError("n_samples", "must be >= 2");
}

Velocity guidance_velocity(const EffectiveState& state, const JointPoint& p,
                           double node_epsilon) {
  const auto [g1, g2] = log_grad_joint(state, p, node_epsilon);
  const double scale = state.config().hbar / state.config().mass;
  return {scale * g1.imag(), scale * g2.imag()};
}

namespace {

using State2 = std::array<double, 2>;

class GuidanceField {
 public:
  GuidanceField(const EffectiveState& state, double node_epsilon)
      : state_(state),
        node_epsilon_(node_epsilon),
        scale_(state.config().hbar / state.config().mass) {}

  State2 operator()(double t, const State2& y) const {
    const auto [g1, g2] = StateSlice(state_, t).log_grad(y[0], y[1], node_epsilon_);
    return {scale_ * g1.imag(), scale_ * g2.imag()};
  }

 private:
  const EffectiveState& state_;
  double node_epsilon_;
  double scale_;
};

State2 axpy(const State2& y, double h, std::initializer_list<std::pair<double, const State2*>> terms) {
  State2 out = y;
  for (int i = 0; i < 2; ++i) {
    double acc = 0;
    for (const auto& [c, k] : terms) acc += c * (*k)[i];
    out[i] += h * acc;
  }
  return out;
}

std::vector<double> sample_grid(double t0, int n) {
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) grid[j] = t0 * static_cast<double>(j) / (n - 1);
  grid.back() = t0;
  return grid;
}

void record(Trajectory& traj, double t, const State2& y) {
  traj.times.push_back(t);
  traj.y1.push_back(y[0]);
  traj.y2.push_back(y[1]);
}

// Dormand-Prince 5(4) tableau.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

void integrate_rk45(const GuidanceField& f, const std::vector<double>& grid, State2 y,
                    const IntegratorSettings& s, double atol, Trajectory& traj) {
  const double t_end = grid.back();
  double t = 0;
  double h = 1e-4 * t_end;
  State2 k1 = f(t, y);
  std::size_t next = 1;

  while (next < grid.size()) {
    if (++traj.steps > s.max_steps) {
      throw StepLimitExceeded("rk45: exceeded max_steps=" + std::to_string(s.max_steps) +
                              " at t=" + std::to_string(t));
    }
    const double target = grid[next];
    const bool clipped = t + h >= target;
    const double step = clipped ? target - t : h;

    const State2 k2 = f(t + dp::c2 * step, axpy(y, step, {{dp::a21, &k1}}));
    const State2 k3 = f(t + dp::c3 * step, axpy(y, step, {{dp::a31, &k1}, {dp::a32, &k2}}));
    const State2 k4 =
        f(t + dp::c4 * step, axpy(y, step, {{dp::a41, &k1}, {dp::a42, &k2}, {dp::a43, &k3}}));
    const State2 k5 = f(t + dp::c5 * step,
                        axpy(y, step, {{dp::a51, &k1}, {dp::a52, &k2}, {dp::a53, &k3}, {dp::a54, &k4}}));
    const State2 k6 =
        f(t + step, axpy(y, step,
                         {{dp::a61, &k1}, {dp::a62, &k2}, {dp::a63, &k3}, {dp::a64, &k4}, {dp::a65, &k5}}));
    const State2 y_new = axpy(
        y, step, {{dp::b1, &k1}, {dp::b3, &k3}, {dp::b4, &k4}, {dp::b5, &k5}, {dp::b6, &k6}});
    const double t_new = clipped ? target : t + step;
    const State2 k7 = f(t_new, y_new);

    double err = 0;
    for (int i = 0; i < 2; ++i) {
      const double e = step * (dp::e1 * k1[i] + dp::e3 * k3[i] + dp::e4 * k4[i] + dp::e5 * k5[i] +
                               dp::e6 * k6[i] + dp::e7 * k7[i]);
      const double sc = atol + s.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / 2.0);

    if (err <= 1.0) {
      t = t_new;
      y = y_new;
      k1 = k7;
      if (clipped) record(traj, grid[next++], y);
      const double fac = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      const double proposed = step * fac;
      h = clipped ? std::max(h, proposed) : proposed;
    } else {
      h = step * std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
}

void integrate_rk4(const GuidanceField& f, const std::vector<double>& grid, State2 y,
                   const IntegratorSettings& s, Trajectory& traj) {
  double t = 0;
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double span = grid[j] - t;
    const long n = std::max(1L, static_cast<long>(std::ceil(span / s.dt - 1e-9)));
    const double h = span / n;
    for (long i = 0; i < n; ++i) {
      if (++traj.steps > s.max_steps) {
        throw StepLimitExceeded("rk4: exceeded max_steps=" + std::to_string(s.max_steps));
      }
      const double ts = grid[j - 1] + i * h;
      const State2 k1 = f(ts, y);
      const State2 k2 = f(ts + 0.5 * h, axpy(y, h, {{0.5, &k1}}));
      const State2 k3 = f(ts + 0.5 * h, axpy(y, h, {{0.5, &k2}}));
      const State2 k4 = f(ts + h, axpy(y, h, {{1.0, &k3}}));
      y = axpy(y, h, {{1.0 / 6, &k1}, {1.0 / 3, &k2}, {1.0 / 3, &k3}, {1.0 / 6, &k4}});
    }
    t = grid[j];
    record(traj, t, y);
  }
}

}  // namespace

Trajectory integrate_pair(const EffectiveState& state, double y1_0, double y2_0,
                          const IntegratorSettings& settings) {
  settings.validate();
  const auto grid = sample_grid(state.detection_time(), settings.n_samples);
  const GuidanceField field(state, settings.node_epsilon);

  Trajectory traj;
  traj.y_com_initial = 0.5 * (y1_0 + y2_0);
  traj.times.reserve(grid.size());
  traj.y1.reserve(grid.size());
  traj.y2.reserve(grid.size());
  const State2 start{y1_0, y2_0};
  record(traj, 0.0, start);

  try {
    if (settings.method == IntegratorMethod::rk45_adaptive) {
      integrate_rk45(field, grid, start, settings, settings.abs_tol * state.config().sigma0, traj);
    } else {
      integrate_rk4(field, grid, start, settings, traj);
    }
  } catch (const NodeError&) {
    traj.status = TrajectoryStatus::node_aborted;
  }
  return traj;
}

double com_closed_form(const PhysicalConfig& cfg, double y_com_0, double t) {
  const double spread = cfg.hbar * t / (2.0 * cfg.mass * cfg.sigma0 * cfg.sigma0);
  return y_com_0 * std::sqrt(1.0 + spread * spread);
}

double single_packet_trajectory(const PhysicalConfig& cfg, Slit slit, double y_0, double t) {
  const double spread = cfg.hbar * t / (2.0 * cfg.mass * cfg.sigma0 * cfg.sigma0);
  return packet_center(cfg, slit, t) +
         (y_0 - packet_center(cfg, slit, 0.0)) * std::sqrt(1.0 + spread * spread);
}

std::pair<double, double> arrivals(const Trajectory& traj) {
  if (traj.status != TrajectoryStatus::completed || traj.times.empty()) {
    throw IncompleteTrajectory("arrivals requested from a trajectory that did not reach t0");
  }
  return {traj.y1.back(), traj.y2.back()};
}

}  // namespace bohmslit
