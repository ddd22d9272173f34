#include "bohmslit/entangled_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bohmslit/errors.hpp"
#include "bohmslit/quadrature.hpp"

namespace bohmslit {

namespace {

// <f_A|f_B> at t = 0 by quadrature; the integrand is centred at 0 with
// standard deviation sigma0 and oscillates at 2 ky.
double overlap_by_quadrature(const PhysicalConfig& cfg) {
  const PacketSlice slice(cfg, 0.0);
  const double half = 12.0 * cfg.sigma0;
  auto integrand = [&](double y) {
    return std::exp(std::conj(slice.log_value(Slit::A, y)) + slice.log_value(Slit::B, y));
  };
  QuadratureOptions opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-12;
  opt.initial_pieces =
      std::clamp(static_cast<int>(std::ceil(2.0 * half * std::abs(cfg.ky))), 8, 4096);
  opt.max_intervals = 8 * opt.initial_pieces + 2000;
  return integrate_adaptive<cplx>(integrand, -half, half, opt).value.real();
}

}  // namespace

double compute_normalization(const PhysicalConfig& cfg) {
  const double overlap = packet_overlap(cfg);
  return 1.0 / std::sqrt(2.0 * (1.0 + overlap * overlap));
}

EffectiveState::EffectiveState(PhysicalConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  norm_ = compute_normalization(cfg_);
  t0_ = bohmslit::detection_time(cfg_);

  const double analytic = packet_overlap(cfg_);
  const double numeric = overlap_by_quadrature(cfg_);
  if (std::abs(analytic - numeric) > 1e-9) {
    throw NumericalError("packet overlap mismatch: analytic " + std::to_string(analytic) +
                         " vs quadrature " + std::to_string(numeric));
  }
}

StateSlice::StateSlice(const EffectiveState& state, double t)
    : packets_(state.config(), t),
      norm_(state.norm_constant()) {}

cplx StateSlice::psi(double y1, double y2) const {
  const cplx t1 = packets_.log_value(Slit::A, y1) + packets_.log_value(Slit::B, y2);
  const cplx t2 = packets_.log_value(Slit::B, y1) + packets_.log_value(Slit::A, y2);
  return norm_ * (std::exp(t1) + std::exp(t2));
}

double StateSlice::density(double y1, double y2) const {
  return std::norm(psi(y1, y2));
}

std::pair<cplx, cplx> StateSlice::log_grad(double y1, double y2, double node_epsilon) const {
  const cplx t1 = packets_.log_value(Slit::A, y1) + packets_.log_value(Slit::B, y2);
  const cplx t2 = packets_.log_value(Slit::B, y1) + packets_.log_value(Slit::A, y2);
  // Scale both branches by the larger modulus so far tails do not underflow.
  const double top = std::max(t1.real(), t2.real());
  const cplx w1 = std::exp(t1 - top);
  const cplx w2 = std::exp(t2 - top);
  const cplx sum = w1 + w2;
  if (std::abs(sum) <= node_epsilon * (std::abs(w1) + std::abs(w2))) {
    throw NodeError("wavefunction node at (" + std::to_string(y1) + ", " + std::to_string(y2) +
                    ", t=" + std::to_string(time()) + ")");
  }
  const cplx a1 = packets_.log_grad(Slit::A, y1);
  const cplx b1 = packets_.log_grad(Slit::B, y1);
  const cplx a2 = packets_.log_grad(Slit::A, y2);
  const cplx b2 = packets_.log_grad(Slit::B, y2);
  return {(a1 * w1 + b1 * w2) / sum, (b2 * w1 + a2 * w2) / sum};
}

cplx psi_eff(const EffectiveState& state, const JointPoint& p) {
  return StateSlice(state, p.t).psi(p.y1, p.y2);
}

double joint_density(const EffectiveState& state, const JointPoint& p) {
  return StateSlice(state, p.t).density(p.y1, p.y2);
}

std::pair<cplx, cplx> log_grad_joint(const EffectiveState& state, const JointPoint& p,
                                     double node_epsilon) {
  return StateSlice(state, p.t).log_grad(p.y1, p.y2, node_epsilon);
}

cplx total_momentum_local(const EffectiveState& state, const JointPoint& p) {
  const auto& cfg = state.config();
  const cplx st = sigma_t(cfg, p.t).value;
  return cplx(0.0, cfg.hbar) * (p.y1 + p.y2) / (2.0 * cfg.sigma0 * st);
}

cplx commutator_residual(const PhysicalConfig& cfg, const TestFunction& f, const JointPoint& p,
                         double h) {
  if (!(h > 0)) throw std::invalid_argument("commutator_residual: h must be > 0");
  auto x_times_f = [&](double a, double b) { return (a - b) * f(a, b); };
  // (d/dy1 + d/dy2) g by central differences.
  auto total_derivative = [&](auto&& g) {
    return (g(p.y1 + h, p.y2) - g(p.y1 - h, p.y2)) / (2.0 * h) +
           (g(p.y1, p.y2 + h) - g(p.y1, p.y2 - h)) / (2.0 * h);
  };
  const cplx minus_i_hbar(0.0, -cfg.hbar);
  const cplx p_of_xf = minus_i_hbar * total_derivative(x_times_f);
  const cplx x_of_pf = (p.y1 - p.y2) * (minus_i_hbar * total_derivative(f));
  return p_of_xf - x_of_pf;
}

}  // namespace bohmslit
