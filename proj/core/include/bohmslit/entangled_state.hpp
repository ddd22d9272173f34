#pragma once

#include <complex>
#include <functional>
#include <utility>

#include "bohmslit/model.hpp"

namespace bohmslit {

struct JointPoint {
  double y1;
  double y2;
  double t;
};

/// Default node guard: |psi| below this fraction of |term1| + |term2| is a node.
inline constexpr double kDefaultNodeEpsilon = 1e-12;

/// Normalized transverse two-particle state of the detected sector
/// (particle 1 heading for the right screen):
///
///   psi(y1, y2, t) = N [f_A(y1) f_B(y2) + f_B(y1) f_A(y2)]
///
/// The exchange sign only multiplies the other sector, so it never enters.
/// Immutable after construction.
class EffectiveState {
 public:
  /// Validates the config and cross-checks the analytic normalization
  /// against quadrature of the overlap integral.
  explicit EffectiveState(PhysicalConfig cfg);

  const PhysicalConfig& config() const { return cfg_; }
  double norm_constant() const { return norm_; }
  double detection_time() const { return t0_; }

 private:
  PhysicalConfig cfg_;
  double norm_;
  double t0_;
};

/// N = [2 (1 + |<f_A|f_B>|^2)]^(-1/2).
double compute_normalization(const PhysicalConfig& cfg);

/// Evaluates psi, its density and log-gradients at one time. Amortizes the
/// t-dependent constants when many points share a time, which is what the
/// integrator and the samplers do.
class StateSlice {
 public:
  StateSlice(const EffectiveState& state, double t);

  cplx psi(double y1, double y2) const;
  double density(double y1, double y2) const;

  /// (d/dy1 ln psi, d/dy2 ln psi). Throws NodeError when the two branches
  /// cancel to within node_epsilon of their combined magnitude.
  std::pair<cplx, cplx> log_grad(double y1, double y2,
                                 double node_epsilon = kDefaultNodeEpsilon) const;

  const PacketSlice& packets() const { return packets_; }
  double time() const { return packets_.time(); }

 private:
  PacketSlice packets_;
  double norm_;
};

cplx psi_eff(const EffectiveState& state, const JointPoint& p);
double joint_density(const EffectiveState& state, const JointPoint& p);
std::pair<cplx, cplx> log_grad_joint(const EffectiveState& state, const JointPoint& p,
                                     double node_epsilon = kDefaultNodeEpsilon);

/// Local value of (p_y1 + p_y2) on psi: i hbar (y1 + y2) / (2 sigma0 sigma_t).
/// Closed form; no quotient, so no node restriction.
cplx total_momentum_local(const EffectiveState& state, const JointPoint& p);

using TestFunction = std::function<cplx(double y1, double y2)>;

/// Central-difference evaluation of ([p_y1 + p_y2, y1 - y2] f)(p) with step h.
/// The exact commutator vanishes, so this returns pure truncation/rounding
/// error, O(h^2) for smooth f.
cplx commutator_residual(const PhysicalConfig& cfg, const TestFunction& f,
                         const JointPoint& p, double h);

}  // namespace bohmslit
