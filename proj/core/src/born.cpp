#include "bohmslit/born.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bohmslit/errors.hpp"
#include "bohmslit/parallel.hpp"
#include "bohmslit/quadrature.hpp"

namespace bohmslit {

void GridSpec::validate() const {
  if (!(std::isfinite(y_min) && std::isfinite(y_max) && y_max > y_min)) {
    throw ValidationError("grid", "requires finite y_min < y_max");
  }
  if (n_points < 16) throw ValidationError("n_points", "must be >= 16");
}

GridSpec covering_grid(const EffectiveState& state, double t,
                       const std::optional<GridSpec>& requested) {
  const auto& cfg = state.config();
  const double centre = std::abs(packet_center(cfg, Slit::A, t));
  const double width = sigma_t(cfg, t).modulus();
  if (!requested) {
    const double half = centre + kDomainMarginWidths * width;
    return GridSpec{-half, half, GridSpec{}.n_points};
  }
  requested->validate();
  const double half = centre + kMinimumMarginWidths * width;
  GridSpec g = *requested;
  g.y_min = std::min(g.y_min, -half);
  g.y_max = std::max(g.y_max, half);
  return g;
}

namespace {

QuadratureOptions kernel_options(double length, double width) {
  QuadratureOptions opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-11;
  opt.initial_pieces = std::clamp(static_cast<int>(std::ceil(length / width)), 1, 256);
  opt.max_intervals = opt.initial_pieces + 4000;
  return opt;
}

}  // namespace

BornQuadrature::BornQuadrature(const EffectiveState& state, double t,
                               const std::optional<GridSpec>& grid)
    : state_(&state),
      slice_(state, t),
      grid_(covering_grid(state, t, grid)),
      norm2_(state.norm_constant() * state.norm_constant()),
      width_(sigma_t(state.config(), t).modulus()),
      full_(kernels(Interval{})) {}

BornQuadrature::Kernels BornQuadrature::kernels(const Interval& r) const {
  const double lo = std::max(r.lo, grid_.y_min);
  const double hi = std::min(r.hi, grid_.y_max);
  Kernels k;
  if (!(hi > lo)) return k;
  const auto& packets = slice_.packets();
  const auto opt = kernel_options(hi - lo, width_);
  k.aa = integrate_adaptive<double>(
             [&](double y) { return std::exp(2.0 * packets.log_value(Slit::A, y).real()); }, lo,
             hi, opt)
             .value;
  k.bb = integrate_adaptive<double>(
             [&](double y) { return std::exp(2.0 * packets.log_value(Slit::B, y).real()); }, lo,
             hi, opt)
             .value;
  k.ab = integrate_adaptive<cplx>(
             [&](double y) {
               return std::exp(packets.log_value(Slit::A, y) +
                               std::conj(packets.log_value(Slit::B, y)));
             },
             lo, hi, opt)
             .value;
  return k;
}

namespace {

bool unbounded(const Interval& r) { return std::isinf(r.lo) && std::isinf(r.hi); }

}  // namespace

double BornQuadrature::rect_probability(const Interval& r1, const Interval& r2) const {
  const Kernels k1 = unbounded(r1) ? full_ : kernels(r1);
  const Kernels k2 = unbounded(r2) ? full_ : kernels(r2);
  const double p =
      norm2_ * (k1.aa * k2.bb + k1.bb * k2.aa + 2.0 * (k1.ab * std::conj(k2.ab)).real());
  return std::max(0.0, p);
}

double BornQuadrature::bin_probability(double Q1, double Q2) const {
  const double dq = state_->config().deltaQ;
  return rect_probability({Q1, Q1 + dq}, {Q2, Q2 + dq});
}

double BornQuadrature::marginal_density(double y) const {
  const double length = grid_.y_max - grid_.y_min;
  auto opt = kernel_options(length, width_);
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-10;
  return integrate_adaptive<double>([&](double y2) { return slice_.density(y, y2); },
                                    grid_.y_min, grid_.y_max, opt)
      .value;
}

double BornQuadrature::marginal_probability(const Interval& r) const {
  return rect_probability(r, Interval{});
}

double BornQuadrature::same_side_probability() const {
  return rect_probability({0.0, grid_.y_max}, {0.0, grid_.y_max}) +
         rect_probability({grid_.y_min, 0.0}, {grid_.y_min, 0.0});
}

double rect_probability(const EffectiveState& state, const Interval& r1, const Interval& r2,
                        double t) {
  return BornQuadrature(state, t).rect_probability(r1, r2);
}

double bin_probability(const EffectiveState& state, double Q1, double Q2, double t) {
  return BornQuadrature(state, t).bin_probability(Q1, Q2);
}

double marginal_density(const EffectiveState& state, double y, double t) {
  return BornQuadrature(state, t).marginal_density(y);
}

double same_side_probability(const EffectiveState& state, double t) {
  return BornQuadrature(state, t).same_side_probability();
}

RejectionEnvelope::RejectionEnvelope(const EffectiveState& state, double t,
                                     const std::optional<GridSpec>& grid)
    : centre_(packet_center(state.config(), Slit::A, t)),
      deviation_(kEnvelopeWidthFactor * sigma_t(state.config(), t).modulus()),
      bound_(0) {
  const GridSpec g = covering_grid(state, t, grid);
  const StateSlice slice(state, t);
  const double step = (g.y_max - g.y_min) / (g.n_points - 1);
  double worst = 0;
  for (int i = 0; i < g.n_points; ++i) {
    const double y1 = g.y_min + i * step;
    for (int j = 0; j < g.n_points; ++j) {
      const double y2 = g.y_min + j * step;
      const double q = density(y1, y2);
      if (q > 0) worst = std::max(worst, slice.density(y1, y2) / q);
    }
  }
  if (!(worst > 0)) throw SamplerError("rejection envelope: density vanishes on the grid");
  bound_ = kEnvelopeSafetyFactor * worst;
}

double RejectionEnvelope::density(double y1, double y2) const {
  const double inv_var = 1.0 / (deviation_ * deviation_);
  const double norm = inv_var / (2.0 * std::numbers::pi);
  const double a = (y1 - centre_) * (y1 - centre_) + (y2 + centre_) * (y2 + centre_);
  const double b = (y1 + centre_) * (y1 + centre_) + (y2 - centre_) * (y2 - centre_);
  return 0.5 * norm * (std::exp(-0.5 * a * inv_var) + std::exp(-0.5 * b * inv_var));
}

SampleBatch sample_joint(const EffectiveState& state, double t, std::size_t n,
                         std::uint64_t seed, StreamTag tag, unsigned threads,
                         const std::optional<GridSpec>& grid) {
  if (n == 0) throw std::invalid_argument("sample_joint: n must be >= 1");
  const RejectionEnvelope envelope(state, t, grid);
  const StateSlice slice(state, t);
  const double c = envelope.centre();
  const double s = envelope.deviation();
  const double bound = envelope.bound();
  // Per-draw cap; with acceptance >= 1e-3 this is never reached in practice.
  constexpr std::uint64_t kMaxProposalsPerDraw = 1'000'000;

  SampleBatch batch;
  batch.t = t;
  batch.seed = seed;
  batch.pairs.resize(n);
  std::vector<std::uint64_t> proposals(n, 0);

  parallel_for(n, threads, [&](std::size_t i) {
    Substream rng(seed, i, tag);
    for (std::uint64_t k = 1;; ++k) {
      const bool first_lobe = rng.uniform() < 0.5;
      const auto [z1, z2] = rng.normal_pair();
      const double y1 = (first_lobe ? c : -c) + s * z1;
      const double y2 = (first_lobe ? -c : c) + s * z2;
      const double u = rng.uniform();
      const double cap = bound * envelope.density(y1, y2);
      const double p = slice.density(y1, y2);
      if (p > cap) {
        throw EnvelopeViolated("rejection envelope violated at (" + std::to_string(y1) + ", " +
                               std::to_string(y2) + "): ratio " + std::to_string(p / cap));
      }
      if (u * cap < p) {
        batch.pairs[i] = {y1, y2};
        proposals[i] = k;
        return;
      }
      if (k == kMaxProposalsPerDraw) {
        throw EnvelopeTooTight("rejection sampler: no acceptance within " +
                               std::to_string(kMaxProposalsPerDraw) + " proposals");
      }
    }
  });

  for (auto k : proposals) batch.n_proposed += k;
  const double acceptance = static_cast<double>(n) / static_cast<double>(batch.n_proposed);
  if (acceptance < kMinimumAcceptance) {
    throw EnvelopeTooTight("rejection sampler acceptance " + std::to_string(acceptance) +
                           " below " + std::to_string(kMinimumAcceptance));
  }
  return batch;
}

}  // namespace bohmslit
