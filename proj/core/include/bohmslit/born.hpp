#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "bohmslit/entangled_state.hpp"
#include "bohmslit/rng.hpp"

namespace bohmslit {

/// Truncated integration domain (the same along both axes) plus the
/// resolution of the density grid used to bound the rejection envelope.
struct GridSpec {
  double y_min = 0;
  double y_max = 0;
  int n_points = 257;

  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

/// Half-width beyond each packet centre, in units of |sigma_t|, that the
/// automatic domain covers. Tail mass past 8 |sigma_t| is ~1e-15.
inline constexpr double kDomainMarginWidths = 8.0;
/// Minimum margin a user-supplied grid is extended to.
inline constexpr double kMinimumMarginWidths = 6.0;

/// Domain used at time t. Without a request it spans each packet centre
/// +-8 |sigma_t|; a requested grid is widened where it covers less than
/// +-6 |sigma_t|.
GridSpec covering_grid(const EffectiveState& state, double t,
                       const std::optional<GridSpec>& requested = std::nullopt);

/// Half-open interval [lo, hi). Infinite ends are clipped to the domain.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// Born-rule probabilities at one time.
///
/// |psi|^2 is a sum of three products of one-variable functions, so every
/// rectangle integral reduces to 1D adaptive quadratures of the kernels
/// |f_A|^2, |f_B|^2 and f_A conj(f_B) (a tensor-product rule that is exact
/// for this integrand).
class BornQuadrature {
 public:
  BornQuadrature(const EffectiveState& state, double t,
                 const std::optional<GridSpec>& grid = std::nullopt);

  double rect_probability(const Interval& r1, const Interval& r2) const;
  /// P(y1 in [Q1, Q1 + deltaQ), y2 in [Q2, Q2 + deltaQ)).
  double bin_probability(double Q1, double Q2) const;
  /// Integral over y2 of |psi(y, y2)|^2, by direct quadrature.
  double marginal_density(double y) const;
  /// Probability of y1 in r, y2 anywhere.
  double marginal_probability(const Interval& r) const;
  /// P(y1 y2 > 0).
  double same_side_probability() const;

  const GridSpec& grid() const { return grid_; }
  double time() const { return slice_.time(); }

 private:
  struct Kernels {
    double aa = 0;
    double bb = 0;
    cplx ab{};
  };
  Kernels kernels(const Interval& r) const;

  const EffectiveState* state_;
  StateSlice slice_;
  GridSpec grid_;
  double norm2_;
  double width_;
  Kernels full_;
};

double rect_probability(const EffectiveState& state, const Interval& r1, const Interval& r2,
                        double t);
double bin_probability(const EffectiveState& state, double Q1, double Q2, double t);
double marginal_density(const EffectiveState& state, double y, double t);
double same_side_probability(const EffectiveState& state, double t);

struct SampleBatch {
  std::vector<std::pair<double, double>> pairs;
  double t = 0;
  std::uint64_t seed = 0;
  std::uint64_t n_proposed = 0;
};

/// Mixture of two isotropic Gaussians on the anti-diagonal lobes
/// (c, -c) and (-c, c), standard deviation 1.2 |sigma_t|, scaled by
/// 1.3 x the largest density/envelope ratio found on the grid.
class RejectionEnvelope {
 public:
  RejectionEnvelope(const EffectiveState& state, double t,
                    const std::optional<GridSpec>& grid = std::nullopt);

  double density(double y1, double y2) const;
  double bound() const { return bound_; }
  double centre() const { return centre_; }
  double deviation() const { return deviation_; }

 private:
  double centre_;
  double deviation_;
  double bound_;
};

inline constexpr double kEnvelopeWidthFactor = 1.2;
inline constexpr double kEnvelopeSafetyFactor = 1.3;
inline constexpr double kMinimumAcceptance = 1e-3;

/// n i.i.d. draws from |psi(., ., t)|^2. Draw i uses its own Philox
/// substream (seed, i, tag), so the batch is independent of `threads`.
SampleBatch sample_joint(const EffectiveState& state, double t, std::size_t n,
                         std::uint64_t seed, StreamTag tag = StreamTag::born_sampling,
                         unsigned threads = 1,
                         const std::optional<GridSpec>& grid = std::nullopt);

}  // namespace bohmslit
