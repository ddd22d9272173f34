#include "bohmslit/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace bohmslit {

long bin_index(double y, double width) {
  return static_cast<long>(std::floor(y / width));
}

std::uint64_t ScreenHistogram::count(long bin) const {
  if (counts.empty() || bin < first_bin || bin > last_bin()) return 0;
  return counts[static_cast<std::size_t>(bin - first_bin)];
}

std::vector<double> ScreenHistogram::left_edges() const {
  std::vector<double> edges(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    edges[i] = static_cast<double>(first_bin + static_cast<long>(i)) * width;
  }
  return edges;
}

ScreenHistogram ScreenHistogram::mirrored() const {
  ScreenHistogram m;
  m.width = width;
  m.upper = lower;
  m.lower = upper;
  if (counts.empty()) return m;
  m.first_bin = -last_bin() - 1;
  m.counts.assign(counts.rbegin(), counts.rend());
  return m;
}

ScreenHistogram make_histogram(std::span<const double> values, double width) {
  if (!(width > 0)) throw std::invalid_argument("make_histogram: width must be > 0");
  ScreenHistogram h;
  h.width = width;
  if (values.empty()) return h;
  long lo = bin_index(values.front(), width);
  long hi = lo;
  for (double v : values) {
    const long k = bin_index(v, width);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  h.first_bin = lo;
  h.counts.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  for (double v : values) {
    ++h.counts[static_cast<std::size_t>(bin_index(v, width) - lo)];
    if (v > 0) {
      ++h.upper;
    } else {
      ++h.lower;
    }
  }
  return h;
}

double tv_distance(const ScreenHistogram& a, const ScreenHistogram& b) {
  const double na = static_cast<double>(a.total());
  const double nb = static_cast<double>(b.total());
  if (na == 0 && nb == 0) return 0.0;
  if (na == 0 || nb == 0) return 1.0;
  long lo = std::min(a.counts.empty() ? b.first_bin : a.first_bin,
                     b.counts.empty() ? a.first_bin : b.first_bin);
  long hi = std::max(a.counts.empty() ? b.last_bin() : a.last_bin(),
                     b.counts.empty() ? a.last_bin() : b.last_bin());
  double sum = 0;
  for (long k = lo; k <= hi; ++k) {
    sum += std::abs(static_cast<double>(a.count(k)) / na - static_cast<double>(b.count(k)) / nb);
  }
  return 0.5 * sum;
}

double tv_distance_to_marginal(const ScreenHistogram& h, const BornQuadrature& born) {
  const double w = h.width;
  const auto& g = born.grid();
  long lo = bin_index(g.y_min, w);
  long hi = bin_index(g.y_max, w);
  const double n = static_cast<double>(h.total());
  if (!h.counts.empty()) {
    lo = std::min(lo, h.first_bin);
    hi = std::max(hi, h.last_bin());
  }
  double sum = 0;
  double covered = 0;
  for (long k = lo; k <= hi; ++k) {
    const double p = born.marginal_probability({k * w, (k + 1) * w});
    covered += p;
    const double f = n > 0 ? static_cast<double>(h.count(k)) / n : 0.0;
    sum += std::abs(f - p);
  }
  // Probability outside the domain has no counts to match.
  sum += std::max(0.0, 1.0 - covered);
  return 0.5 * sum;
}

JointBinning::JointBinning(double lo, double hi, int bins_per_axis) : n_(bins_per_axis) {
  if (bins_per_axis < 2) throw std::invalid_argument("JointBinning: need >= 2 bins per axis");
  if (!(hi > lo)) throw std::invalid_argument("JointBinning: need lo < hi");
  edges_.resize(static_cast<std::size_t>(bins_per_axis - 1));
  for (int i = 0; i + 1 < bins_per_axis; ++i) {
    edges_[i] = bins_per_axis == 2 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (bins_per_axis - 2);
  }
}

JointBinning JointBinning::for_state(const EffectiveState& state, double t, int bins_per_axis) {
  const double half = std::abs(packet_center(state.config(), Slit::A, t)) +
                      2.0 * sigma_t(state.config(), t).modulus();
  return JointBinning(-half, half, bins_per_axis);
}

int JointBinning::locate(double y) const {
  // Edges are bin starts: bin k (k >= 1) is [edges[k-1], edges[k]).
  return static_cast<int>(std::upper_bound(edges_.begin(), edges_.end(), y) - edges_.begin());
}

Interval JointBinning::bin(int k) const {
  Interval r;
  if (k > 0) r.lo = edges_[static_cast<std::size_t>(k - 1)];
  if (k < n_ - 1) r.hi = edges_[static_cast<std::size_t>(k)];
  return r;
}

JointHistogram bin_pairs(std::span<const std::pair<double, double>> pairs,
                         const JointBinning& binning) {
  JointHistogram h;
  h.bins_per_axis = binning.bins_per_axis();
  h.counts.assign(static_cast<std::size_t>(h.bins_per_axis * h.bins_per_axis), 0);
  for (const auto& [right, left] : pairs) {
    ++h.counts[static_cast<std::size_t>(binning.locate(right) * h.bins_per_axis +
                                        binning.locate(left))];
  }
  h.total = pairs.size();
  return h;
}

std::vector<double> born_cell_probabilities(const BornQuadrature& born,
                                            const JointBinning& binning) {
  const int n = binning.bins_per_axis();
  std::vector<double> p(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      p[static_cast<std::size_t>(i * n + j)] = born.rect_probability(binning.bin(i), binning.bin(j));
    }
  }
  return p;
}

double tv_distance(const JointHistogram& a, const JointHistogram& b) {
  if (a.counts.size() != b.counts.size()) throw std::invalid_argument("tv_distance: shape mismatch");
  if (a.total == 0 || b.total == 0) return a.total == b.total ? 0.0 : 1.0;
  double sum = 0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    sum += std::abs(static_cast<double>(a.counts[i]) / a.total -
                    static_cast<double>(b.counts[i]) / b.total);
  }
  return 0.5 * sum;
}

double tv_distance(const JointHistogram& a, std::span<const double> probabilities) {
  if (a.counts.size() != probabilities.size()) {
    throw std::invalid_argument("tv_distance: shape mismatch");
  }
  double sum = 0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    const double f = a.total ? static_cast<double>(a.counts[i]) / a.total : 0.0;
    sum += std::abs(f - probabilities[i]);
  }
  return 0.5 * sum;
}

double chi_square_p_value(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  if (statistic <= 0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

ChiSquare chi_square_two_sample(const JointHistogram& a, const JointHistogram& b) {
  if (a.counts.size() != b.counts.size()) {
    throw std::invalid_argument("chi_square_two_sample: shape mismatch");
  }
  ChiSquare out;
  if (a.total == 0 || b.total == 0) return out;
  const double ka = std::sqrt(static_cast<double>(b.total) / static_cast<double>(a.total));
  const double kb = std::sqrt(static_cast<double>(a.total) / static_cast<double>(b.total));
  int occupied = 0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    const double x = static_cast<double>(a.counts[i]);
    const double y = static_cast<double>(b.counts[i]);
    if (x + y == 0) continue;
    ++occupied;
    const double diff = ka * x - kb * y;
    out.statistic += diff * diff / (x + y);
  }
  out.dof = std::max(0, occupied - 1);
  out.p_value = chi_square_p_value(out.statistic, out.dof);
  return out;
}

ChiSquare chi_square_goodness(const JointHistogram& observed, std::span<const double> probabilities,
                              double min_expected) {
  if (observed.counts.size() != probabilities.size()) {
    throw std::invalid_argument("chi_square_goodness: shape mismatch");
  }
  ChiSquare out;
  const double n = static_cast<double>(observed.total);
  if (n == 0) return out;
  int cells = 0;
  double pooled_obs = 0;
  double pooled_exp = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const double e = n * probabilities[i];
    const double o = static_cast<double>(observed.counts[i]);
    if (e < min_expected) {
      pooled_obs += o;
      pooled_exp += e;
      continue;
    }
    ++cells;
    out.statistic += (o - e) * (o - e) / e;
  }
  if (pooled_exp > 0) {
    ++cells;
    out.statistic += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
  }
  out.dof = std::max(0, cells - 1);
  out.p_value = chi_square_p_value(out.statistic, out.dof);
  return out;
}

}  // namespace bohmslit
