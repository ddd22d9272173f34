#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bohmslit/born.hpp"

namespace bohmslit {

/// Bin k covers [k w, (k + 1) w): half-open, aligned to the origin, so the
/// mirror y -> -y maps bin k onto bin -k - 1 exactly.
long bin_index(double y, double width);

/// Counts on one screen in detector-sized bins.
struct ScreenHistogram {
  double width = 0;
  long first_bin = 0;  // bin index of counts[0]
  std::vector<std::uint64_t> counts;
  // Upper half is y > 0; y == 0 counts as lower.
  std::uint64_t upper = 0;
  std::uint64_t lower = 0;

  std::uint64_t total() const { return upper + lower; }
  std::uint64_t count(long bin) const;
  long last_bin() const { return first_bin + static_cast<long>(counts.size()) - 1; }
  std::vector<double> left_edges() const;
  /// Histogram of the negated values.
  ScreenHistogram mirrored() const;
};

ScreenHistogram make_histogram(std::span<const double> values, double width);

/// Total-variation distance between the normalized histograms (0 when both
/// are empty).
double tv_distance(const ScreenHistogram& a, const ScreenHistogram& b);

/// TV distance between a histogram's frequencies and Born probabilities of
/// the same bins for one screen coordinate. Bins with no counts but
/// non-negligible probability inside the quadrature domain are included.
double tv_distance_to_marginal(const ScreenHistogram& h, const BornQuadrature& born);

/// n x n binning of the joint (right, left) plane. The inner edges split
/// [lo, hi] uniformly; the two outermost bins along each axis are open, so
/// the binning partitions the whole plane.
class JointBinning {
 public:
  JointBinning(double lo, double hi, int bins_per_axis);

  /// Default for time t: inner range is the packet centre +- 2 |sigma_t|.
  static JointBinning for_state(const EffectiveState& state, double t, int bins_per_axis = 10);

  int bins_per_axis() const { return n_; }
  int locate(double y) const;
  Interval bin(int k) const;
  const std::vector<double>& inner_edges() const { return edges_; }

 private:
  int n_;
  std::vector<double> edges_;
};

struct JointHistogram {
  int bins_per_axis = 0;
  std::vector<std::uint64_t> counts;  // row-major [right][left]
  std::uint64_t total = 0;
};

JointHistogram bin_pairs(std::span<const std::pair<double, double>> pairs,
                         const JointBinning& binning);

/// Exact Born probabilities for every cell of `binning`, row-major.
std::vector<double> born_cell_probabilities(const BornQuadrature& born,
                                            const JointBinning& binning);

double tv_distance(const JointHistogram& a, const JointHistogram& b);
double tv_distance(const JointHistogram& a, std::span<const double> probabilities);

struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
};

/// Upper tail of the chi-square distribution.
double chi_square_p_value(double statistic, int dof);

/// Two-sample homogeneity test over cells occupied in either sample.
ChiSquare chi_square_two_sample(const JointHistogram& a, const JointHistogram& b);

/// Goodness of fit against known cell probabilities. Cells with expected
/// count below `min_expected` are pooled into one cell.
ChiSquare chi_square_goodness(const JointHistogram& observed, std::span<const double> probabilities,
                              double min_expected = 5.0);

}  // namespace bohmslit
