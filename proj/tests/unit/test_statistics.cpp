#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "bohmslit/statistics.hpp"

using namespace bohmslit;

TEST(Histogram, HalfOpenBins) {
  EXPECT_EQ(bin_index(0.0, 0.5), 0);
  EXPECT_EQ(bin_index(0.49999, 0.5), 0);
  EXPECT_EQ(bin_index(0.5, 0.5), 1);
  EXPECT_EQ(bin_index(-1e-12, 0.5), -1);
  EXPECT_EQ(bin_index(-0.5, 0.5), -1);
  EXPECT_EQ(bin_index(-0.5000001, 0.5), -2);
}

TEST(Histogram, CountsAndSides) {
  const std::vector<double> v{0.1, 0.2, 0.7, -0.1, -1.2, 0.0};
  const auto h = make_histogram(v, 0.5);
  EXPECT_EQ(h.total(), 6u);
  EXPECT_EQ(h.upper, 3u);
  EXPECT_EQ(h.lower, 3u);
  EXPECT_EQ(h.first_bin, -3);
  EXPECT_EQ(h.last_bin(), 1);
  EXPECT_EQ(h.count(0), 3u);
  EXPECT_EQ(h.count(1), 1u);
  EXPECT_EQ(h.count(-1), 1u);
  EXPECT_EQ(h.count(-3), 1u);
  EXPECT_EQ(h.count(7), 0u);
  EXPECT_EQ(h.left_edges().front(), -1.5);
  const std::vector<std::uint64_t> total_check(h.counts);
  EXPECT_EQ(std::accumulate(total_check.begin(), total_check.end(), std::uint64_t{0}), 6u);
}

TEST(Histogram, MirrorMapsBinsExactly) {
  const std::vector<double> v{0.1, 0.6, 0.7, -2.2, 3.9};
  const auto h = make_histogram(v, 0.5);
  const auto m = h.mirrored();
  for (long k = h.first_bin; k <= h.last_bin(); ++k) EXPECT_EQ(h.count(k), m.count(-k - 1));
  std::vector<double> neg(v.size());
  std::transform(v.begin(), v.end(), neg.begin(), [](double x) { return -x; });
  EXPECT_EQ(tv_distance(m, make_histogram(neg, 0.5)), 0.0);
}

TEST(Histogram, TotalVariation) {
  const std::vector<double> a{0.1, 0.1, 0.6, 0.6};
  const std::vector<double> b{0.1, 0.6, 0.6, 0.6};
  EXPECT_NEAR(tv_distance(make_histogram(a, 0.5), make_histogram(b, 0.5)), 0.25, 1e-15);
  const std::vector<double> c{-5.0};
  EXPECT_NEAR(tv_distance(make_histogram(a, 0.5), make_histogram(c, 0.5)), 1.0, 1e-15);
  EXPECT_EQ(tv_distance(ScreenHistogram{}, ScreenHistogram{}), 0.0);
}

TEST(JointBinning, PartitionsThePlane) {
  const JointBinning jb(-2.0, 2.0, 4);
  EXPECT_EQ(jb.inner_edges().size(), 3u);
  EXPECT_EQ(jb.locate(-100.0), 0);
  EXPECT_EQ(jb.locate(-1.0), 1);
  EXPECT_EQ(jb.locate(0.0), 2);
  EXPECT_EQ(jb.locate(1e9), 3);
  EXPECT_TRUE(std::isinf(jb.bin(0).lo));
  EXPECT_TRUE(std::isinf(jb.bin(3).hi));
  EXPECT_EQ(jb.bin(1).hi, jb.bin(2).lo);
}

TEST(JointBinning, BornCellsSumToOne) {
  const EffectiveState st(PhysicalConfig{});
  const auto jb = JointBinning::for_state(st, 10.0, 10);
  const auto p = born_cell_probabilities(BornQuadrature(st, 10.0), jb);
  ASSERT_EQ(p.size(), 100u);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-10);
  for (double x : p) EXPECT_GE(x, 0.0);
  // Mirror symmetry of the state: cell (i, j) equals cell (9 - i, 9 - j).
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) EXPECT_NEAR(p[i * 10 + j], p[(9 - i) * 10 + (9 - j)], 1e-12);
  }
}

TEST(ChiSquare, PValues) {
  EXPECT_NEAR(chi_square_p_value(3.841458820694124, 1), 0.05, 1e-9);
  EXPECT_NEAR(chi_square_p_value(18.307038053275146, 10), 0.05, 1e-9);
  EXPECT_NEAR(chi_square_p_value(0.0, 4), 1.0, 1e-15);
}

TEST(ChiSquare, TwoSample) {
  const JointBinning jb(-1.0, 1.0, 2);
  const std::vector<std::pair<double, double>> a{{-1, -1}, {1, 1}, {1, -1}, {-1, 1}};
  const auto ha = bin_pairs(a, jb);
  const auto same = chi_square_two_sample(ha, ha);
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_EQ(same.dof, 3);
  EXPECT_NEAR(same.p_value, 1.0, 1e-12);
  EXPECT_EQ(tv_distance(ha, ha), 0.0);
  const std::vector<std::pair<double, double>> b{{-1, -1}, {-1, -1}, {-1, -1}, {-1, -1}};
  const auto r = chi_square_two_sample(ha, bin_pairs(b, jb));
  EXPECT_NEAR(r.statistic, 4.8, 1e-12);
  EXPECT_NEAR(tv_distance(ha, bin_pairs(b, jb)), 0.75, 1e-15);
}

TEST(ChiSquare, GoodnessPoolsSmallCells) {
  JointHistogram h;
  h.bins_per_axis = 2;
  h.counts = {50, 50, 0, 0};
  h.total = 100;
  const std::vector<double> p{0.5, 0.49, 0.005, 0.005};
  const auto r = chi_square_goodness(h, p);
  // The two cells expecting 0.5 each are pooled: cells {50, 49, 1}, dof 2.
  EXPECT_EQ(r.dof, 2);
  EXPECT_NEAR(r.statistic, 0.0 + 1.0 / 49 + 1.0, 1e-12);
}
