#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "bohmslit/born.hpp"
#include "bohmslit/errors.hpp"
#include "support/oracles.hpp"

using namespace bohmslit;

namespace {

oracle::Scenario scenario(const PhysicalConfig& c) {
  return {c.hbar, c.mass, c.sigma0, c.Y, c.D, c.kx, c.ky};
}

double oracle_rect(const oracle::Scenario& s, double t, double a1, double b1, double a2, double b2) {
  return oracle::simpson2d([&](double x, double y) { return oracle::density(s, x, y, t); }, a1, b1, a2,
                           b2, 400);
}

}  // namespace

TEST(Born, Normalization) {
  const EffectiveState st(PhysicalConfig{});
  for (double t : {0.0, 2.5, 10.0}) {
    EXPECT_NEAR(BornQuadrature(st, t).rect_probability({}, {}), 1.0, 1e-12);
  }
}

TEST(Born, RectanglesAgainstBruteForce) {
  PhysicalConfig cfg;
  cfg.Y = 2.0;  // sizeable overlap so the cross term matters
  cfg.ky = 0.2;
  const EffectiveState st(cfg);
  const auto s = scenario(cfg);
  for (double t : {0.0, 4.0, 10.0}) {
    const BornQuadrature born(st, t);
    for (auto [a1, b1, a2, b2] : {std::array{0.0, 3.0, -8.0, -2.0}, std::array{-1.5, 1.5, -1.5, 1.5},
                                  std::array{2.0, 9.0, 1.0, 4.0}}) {
      EXPECT_NEAR(born.rect_probability({a1, b1}, {a2, b2}), oracle_rect(s, t, a1, b1, a2, b2), 1e-9)
          << "t=" << t;
    }
  }
}

TEST(Born, BinProbabilityIsRectangle) {
  const EffectiveState st(PhysicalConfig{});
  const BornQuadrature born(st, 10.0);
  EXPECT_DOUBLE_EQ(born.bin_probability(3.0, -4.5), born.rect_probability({3.0, 3.5}, {-4.5, -4.0}));
  EXPECT_NEAR(born.bin_probability(3.0, -4.5), bin_probability(st, 3.0, -4.5, 10.0), 1e-16);
}

TEST(Born, FarSeparatedPacketsReduceToErf) {
  // With Y = 12 the overlap is e^-72: the marginal is an equal mixture of two
  // normals of width |sigma_t| centred at +-Y.
  PhysicalConfig cfg;
  cfg.Y = 12.0;
  const EffectiveState st(cfg);
  const double t = 6.0;
  const double sd = sigma_t(cfg, t).modulus();
  const BornQuadrature born(st, t);
  for (auto [a, b] : {std::pair{8.0, 13.0}, {-20.0, -11.0}, {-3.0, 3.0}}) {
    const double want = 0.5 * (oracle::normal_interval(12.0, sd, a, b) + oracle::normal_interval(-12.0, sd, a, b));
    EXPECT_NEAR(born.marginal_probability({a, b}), want, 1e-12);
  }
}

TEST(Born, MarginalDensity) {
  PhysicalConfig cfg;
  cfg.Y = 1.5;
  const EffectiveState st(cfg);
  const auto s = scenario(cfg);
  const BornQuadrature born(st, 10.0);
  for (double y : {-9.0, -1.0, 0.0, 2.5, 6.0}) {
    const double want =
        oracle::simpson([&](double b) { return oracle::density(s, y, b, 10.0); }, -60, 60, 4000);
    EXPECT_NEAR(born.marginal_density(y), want, 1e-11);
    EXPECT_NEAR(marginal_density(st, y, 10.0), want, 1e-11);
  }
  const double mass = oracle::simpson([&](double y) { return born.marginal_density(y); }, -1.0, 2.0, 200);
  EXPECT_NEAR(born.marginal_probability({-1.0, 2.0}), mass, 1e-9);
}

TEST(Born, SameSideMatchesFrozenBaseline) {
  std::ifstream in(BOHMSLIT_FIXTURE_DIR "/same_side_baseline.json");
  ASSERT_TRUE(in) << "missing fixture";
  const auto fx = nlohmann::json::parse(in);
  const EffectiveState st(PhysicalConfig{});
  ASSERT_DOUBLE_EQ(fx["detection_time"].get<double>(), st.detection_time());
  const double p = same_side_probability(st, st.detection_time());
  EXPECT_GT(p, 0.0);
  EXPECT_NEAR(p, fx["same_side_probability"].get<double>(), fx["tolerance"].get<double>());
  // At t = 0 the packets barely overlap, so same-side pairs are rare.
  EXPECT_LT(same_side_probability(st, 0.0), 1e-5);
}

TEST(Born, CoveringGrid) {
  const EffectiveState st(PhysicalConfig{});
  const double t = 10.0;
  const double w = sigma_t(st.config(), t).modulus();
  const auto g = covering_grid(st, t);
  EXPECT_NEAR(g.y_max, 5.0 + 8 * w, 1e-12);
  EXPECT_NEAR(g.y_min, -5.0 - 8 * w, 1e-12);

  const auto narrow = covering_grid(st, t, GridSpec{-10, 10, 65});
  EXPECT_GE(narrow.y_max, 5.0 + 6 * w - 1e-12);
  EXPECT_LE(narrow.y_min, -5.0 - 6 * w + 1e-12);
  EXPECT_EQ(narrow.n_points, 65);

  const GridSpec wide{-200, 200, 300};
  EXPECT_EQ(covering_grid(st, t, wide), wide);

  EXPECT_THROW((GridSpec{-1, 1, 8}.validate()), ValidationError);
  EXPECT_THROW((GridSpec{1, -1, 64}.validate()), ValidationError);
}

TEST(Sampler, EnvelopeDominatesDensity) {
  const EffectiveState st(PhysicalConfig{});
  for (double t : {0.0, 10.0}) {
    const RejectionEnvelope env(st, t);
    const StateSlice sl(st, t);
    const double w = sigma_t(st.config(), t).modulus();
    EXPECT_NEAR(env.deviation(), 1.2 * w, 1e-12);
    for (double a = -5 * w - 5; a <= 5 * w + 5; a += 0.37 * w) {
      for (double b = -5 * w - 5; b <= 5 * w + 5; b += 0.41 * w) {
        ASSERT_LE(sl.density(a, b), env.bound() * env.density(a, b)) << a << "," << b << " t=" << t;
      }
    }
  }
}

TEST(Sampler, DeterministicAcrossThreadCounts) {
  const EffectiveState st(PhysicalConfig{});
  const auto a = sample_joint(st, 10.0, 3000, 99, StreamTag::born_sampling, 1);
  const auto b = sample_joint(st, 10.0, 3000, 99, StreamTag::born_sampling, 3);
  EXPECT_EQ(a.pairs, b.pairs);
  EXPECT_EQ(a.n_proposed, b.n_proposed);
  EXPECT_GE(a.n_proposed, 3000u);
  const auto c = sample_joint(st, 10.0, 3000, 100, StreamTag::born_sampling, 1);
  EXPECT_NE(a.pairs, c.pairs);
  // A prefix of a batch is the smaller batch.
  const auto d = sample_joint(st, 10.0, 10, 99, StreamTag::born_sampling, 1);
  EXPECT_TRUE(std::equal(d.pairs.begin(), d.pairs.end(), a.pairs.begin()));
}

TEST(Sampler, SameSideFrequency) {
  const EffectiveState st(PhysicalConfig{});
  const std::size_t n = 20000;
  const auto batch = sample_joint(st, 10.0, n, 4);
  std::size_t same = 0;
  for (const auto& [a, b] : batch.pairs) same += a * b > 0;
  const double p = same_side_probability(st, 10.0);
  EXPECT_NEAR(static_cast<double>(same) / n, p, 4 * std::sqrt(p * (1 - p) / n));
}
