#include <gtest/gtest.h>

#include <cmath>

#include "bohmslit/dynamics.hpp"
#include "bohmslit/errors.hpp"
#include "bohmslit/rng.hpp"
#include "support/oracles.hpp"

using namespace bohmslit;

namespace {

oracle::Scenario scenario(const PhysicalConfig& c) {
  return {c.hbar, c.mass, c.sigma0, c.Y, c.D, c.kx, c.ky};
}

}  // namespace

TEST(Guidance, VelocityMatchesPhaseGradient) {
  PhysicalConfig cfg;
  cfg.ky = 0.15;
  const EffectiveState st(cfg);
  const auto s = scenario(cfg);
  Substream rng(21, 0, StreamTag::test_points);
  for (int i = 0; i < 200; ++i) {
    const JointPoint p{20 * rng.uniform() - 10, 20 * rng.uniform() - 10, 10 * rng.uniform()};
    const auto [w1, w2] = oracle::velocity(s, p.y1, p.y2, p.t);
    const auto v = guidance_velocity(st, p);
    EXPECT_NEAR(v.v1, w1, 1e-7 * (1 + std::abs(w1)));
    EXPECT_NEAR(v.v2, w2, 1e-7 * (1 + std::abs(w2)));
  }
}

TEST(Guidance, NoMotionAtTimeZeroWithoutKick) {
  // Real packets at t = 0 and ky = 0: the phase is flat.
  const EffectiveState st(PhysicalConfig{});
  const auto v = guidance_velocity(st, {4.2, -5.1, 0.0});
  EXPECT_EQ(v.v1, 0.0);
  EXPECT_EQ(v.v2, 0.0);
}

TEST(Integrator, SettingsValidation) {
  IntegratorSettings s;
  s.rel_tol = 0;
  EXPECT_THROW(s.validate(), ValidationError);
  s = {};
  s.n_samples = 1;
  EXPECT_THROW(s.validate(), ValidationError);
  s = {};
  s.max_steps = 0;
  try {
    s.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "max_steps");
  }
  EXPECT_EQ(integrator_method_from_string(to_string(IntegratorMethod::rk4_fixed)),
            IntegratorMethod::rk4_fixed);
  EXPECT_THROW(integrator_method_from_string("euler"), ValidationError);
}

TEST(Integrator, SampleGridAndEndpoints) {
  const EffectiveState st(PhysicalConfig{});
  IntegratorSettings s;
  s.n_samples = 11;
  const auto tr = integrate_pair(st, 4.6, -5.3, s);
  ASSERT_EQ(tr.status, TrajectoryStatus::completed);
  ASSERT_EQ(tr.times.size(), 11u);
  for (std::size_t k = 0; k < tr.times.size(); ++k) EXPECT_DOUBLE_EQ(tr.times[k], 1.0 * k);
  EXPECT_EQ(tr.y1.front(), 4.6);
  EXPECT_EQ(tr.y2.front(), -5.3);
  EXPECT_DOUBLE_EQ(tr.y_com_initial, -0.35);
  const auto [r, l] = arrivals(tr);
  EXPECT_EQ(r, tr.y1.back());
  EXPECT_EQ(l, tr.y2.back());
}

TEST(Integrator, CentreOfMassLaw) {
  const EffectiveState st(PhysicalConfig{});
  const auto s = scenario(st.config());
  for (auto [a, b] : {std::pair{4.1, -5.7}, {5.9, -3.2}, {-6.5, 4.0}, {0.3, 0.9}}) {
    const auto tr = integrate_pair(st, a, b, {});
    ASSERT_EQ(tr.status, TrajectoryStatus::completed);
    const double com0 = 0.5 * (a + b);
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      const double com = 0.5 * (tr.y1[k] + tr.y2[k]);
      EXPECT_NEAR(com, oracle::com_law(s, com0, tr.times[k]), 1e-7 * std::max(std::abs(com0), 1.0));
    }
    EXPECT_NEAR(com_closed_form(st.config(), com0, 7.0), oracle::com_law(s, com0, 7.0), 1e-14);
  }
}

TEST(Integrator, AntiDiagonalAndMirror) {
  const EffectiveState st(PhysicalConfig{});
  const auto tr = integrate_pair(st, 5.4, -5.4, {});
  for (std::size_t k = 0; k < tr.times.size(); ++k) EXPECT_EQ(tr.y1[k] + tr.y2[k], 0.0);

  const auto fwd = integrate_pair(st, 4.4, -6.1, {});
  const auto mir = integrate_pair(st, -4.4, 6.1, {});
  ASSERT_EQ(fwd.times.size(), mir.times.size());
  for (std::size_t k = 0; k < fwd.times.size(); ++k) {
    EXPECT_EQ(fwd.y1[k], -mir.y1[k]);
    EXPECT_EQ(fwd.y2[k], -mir.y2[k]);
  }
}

TEST(Integrator, FixedStepAgreesWithAdaptive) {
  const EffectiveState st(PhysicalConfig{});
  IntegratorSettings adaptive;
  adaptive.n_samples = 201;  // sample spacing 0.05 = 10 fixed steps
  IntegratorSettings rk4 = adaptive;
  rk4.method = IntegratorMethod::rk4_fixed;
  rk4.dt = 5e-3;
  const auto a = integrate_pair(st, 4.8, -4.6, adaptive);
  const auto b = integrate_pair(st, 4.8, -4.6, rk4);
  ASSERT_EQ(a.times.size(), b.times.size());
  EXPECT_NEAR(a.y1.back(), b.y1.back(), 1e-7);
  EXPECT_NEAR(a.y2.back(), b.y2.back(), 1e-7);
  EXPECT_EQ(b.steps, 2000);
}

TEST(Integrator, LonePacketLimit) {
  // Far from the other lobe the pair moves like two independent packets.
  PhysicalConfig cfg;
  cfg.Y = 12.0;
  const EffectiveState st(cfg);
  const auto tr = integrate_pair(st, 12.7, -11.2, {});
  for (std::size_t k = 0; k < tr.times.size(); k += 20) {
    const double t = tr.times[k];
    EXPECT_NEAR(tr.y1[k], single_packet_trajectory(cfg, Slit::A, 12.7, t), 1e-6);
    EXPECT_NEAR(tr.y2[k], single_packet_trajectory(cfg, Slit::B, -11.2, t), 1e-6);
  }
  const double tau = 10.0 / 2.0;
  EXPECT_NEAR(single_packet_trajectory(cfg, Slit::A, 12.7, 10.0), 12.0 + 0.7 * std::sqrt(1 + tau * tau),
              1e-12);
}

TEST(Integrator, NodeAbortKeepsPartialSamples) {
  const EffectiveState st(PhysicalConfig{});
  // Off the diagonal the two branches pick up a relative phase as soon as
  // t > 0; a guard this close to 1 treats that as a node on the first step.
  IntegratorSettings s;
  s.node_epsilon = 1.0 - 1e-9;
  const auto tr = integrate_pair(st, 0.3, 0.0, s);
  EXPECT_EQ(tr.status, TrajectoryStatus::node_aborted);
  EXPECT_LT(tr.times.size(), static_cast<std::size_t>(s.n_samples));
  EXPECT_THROW(arrivals(tr), IncompleteTrajectory);
}

TEST(Integrator, StepLimit) {
  const EffectiveState st(PhysicalConfig{});
  IntegratorSettings s;
  s.max_steps = 5;
  EXPECT_THROW(integrate_pair(st, 4.0, -5.0, s), StepLimitExceeded);
  s.method = IntegratorMethod::rk4_fixed;
  EXPECT_THROW(integrate_pair(st, 4.0, -5.0, s), StepLimitExceeded);
}
