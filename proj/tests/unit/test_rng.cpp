#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "bohmslit/rng.hpp"

using namespace bohmslit;

// Known-answer vectors published with the Random123 library.
TEST(Philox, KnownAnswers) {
  using C = Philox4x32::Counter;
  EXPECT_EQ(Philox4x32::block({0, 0, 0, 0}, {0, 0}),
            (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                              {0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                              {0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Substream, Reproducible) {
  Substream a(42, 7, StreamTag::born_sampling), b(42, 7, StreamTag::born_sampling);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u32(), b.next_u32());
}

TEST(Substream, DistinctStreams) {
  std::set<std::uint32_t> firsts;
  for (std::uint64_t idx : {0ull, 1ull, (1ull << 32)}) {
    for (auto tag : {StreamTag::born_sampling, StreamTag::initial_conditions}) {
      for (std::uint64_t seed : {1ull, 2ull}) firsts.insert(Substream(seed, idx, tag).next_u32());
    }
  }
  EXPECT_EQ(firsts.size(), 12u);
}

TEST(Substream, UniformMoments) {
  Substream s(1, 0, StreamTag::test_points);
  const int n = 200000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sum2 += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sum2 / n - 0.25, 1.0 / 12, 3e-3);
  Substream t(1, 1, StreamTag::test_points);
  for (int i = 0; i < 1000; ++i) EXPECT_GT(t.uniform_open_low(), 0.0);
}

TEST(Substream, NormalMoments) {
  Substream s(2, 0, StreamTag::test_points);
  const int n = 100000;
  double sum = 0, sum2 = 0, cross = 0;
  for (int i = 0; i < n; ++i) {
    const auto [a, b] = s.normal_pair();
    sum += a + b;
    sum2 += a * a + b * b;
    cross += a * b;
  }
  EXPECT_NEAR(sum / (2 * n), 0.0, 5 / std::sqrt(2.0 * n));
  EXPECT_NEAR(sum2 / (2 * n), 1.0, 0.02);
  EXPECT_NEAR(cross / n, 0.0, 5 / std::sqrt(1.0 * n));
}
