// SPDX-License-Identifier: Apache-2.0
#include "smprivacy/trapdoor.h"

#include <gtest/gtest.h>

#include <random>

#include "smprivacy/errors.h"

namespace smprivacy {
namespace {

TEST(TrapdoorStepTest, Examples) {
  auto r = trapdoor_step(TrapdoorBox(1, 0), Ball::kRed, Ball::kBlue);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->red_count(), 1);

  EXPECT_FALSE(trapdoor_step(TrapdoorBox(1, 1), Ball::kRed, Ball::kBlue).has_value());

  r = trapdoor_step(TrapdoorBox(2, 1), Ball::kBlue, Ball::kBlue);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->red_count(), 1);
}

TEST(TrapdoorStepTest, BlueAndRedCountsSumToCapacity) {
  for (int capacity = 0; capacity <= 4; ++capacity) {
    for (int red = 0; red <= capacity; ++red) {
      for (Ball in : {Ball::kRed, Ball::kBlue}) {
        for (Ball out : {Ball::kRed, Ball::kBlue}) {
          const TrapdoorBox box(capacity, red);
          EXPECT_EQ(box.red_count() + box.blue_count(), capacity);
          const auto next = trapdoor_step(box, in, out);
          if (next) {
            EXPECT_EQ(next->red_count() + next->blue_count(), capacity);
          }
        }
      }
    }
  }
}

TEST(TrapdoorBoxTest, RejectsInvalidCounts) {
  EXPECT_THROW(TrapdoorBox(1, 2), DomainError);
  EXPECT_THROW(TrapdoorBox(1, -1), DomainError);
}

TEST(EmsToTrapdoorTest, Examples) {
  const TrapdoorTrace t = ems_to_trapdoor({1, 0}, RequestSequence{0, 1}, EmsConfig(1, 1, 1, 1));
  EXPECT_EQ(t.in, (std::vector<Ball>{Ball::kBlue, Ball::kRed}));
  EXPECT_EQ(t.out, (std::vector<Ball>{Ball::kRed, Ball::kBlue}));
  EXPECT_EQ(t.r0, 1);

  const TrapdoorTrace id = ems_to_trapdoor({0}, RequestSequence{0}, EmsConfig(1, 1, 0, 0));
  EXPECT_EQ(id.in, std::vector<Ball>{Ball::kRed});
  EXPECT_EQ(id.out, std::vector<Ball>{Ball::kRed});
  EXPECT_EQ(id.r0, 0);
}

TEST(EmsToTrapdoorTest, RejectsNonBinaryChannels) {
  EXPECT_THROW(ems_to_trapdoor({1}, RequestSequence{1}, EmsConfig(2, 2, 2, 0)),
               UnsupportedConfigError);
  EXPECT_THROW(ems_to_trapdoor({1}, RequestSequence{1}, EmsConfig(1, 2, 2, 0)),
               UnsupportedConfigError);
}

TEST(EmsToTrapdoorTest, RoundTripOnRandomPairs) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_int_distribution<int> cap(0, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int beta = cap(rng);
    const EmsConfig cfg(1, 1, beta, std::uniform_int_distribution<int>(0, beta)(rng));
    std::vector<int> xs(len(rng));
    std::vector<int> ys(xs.size());
    for (auto& v : xs) v = bit(rng);
    for (auto& v : ys) v = bit(rng);
    const ConsumptionSequence x(xs);
    const RequestSequence y(ys);
    const EmsPair back = trapdoor_to_ems(ems_to_trapdoor(x, y, cfg));
    EXPECT_EQ(back.x, x);
    EXPECT_EQ(back.y, y);
    EXPECT_EQ(back.s0, cfg.s0());
  }
}

TEST(TrapdoorEquivalenceTest, ExhaustiveSmall) {
  std::size_t checked = 0;
  for (int beta = 0; beta <= 3; ++beta) {
    for (int s0 = 0; s0 <= beta; ++s0) {
      const EmsConfig cfg(1, 1, beta, s0);
      for (std::size_t n = 1; n <= 4; ++n) {
        for (unsigned xb = 0; xb < (1U << n); ++xb) {
          for (unsigned yb = 0; yb < (1U << n); ++yb) {
            std::vector<int> xs(n);
            std::vector<int> ys(n);
            for (std::size_t i = 0; i < n; ++i) {
              xs[i] = (xb >> i) & 1U;
              ys[i] = (yb >> i) & 1U;
            }
            const ConsumptionSequence x(xs);
            const RequestSequence y(ys);
            ASSERT_EQ(is_stable(x, y, cfg), trapdoor_stable(ems_to_trapdoor(x, y, cfg), beta))
                << cfg << " x=" << x << " y=" << y;
            ++checked;
          }
        }
      }
    }
  }
  EXPECT_EQ(checked, 10u * (4 + 16 + 64 + 256));
}

}  // namespace
}  // namespace smprivacy
