// SPDX-License-Identifier: Apache-2.0
#include "smprivacy/ems.h"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "smprivacy/errors.h"

namespace smprivacy {
namespace {

// Independent odometer over {0..k}^n, kept separate from the library helper.
std::vector<std::vector<int>> all_words(std::size_t n, int k) {
  std::vector<std::vector<int>> words{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& w : words) {
      for (int v = 0; v <= k; ++v) {
        auto e = w;
        e.push_back(v);
        next.push_back(std::move(e));
      }
    }
    words = std::move(next);
  }
  return words;
}

// Direct recursion, no shared code with trajectory().
bool naive_stable(const std::vector<int>& x, const std::vector<int>& y, int s0, int beta) {
  int s = s0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += y[i] - x[i];
    if (s < 0 || s > beta) return false;
  }
  return true;
}

TEST(EmsConfigTest, RejectsInvalidParameters) {
  EXPECT_THROW(EmsConfig(0, 1, 1, 0), DomainError);
  EXPECT_THROW(EmsConfig(2, 1, 1, 0), DomainError);
  EXPECT_THROW(EmsConfig(1, 1, -1, 0), DomainError);
  EXPECT_THROW(EmsConfig(1, 1, 2, 3), DomainError);
  EXPECT_THROW(EmsConfig(1, 1, 2, -1), DomainError);
  EXPECT_NO_THROW(EmsConfig(1, 1, 0, 0));
}

TEST(StepTest, Examples) {
  const EmsConfig cfg(1, 1, 3, 0);
  const StepOutcome ok = step(2, 0, 1, cfg);
  EXPECT_TRUE(ok.ok());
  EXPECT_EQ(ok.level, 3);
  EXPECT_EQ(step(0, 1, 0, cfg).violation, ViolationKind::kOutage);
  EXPECT_EQ(step(3, 0, 1, cfg).violation, ViolationKind::kWaste);
}

TEST(StepTest, OutOfAlphabetIsDomainError) {
  const EmsConfig cfg(1, 2, 3, 0);
  EXPECT_THROW(step(4, 0, 0, cfg), DomainError);
  EXPECT_THROW(step(0, 2, 0, cfg), DomainError);
  EXPECT_THROW(step(0, 0, 3, cfg), DomainError);
  EXPECT_THROW(step(0, -1, 0, cfg), DomainError);
}

TEST(TrajectoryTest, Examples) {
  const BatteryTrajectory flat = trajectory({1, 1}, RequestSequence{1, 1}, EmsConfig(1, 1, 1, 0));
  EXPECT_TRUE(flat.stable());
  EXPECT_EQ(flat.states, (std::vector<int>{0, 0, 0}));

  const BatteryTrajectory fill = trajectory({0, 0}, RequestSequence{1, 1}, EmsConfig(1, 1, 1, 0));
  ASSERT_FALSE(fill.stable());
  EXPECT_EQ(*fill.violation, (Violation{1, ViolationKind::kWaste}));
  EXPECT_EQ(fill.states, (std::vector<int>{0, 1}));

  const BatteryTrajectory swing = trajectory({1, 0}, RequestSequence{0, 1}, EmsConfig(1, 1, 1, 1));
  EXPECT_TRUE(swing.stable());
  EXPECT_EQ(swing.states, (std::vector<int>{1, 0, 1}));
}

TEST(TrajectoryTest, LengthMismatch) {
  EXPECT_THROW(trajectory({1, 0}, RequestSequence{1}, EmsConfig(1, 1, 1, 0)), DomainError);
  EXPECT_THROW(is_stable({1}, RequestSequence{}, EmsConfig(1, 1, 1, 0)), DomainError);
}

TEST(IsStableTest, Examples) {
  EXPECT_TRUE(is_stable({1}, RequestSequence{1}, EmsConfig(1, 1, 1, 0)));
  EXPECT_FALSE(is_stable({1}, RequestSequence{0}, EmsConfig(1, 1, 1, 0)));
  EXPECT_TRUE(is_stable({0, 0, 0}, RequestSequence{0, 0, 0}, EmsConfig(1, 1, 2, 0)));
}

TEST(EnumerateStableSetTest, Examples) {
  EXPECT_EQ(enumerate_stable_set({1}, EmsConfig(1, 1, 1, 0)),
            (std::vector<RequestSequence>{{1}}));
  EXPECT_EQ(enumerate_stable_set({0}, EmsConfig(1, 1, 1, 0)),
            (std::vector<RequestSequence>{{0}, {1}}));
  // (1,0) is stable here: states 1, 1, 0.
  EXPECT_EQ(enumerate_stable_set({1, 1}, EmsConfig(1, 1, 1, 1)),
            (std::vector<RequestSequence>{{0, 1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(trajectory({1, 1}, RequestSequence{1, 0}, EmsConfig(1, 1, 1, 1)).states,
            (std::vector<int>{1, 1, 0}));
}

TEST(EnumerateStableSetTest, CapIsConfigurable) {
  const ConsumptionSequence x(std::vector<int>(10, 0));
  const EmsConfig cfg(1, 1, 3, 0);
  try {
    enumerate_stable_set(x, cfg, {.max_candidates = 512});
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("512"), std::string::npos);
  }
  EXPECT_NO_THROW(enumerate_stable_set(x, cfg, {.max_candidates = 1024}));
}

TEST(EnumerateStableSetTest, MatchesNaiveFilter) {
  for (int alpha = 1; alpha <= 2; ++alpha) {
    for (int gamma = alpha; gamma <= alpha + 1; ++gamma) {
      for (int beta = 0; beta <= 3; ++beta) {
        for (int s0 = 0; s0 <= beta; ++s0) {
          const EmsConfig cfg(alpha, gamma, beta, s0);
          for (std::size_t n = 1; n <= 4; ++n) {
            for (const auto& xs : all_words(n, alpha)) {
              std::vector<RequestSequence> expected;
              for (const auto& ys : all_words(n, gamma)) {
                if (naive_stable(xs, ys, s0, beta)) expected.emplace_back(ys);
              }
              ASSERT_EQ(enumerate_stable_set(ConsumptionSequence(xs), cfg), expected)
                  << cfg << " x=" << ConsumptionSequence(xs);
            }
          }
        }
      }
    }
  }
}

TEST(EmsPropertyTest, EchoPrefixAndConservation) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 1'000'000);
  for (int trial = 0; trial < 2000; ++trial) {
    const int alpha = 1 + pick(rng) % 3;
    const int gamma = alpha + pick(rng) % 2;
    const int beta = pick(rng) % 5;
    const EmsConfig cfg(alpha, gamma, beta, pick(rng) % (beta + 1));
    const std::size_t n = 1 + pick(rng) % 8;
    std::vector<int> xs(n);
    std::vector<int> ys(n);
    for (auto& v : xs) v = pick(rng) % (alpha + 1);
    for (auto& v : ys) v = pick(rng) % (gamma + 1);
    const ConsumptionSequence x(xs);

    EXPECT_TRUE(is_stable(x, RequestSequence(xs), cfg));

    const RequestSequence y(ys);
    const BatteryTrajectory traj = trajectory(x, y, cfg);
    if (!traj.stable()) continue;
    for (std::size_t k = 1; k <= n; ++k) {
      const ConsumptionSequence xp(std::vector<int>(xs.begin(), xs.begin() + k));
      const RequestSequence yp(std::vector<int>(ys.begin(), ys.begin() + k));
      EXPECT_TRUE(is_stable(xp, yp, cfg));
    }
    const long long diff = y.sum() - x.sum();
    EXPECT_EQ(diff, traj.states.back() - cfg.s0());
    EXPECT_LE(std::llabs(diff), beta);
  }
}

TEST(ForEachSequenceTest, CountsAndOrder) {
  std::vector<std::vector<int>> seen;
  for_each_sequence(2, 2, [&](const std::vector<int>& s) { seen.push_back(s); });
  EXPECT_EQ(seen, all_words(2, 2));
}

}  // namespace
}  // namespace smprivacy
