// SPDX-License-Identifier: Apache-2.0
#include "smprivacy/policy.h"

#include <gtest/gtest.h>

#include <set>

#include "smprivacy/errors.h"

namespace smprivacy {
namespace {

TEST(MaxBlockLengthTest, Examples) {
  EXPECT_EQ(max_block_length(EmsConfig(1, 1, 3, 0)), 4);
  EXPECT_EQ(max_block_length(EmsConfig(2, 2, 3, 0)), 2);
  EXPECT_EQ(max_block_length(EmsConfig(1, 1, 0, 0)), 1);
  EXPECT_EQ(max_block_length(EmsConfig(2, 2, 0, 0)), 0);
}

TEST(BlockAlphabetTest, MembershipAndSize) {
  const BlockAlphabet a(2, 2, 3);
  EXPECT_EQ(a.size(), 8u);
  EXPECT_EQ(a.horizon(), 6);
  const auto words = a.codewords();
  EXPECT_EQ(words.size(), 8u);
  EXPECT_EQ(std::set<std::vector<int>>(words.begin(), words.end()).size(), 8u);
  for (const auto& w : words) EXPECT_TRUE(a.contains(w));
  EXPECT_EQ(words.front(), (std::vector<int>{0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(words[1], (std::vector<int>{0, 0, 0, 0, 2, 2}));

  EXPECT_FALSE(a.contains(std::vector<int>{0, 2, 0, 0, 0, 0}));
  EXPECT_FALSE(a.contains(std::vector<int>{1, 1, 0, 0, 0, 0}));
  EXPECT_FALSE(a.contains(std::vector<int>{0, 0, 0, 0}));
  EXPECT_THROW(BlockAlphabet(1, 0, 1), DomainError);
}

TEST(ChooseBlockTest, Examples) {
  const EmsConfig cfg(1, 1, 3, 0);
  EXPECT_EQ(choose_block(3, std::vector<int>{1, 1, 1}, cfg), (RequestSequence{0, 0, 0}));
  EXPECT_EQ(choose_block(0, std::vector<int>{1, 1, 1, 1}, cfg), (RequestSequence{1, 1, 1, 1}));
  EXPECT_EQ(choose_block(0, std::vector<int>{0, 0, 0, 0}, cfg), (RequestSequence{0, 0, 0, 0}));
}

TEST(ChooseBlockTest, Errors) {
  const EmsConfig cfg(1, 1, 1, 0);
  EXPECT_THROW(choose_block(0, std::vector<int>{0, 0, 0}, cfg), PolicyInfeasibleError);
  EXPECT_THROW(choose_block(2, std::vector<int>{0}, cfg), DomainError);
  EXPECT_THROW(choose_block(0, std::vector<int>{2}, cfg), DomainError);
}

TEST(ApplyPolicyTest, Examples) {
  const EmsConfig cfg(1, 1, 1, 1);
  const ConsumptionSequence x{1, 1, 0, 0};
  const RequestSequence y = apply_policy(x, cfg, 2);
  EXPECT_EQ(y, (RequestSequence{1, 1, 0, 0}));
  const BatteryTrajectory traj = trajectory(x, y, cfg);
  EXPECT_TRUE(traj.stable());
  EXPECT_EQ(traj.states.back(), 1);

  EXPECT_EQ(apply_policy({0, 0}, EmsConfig(1, 1, 1, 0), 2), (RequestSequence{0, 0}));
}

TEST(ApplyPolicyTest, Errors) {
  const EmsConfig cfg(1, 1, 1, 0);
  EXPECT_THROW(apply_policy({0, 0, 0}, cfg, 2), DomainError);
  EXPECT_THROW(apply_policy({}, cfg, 1), DomainError);
  try {
    apply_policy({0, 0, 0, 0, 0}, cfg, 5);
    FAIL() << "expected PolicyInfeasibleError";
  } catch (const PolicyInfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("= 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(BlockPolicy(EmsConfig(2, 2, 0, 0)), PolicyInfeasibleError);
}

TEST(ApplyPolicyTest, ExhaustiveBetaTwoBlockThree) {
  const BlockAlphabet image(1, 3, 1);
  int cases = 0;
  for (int s0 = 0; s0 <= 2; ++s0) {
    const EmsConfig cfg(1, 1, 2, s0);
    for_each_sequence(3, 1, [&](const std::vector<int>& xs) {
      const ConsumptionSequence x(xs);
      const RequestSequence y = apply_policy(x, cfg, 3);
      EXPECT_TRUE(is_stable(x, y, cfg)) << cfg << " x=" << x;
      EXPECT_TRUE(image.contains(y.view()));
      ++cases;
    });
  }
  EXPECT_EQ(cases, 24);
}

// Every l <= floor((beta+1)/alpha) admits a stable block output for every
// input and start state, over all instances with (alpha+1)^n (beta+1) <= 1e6.
TEST(ApplyPolicyTest, ExistenceExhaustive) {
  for (int alpha = 1; alpha <= 3; ++alpha) {
    for (int beta = 0; beta <= 6; ++beta) {
      const int l_max = max_block_length(EmsConfig(alpha, alpha, beta, 0));
      for (int l = 1; l <= l_max; ++l) {
        for (int m = 1; m <= 3; ++m) {
          const std::size_t n = static_cast<std::size_t>(l) * m;
          if (saturating_pow(alpha + 1, n) * (beta + 1) > 1'000'000) continue;
          const BlockAlphabet image(alpha, l, m);
          std::set<RequestSequence> outputs;
          for (int s0 = 0; s0 <= beta; ++s0) {
            const EmsConfig cfg(alpha, alpha + 1, beta, s0);
            for_each_sequence(n, alpha, [&](const std::vector<int>& xs) {
              const ConsumptionSequence x(xs);
              const RequestSequence y = apply_policy(x, cfg, l);
              ASSERT_TRUE(is_stable(x, y, cfg)) << cfg << " l=" << l << " x=" << x;
              ASSERT_TRUE(image.contains(y.view()));
              outputs.insert(y);
            });
          }
          EXPECT_LE(outputs.size(), image.size());
        }
      }
    }
  }
}

TEST(ApplyPolicyTest, DeterministicAndBlockLocal) {
  const EmsConfig cfg(2, 3, 5, 2);
  const int l = max_block_length(cfg);
  ASSERT_EQ(l, 3);
  for_each_sequence(6, 2, [&](const std::vector<int>& xs) {
    const ConsumptionSequence x(xs);
    const RequestSequence y = apply_policy(x, cfg, l);
    ASSERT_EQ(y, apply_policy(x, cfg, l));

    const RequestSequence first = choose_block(cfg.s0(), x.view().subspan(0, 3), cfg);
    int s = cfg.s0();
    for (int i = 0; i < 3; ++i) s += first[i] - x[i];
    const RequestSequence second = choose_block(s, x.view().subspan(3, 3), cfg);
    std::vector<int> joined(first.begin(), first.end());
    joined.insert(joined.end(), second.begin(), second.end());
    ASSERT_EQ(y, RequestSequence(joined));
  });
}

TEST(ReferencePoliciesTest, AlwaysStable) {
  for (int beta = 0; beta <= 3; ++beta) {
    for (int s0 = 0; s0 <= beta; ++s0) {
      const EmsConfig cfg(2, 3, beta, s0);
      const Policy charge = greedy_charge_policy(cfg);
      const Policy discharge = greedy_discharge_policy(cfg);
      const Policy echo = echo_policy();
      for_each_sequence(4, 2, [&](const std::vector<int>& xs) {
        const ConsumptionSequence x(xs);
        EXPECT_TRUE(is_stable(x, charge(x), cfg));
        EXPECT_TRUE(is_stable(x, discharge(x), cfg));
        EXPECT_EQ(echo(x).values(), xs);
      });
    }
  }
}

}  // namespace
}  // namespace smprivacy
