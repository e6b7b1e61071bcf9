// SPDX-License-Identifier: Apache-2.0
//
// Block battery policy: requests are built from constant blocks of length l,
// each all-zero or all-alpha, chosen so the battery never leaves [0, beta].
#ifndef SMPRIVACY_POLICY_H_
#define SMPRIVACY_POLICY_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "smprivacy/ems.h"

namespace smprivacy {

// floor((beta + 1) / alpha): the largest l for which a block policy exists
// from every initial state and every input. May be 0 when alpha > beta + 1.
int max_block_length(const EmsConfig& cfg);

// The set of m-fold concatenations of {0^l, alpha^l}.
class BlockAlphabet {
 public:
  BlockAlphabet(int alpha, int block_length, int blocks);

  int alpha() const { return alpha_; }
  int block_length() const { return block_length_; }
  int blocks() const { return blocks_; }
  int horizon() const { return block_length_ * blocks_; }
  std::uint64_t size() const;

  bool contains(std::span<const int> seq) const;

  // All 2^m members in lexicographic order (block i from the most
  // significant bit).
  std::vector<std::vector<int>> codewords() const;

 private:
  int alpha_;
  int block_length_;
  int blocks_;
};

// Picks 0^l when s_start - sum(x_block) >= 0, otherwise alpha^l. Ties go to
// the zero block. The result is checked against the battery recursion.
// Throws PolicyInfeasibleError when l exceeds max_block_length(cfg).
RequestSequence choose_block(int s_start, std::span<const int> x_block, const EmsConfig& cfg);

// Threads the battery state through consecutive blocks of x starting at
// cfg.s0(). |x| must be a positive multiple of l.
RequestSequence apply_policy(const ConsumptionSequence& x, const EmsConfig& cfg, int block_length);

using Policy = std::function<RequestSequence(const ConsumptionSequence&)>;

// The realized block policy for a fixed configuration and block length.
class BlockPolicy {
 public:
  BlockPolicy(const EmsConfig& cfg, int block_length);
  explicit BlockPolicy(const EmsConfig& cfg) : BlockPolicy(cfg, max_block_length(cfg)) {}

  const EmsConfig& config() const { return cfg_; }
  int block_length() const { return block_length_; }

  RequestSequence operator()(const ConsumptionSequence& x) const {
    return apply_policy(x, cfg_, block_length_);
  }

 private:
  EmsConfig cfg_;
  int block_length_;
};

// y = x. Always stable; the battery never moves.
Policy echo_policy();

// Charges as fast as possible: y_i = min(gamma, beta - s_i + x_i).
Policy greedy_charge_policy(const EmsConfig& cfg);

// Discharges first: y_i = max(0, x_i - s_i).
Policy greedy_discharge_policy(const EmsConfig& cfg);

}  // namespace smprivacy

#endif  // SMPRIVACY_POLICY_H_
