// SPDX-License-Identifier: Apache-2.0
#include "smprivacy/policy.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "smprivacy/errors.h"

namespace smprivacy {

int max_block_length(const EmsConfig& cfg) { return (cfg.beta() + 1) / cfg.alpha(); }

BlockAlphabet::BlockAlphabet(int alpha, int block_length, int blocks)
    : alpha_(alpha), block_length_(block_length), blocks_(blocks) {
  if (alpha < 1 || block_length < 1 || blocks < 1) {
    throw DomainError("block alphabet needs alpha, l, m >= 1");
  }
  if (blocks > 62) throw ResourceError("block alphabet with more than 62 blocks");
}

std::uint64_t BlockAlphabet::size() const { return std::uint64_t{1} << blocks_; }

bool BlockAlphabet::contains(std::span<const int> seq) const {
  if (seq.size() != static_cast<std::size_t>(horizon())) return false;
  for (int b = 0; b < blocks_; ++b) {
    const auto block = seq.subspan(static_cast<std::size_t>(b) * block_length_, block_length_);
    const int first = block.front();
    if (first != 0 && first != alpha_) return false;
    if (!std::all_of(block.begin(), block.end(), [first](int v) { return v == first; })) {
      return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> BlockAlphabet::codewords() const {
  std::vector<std::vector<int>> words;
  words.reserve(size());
  for (std::uint64_t code = 0; code < size(); ++code) {
    std::vector<int> word;
    word.reserve(horizon());
    for (int b = 0; b < blocks_; ++b) {
      const bool high = (code >> (blocks_ - 1 - b)) & 1U;
      word.insert(word.end(), block_length_, high ? alpha_ : 0);
    }
    words.push_back(std::move(word));
  }
  return words;
}

namespace {

void check_block_length(int block_length, const EmsConfig& cfg) {
  const int l_max = max_block_length(cfg);
  if (l_max == 0) {
    throw PolicyInfeasibleError("alpha exceeds beta+1: floor((beta+1)/alpha) = 0, no block fits");
  }
  if (block_length < 1) {
    throw DomainError("block length must be >= 1, got " + std::to_string(block_length));
  }
  if (block_length > l_max) {
    throw PolicyInfeasibleError("block length " + std::to_string(block_length) +
                                " exceeds floor((beta+1)/alpha) = " + std::to_string(l_max));
  }
}

bool block_stable(int s, std::span<const int> x_block, int request, const EmsConfig& cfg) {
  for (int xi : x_block) {
    s += request - xi;
    if (s < 0 || s > cfg.beta()) return false;
  }
  return true;
}

}  // namespace

RequestSequence choose_block(int s_start, std::span<const int> x_block, const EmsConfig& cfg) {
  const int l = static_cast<int>(x_block.size());
  check_block_length(l, cfg);
  if (s_start < 0 || s_start > cfg.beta()) {
    throw DomainError("block start level " + std::to_string(s_start) + " outside [0, beta]");
  }
  for (std::size_t i = 0; i < x_block.size(); ++i) {
    if (x_block[i] < 0 || x_block[i] > cfg.alpha()) {
      throw DomainError("x_block[" + std::to_string(i) + "] outside [0, alpha]");
    }
  }

  const long long drained = s_start - std::accumulate(x_block.begin(), x_block.end(), 0LL);
  const int request = drained >= 0 ? 0 : cfg.alpha();
  if (!block_stable(s_start, x_block, request, cfg)) {
    throw InvariantViolation("neither constant block is stable from s=" + std::to_string(s_start));
  }
  return RequestSequence(std::vector<int>(x_block.size(), request));
}

RequestSequence apply_policy(const ConsumptionSequence& x, const EmsConfig& cfg, int block_length) {
  check_block_length(block_length, cfg);
  if (x.empty() || x.size() % static_cast<std::size_t>(block_length) != 0) {
    throw DomainError("sequence length " + std::to_string(x.size()) +
                      " is not a positive multiple of block length " +
                      std::to_string(block_length));
  }
  validate(x, cfg);

  std::vector<int> y;
  y.reserve(x.size());
  int s = cfg.s0();
  const auto xs = x.view();
  for (std::size_t start = 0; start < xs.size(); start += block_length) {
    const auto block = xs.subspan(start, block_length);
    const RequestSequence chosen = choose_block(s, block, cfg);
    for (std::size_t i = 0; i < block.size(); ++i) s += chosen[i] - block[i];
    y.insert(y.end(), chosen.begin(), chosen.end());
  }
  return RequestSequence(std::move(y));
}

BlockPolicy::BlockPolicy(const EmsConfig& cfg, int block_length)
    : cfg_(cfg), block_length_(block_length) {
  check_block_length(block_length, cfg);
}

Policy echo_policy() {
  return [](const ConsumptionSequence& x) { return RequestSequence(x.values()); };
}

Policy greedy_charge_policy(const EmsConfig& cfg) {
  return [cfg](const ConsumptionSequence& x) {
    std::vector<int> y;
    y.reserve(x.size());
    int s = cfg.s0();
    for (int xi : x) {
      const int yi = std::min(cfg.gamma(), cfg.beta() - s + xi);
      s += yi - xi;
      y.push_back(yi);
    }
    return RequestSequence(std::move(y));
  };
}

Policy greedy_discharge_policy(const EmsConfig& cfg) {
  return [cfg](const ConsumptionSequence& x) {
    std::vector<int> y;
    y.reserve(x.size());
    int s = cfg.s0();
    for (int xi : x) {
      const int yi = std::max(0, xi - s);
      s += yi - xi;
      y.push_back(yi);
    }
    return RequestSequence(std::move(y));
  };
}

}  // namespace smprivacy
