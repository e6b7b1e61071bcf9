// SPDX-License-Identifier: Apache-2.0
#include "smprivacy/processes.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "smprivacy/errors.h"
#include "smprivacy/policy.h"

namespace smprivacy {

namespace {

void check_pmf(std::span<const double> pmf, const char* what) {
  if (pmf.empty()) throw DomainError(std::string(what) + " is empty");
  double total = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DomainError(std::string(what) + " has a negative or non-finite entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw DomainError(std::string(what) + " sums to " + std::to_string(total) + ", not 1");
  }
}

void check_support_size(std::uint64_t size, const SupportLimits& limits) {
  if (size > limits.max_support) {
    throw ResourceError("distribution support of " + std::to_string(size) +
                        " sequences exceeds cap " + std::to_string(limits.max_support));
  }
}

}  // namespace

SequenceDistribution::SequenceDistribution(int alpha, std::size_t n, Support support,
                                           std::optional<double> declared_mean)
    : alpha_(alpha), n_(n), support_(std::move(support)), declared_mean_(declared_mean) {
  if (alpha < 1) throw DomainError("distribution alpha must be >= 1");
  if (n < 1) throw DomainError("distribution horizon must be >= 1");
  if (support_.empty()) throw DomainError("distribution support is empty");

  double total = 0.0;
  for (auto it = support_.begin(); it != support_.end();) {
    const auto& [seq, p] = *it;
    if (seq.size() != n) {
      throw DomainError("support sequence " + to_string(seq) + " does not have length " +
                        std::to_string(n));
    }
    for (int v : seq) {
      if (v < 0 || v > alpha) {
        throw DomainError("support sequence " + to_string(seq) + " leaves [0, alpha]");
      }
    }
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DomainError("support sequence " + to_string(seq) + " has invalid mass");
    }
    total += p;
    it = p == 0.0 ? support_.erase(it) : std::next(it);
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw DomainError("distribution mass sums to " + std::to_string(total) + ", not 1");
  }
  if (declared_mean_) {
    const double realized = mean_of(*this);
    if (std::abs(realized - *declared_mean_) > kMeanTolerance) {
      throw DomainError("declared mean " + std::to_string(*declared_mean_) +
                        " differs from realized mean " + std::to_string(realized));
    }
  }
}

double SequenceDistribution::probability(const ConsumptionSequence& x) const {
  const auto it = support_.find(x);
  return it == support_.end() ? 0.0 : it->second;
}

double mean_of(const SequenceDistribution& d) {
  double mean = 0.0;
  for (const auto& [seq, p] : d.support()) {
    mean += p * static_cast<double>(seq.sum());
  }
  return mean / static_cast<double>(d.horizon());
}

SequenceDistribution iid_process(std::span<const double> pmf, std::size_t n,
                                 const SupportLimits& limits) {
  check_pmf(pmf, "symbol pmf");
  const auto nonzero =
      static_cast<std::uint64_t>(std::count_if(pmf.begin(), pmf.end(), [](double p) { return p > 0; }));
  check_support_size(saturating_pow(nonzero, n), limits);

  const int alpha = static_cast<int>(pmf.size()) - 1;
  SequenceDistribution::Support support;
  for_each_sequence(n, alpha, [&](const std::vector<int>& seq) {
    double p = 1.0;
    for (int v : seq) {
      p *= pmf[v];
      if (p == 0.0) return;
    }
    support.emplace(ConsumptionSequence(seq), p);
  });
  return SequenceDistribution(alpha < 1 ? 1 : alpha, n, std::move(support));
}

SequenceDistribution markov_process(const std::vector<std::vector<double>>& transitions,
                                    std::span<const double> init, std::size_t n,
                                    const SupportLimits& limits) {
  check_pmf(init, "initial pmf");
  if (transitions.size() != init.size()) {
    throw DomainError("transition matrix and initial pmf disagree on alphabet size");
  }
  for (const auto& row : transitions) {
    if (row.size() != init.size()) throw DomainError("transition matrix is not square");
    check_pmf(row, "transition row");
  }
  if (n < 1) throw DomainError("horizon must be >= 1");

  const int alpha = static_cast<int>(init.size()) - 1;
  SequenceDistribution::Support support;
  std::vector<int> path;
  path.reserve(n);
  // Depth-first over positive-mass paths only.
  auto extend = [&](auto&& self, double mass) -> void {
    if (path.size() == n) {
      support.emplace(ConsumptionSequence(path), mass);
      check_support_size(support.size(), limits);
      return;
    }
    for (int next = 0; next <= alpha; ++next) {
      const double p = path.empty() ? init[next] : transitions[path.back()][next];
      if (p == 0.0) continue;
      path.push_back(next);
      self(self, mass * p);
      path.pop_back();
    }
  };
  extend(extend, 1.0);
  return SequenceDistribution(alpha < 1 ? 1 : alpha, n, std::move(support));
}

SequenceDistribution uniform_block_process(const EmsConfig& cfg, int block_length, int blocks,
                                           const SupportLimits& limits) {
  const BlockAlphabet alphabet(cfg.alpha(), block_length, blocks);
  check_support_size(alphabet.size(), limits);
  const double p = 1.0 / static_cast<double>(alphabet.size());
  SequenceDistribution::Support support;
  for (auto& word : alphabet.codewords()) support.emplace(ConsumptionSequence(std::move(word)), p);
  return SequenceDistribution(cfg.alpha(), alphabet.horizon(), std::move(support),
                              cfg.alpha() / 2.0);
}

SequenceDistribution mean_block_process(const EmsConfig& cfg, int block_length, int blocks,
                                        double mu, const SupportLimits& limits) {
  if (!(mu >= 0.0) || mu > cfg.alpha()) {
    throw DomainError("mean " + std::to_string(mu) + " outside [0, alpha]");
  }
  const BlockAlphabet alphabet(cfg.alpha(), block_length, blocks);
  check_support_size(alphabet.size(), limits);
  const double p_high = mu / cfg.alpha();

  SequenceDistribution::Support support;
  for (auto& word : alphabet.codewords()) {
    double p = 1.0;
    for (int b = 0; b < blocks; ++b) {
      p *= word[static_cast<std::size_t>(b) * block_length] != 0 ? p_high : 1.0 - p_high;
    }
    if (p > 0.0) support.emplace(ConsumptionSequence(std::move(word)), p);
  }
  return SequenceDistribution(cfg.alpha(), alphabet.horizon(), std::move(support), mu);
}

nlohmann::json to_json(const SequenceDistribution& d) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [seq, p] : d.support()) {
    entries.push_back({{"seq", seq.values()}, {"p", p}});
  }
  nlohmann::json j = {{"n", d.horizon()}, {"alpha", d.alpha()}, {"entries", std::move(entries)}};
  if (d.declared_mean()) j["mean"] = *d.declared_mean();
  return j;
}

SequenceDistribution distribution_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    const int alpha = j.at("alpha").get<int>();
    SequenceDistribution::Support support;
    for (const auto& entry : j.at("entries")) {
      ConsumptionSequence seq(entry.at("seq").get<std::vector<int>>());
      const double p = entry.at("p").get<double>();
      if (!support.emplace(seq, p).second) {
        throw DomainError("duplicate support entry " + to_string(seq));
      }
    }
    std::optional<double> mean;
    if (j.contains("mean")) mean = j.at("mean").get<double>();
    return SequenceDistribution(alpha, n, std::move(support), mean);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed distribution JSON: ") + e.what());
  }
}

}  // namespace smprivacy
