// SPDX-License-Identifier: Apache-2.0
//
// Exact finite-support laws of the consumption process X^n.
#ifndef SMPRIVACY_PROCESSES_H_
#define SMPRIVACY_PROCESSES_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "smprivacy/ems.h"

namespace smprivacy {

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kMeanTolerance = 1e-9;

struct SupportLimits {
  std::uint64_t max_support = std::uint64_t{1} << 20;
};

// Probability mass function over sequences of length n with symbols in
// [0, alpha]. Zero-mass sequences are not stored. The constructor checks
// normalization, lengths, symbol ranges and, when given, the declared mean.
class SequenceDistribution {
 public:
  using Support = std::map<ConsumptionSequence, double>;

  SequenceDistribution(int alpha, std::size_t n, Support support,
                       std::optional<double> declared_mean = std::nullopt);

  int alpha() const { return alpha_; }
  std::size_t horizon() const { return n_; }
  const Support& support() const { return support_; }
  std::size_t size() const { return support_.size(); }
  std::optional<double> declared_mean() const { return declared_mean_; }

  double probability(const ConsumptionSequence& x) const;

 private:
  int alpha_;
  std::size_t n_;
  Support support_;
  std::optional<double> declared_mean_;
};

// E[(1/n) sum x_i] over the support.
double mean_of(const SequenceDistribution& d);

// Product law of n independent draws from pmf over {0, .., pmf.size()-1}.
SequenceDistribution iid_process(std::span<const double> pmf, std::size_t n,
                                 const SupportLimits& limits = {});

// Path law of a Markov chain: init over the first symbol, then row-stochastic
// transitions[from][to].
SequenceDistribution markov_process(const std::vector<std::vector<double>>& transitions,
                                    std::span<const double> init, std::size_t n,
                                    const SupportLimits& limits = {});

// Uniform over the 2^m sequences built from m blocks of 0^l or alpha^l.
// Declared mean alpha/2.
SequenceDistribution uniform_block_process(const EmsConfig& cfg, int block_length, int blocks,
                                           const SupportLimits& limits = {});

// m i.i.d. blocks, each alpha^l with probability mu/alpha and 0^l
// otherwise. Declared mean mu. Throws DomainError unless 0 <= mu <= alpha.
SequenceDistribution mean_block_process(const EmsConfig& cfg, int block_length, int blocks,
                                        double mu, const SupportLimits& limits = {});

// {"n", "alpha", "entries": [{"seq": [...], "p": ...}], "mean"?}
nlohmann::json to_json(const SequenceDistribution& d);
SequenceDistribution distribution_from_json(const nlohmann::json& j);

}  // namespace smprivacy

#endif  // SMPRIVACY_PROCESSES_H_
