// SPDX-License-Identifier: Apache-2.0
//
// Exact information leakage (1/n) I(X^n; Y^n) of a deterministic battery
// policy, closed-form leakage bounds, and small-instance verifiers.
#ifndef SMPRIVACY_LEAKAGE_H_
#define SMPRIVACY_LEAKAGE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"
#include "smprivacy/ems.h"
#include "smprivacy/policy.h"
#include "smprivacy/processes.h"

namespace smprivacy {

inline constexpr double kRateTolerance = 1e-9;

// Bits. 0 log 0 = 0. Throws DomainError outside [0, 1].
double binary_entropy(double p);

// Shannon entropy in bits of a list of masses (not renormalized).
double shannon_entropy(std::span<const double> masses);

// ceil((beta + 1) / alpha): the block length whose block inputs are
// recoverable from any stable request sequence.
int disjoint_block_length(const EmsConfig& cfg);

// 1 / floor((beta+1)/alpha); +inf when no block policy exists.
double theorem1_bound(const EmsConfig& cfg);

// 1 / ceil((beta+1)/alpha).
double theorem2_rate(const EmsConfig& cfg);

// H2(mu/alpha) / ceil((beta+1)/alpha).
double theorem4_rate(const EmsConfig& cfg, double mu);

struct Theorem3Bound {
  double value = 0.0;
  // True when (mu +- beta/n)/alpha left [0, 1] and was clamped before H2.
  bool clamped = false;
};

// max(H2((mu - beta/n)/alpha), H2((mu + beta/n)/alpha)) / floor((beta+1)/alpha).
// With n = nullopt both arguments are mu/alpha (the n -> infinity limit).
// Throws DomainError unless 0 <= mu <= alpha and n >= 1.
Theorem3Bound evaluate_theorem3_bound(const EmsConfig& cfg, double mu,
                                      std::optional<std::size_t> n);

inline double theorem3_bound(const EmsConfig& cfg, double mu, std::optional<std::size_t> n) {
  return evaluate_theorem3_bound(cfg, mu, n).value;
}

enum class BoundKind { kTheorem1, kTheorem3 };

struct LeakageReport {
  std::size_t n = 0;
  double leakage_rate = 0.0;
  double entropy_x_rate = 0.0;
  double entropy_y_rate = 0.0;
  double equivocation_rate = 0.0;
  std::string bound_theorem;
  double bound = 0.0;
  bool bound_clamped = false;
  bool satisfied = false;
};

// Pushes d through the policy and computes exact entropies of the induced
// joint law. Every output is checked for stability (InvariantViolation
// otherwise). kTheorem3 uses d's declared mean, or its realized mean when
// none is declared.
LeakageReport exact_leakage(const SequenceDistribution& d, const Policy& policy,
                            const EmsConfig& cfg, BoundKind bound = BoundKind::kTheorem1);

nlohmann::json to_json(const LeakageReport& report);

struct DisjointnessWitness {
  int s0 = 0;
  ConsumptionSequence first;
  ConsumptionSequence second;
  RequestSequence shared;
};

struct DisjointnessReport {
  // l * alpha > beta
  bool hypothesis_holds = false;
  bool disjoint = true;
  std::optional<DisjointnessWitness> witness;
};

// For every s0 in [0, beta] checks that the stable sets of distinct members
// of the block alphabet O^m_l never share a request sequence. Stops at the
// first overlap.
DisjointnessReport verify_disjointness(const EmsConfig& cfg, int block_length, int blocks,
                                       const EnumerationLimits& limits = {});

nlohmann::json to_json(const DisjointnessReport& report);

struct MinLeakageResult {
  double min_rate = 0.0;
  std::map<ConsumptionSequence, RequestSequence> witness;
  std::uint64_t policies_searched = 0;
};

inline constexpr std::uint64_t kMaxPoliciesSearched = 1'000'000;

// Exhaustive search over every deterministic stable map from d's support to
// requests. Throws ResourceError when the number of maps exceeds max_policies.
MinLeakageResult brute_force_min_leakage(const SequenceDistribution& d, const EmsConfig& cfg,
                                         std::uint64_t max_policies = kMaxPoliciesSearched);

}  // namespace smprivacy

#endif  // SMPRIVACY_LEAKAGE_H_
