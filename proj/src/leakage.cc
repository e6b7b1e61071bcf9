// SPDX-License-Identifier: Apache-2.0
#include "smprivacy/leakage.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "smprivacy/errors.h"

namespace smprivacy {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("binary entropy argument " + std::to_string(p) + " outside [0, 1]");
  }
  if (p == 0.0 || p == 1.0) return 0.0;
  return -plogp(p) - plogp(1.0 - p);
}

double shannon_entropy(std::span<const double> masses) {
  double h = 0.0;
  for (double p : masses) h -= plogp(p);
  return h;
}

int disjoint_block_length(const EmsConfig& cfg) {
  return (cfg.beta() + 1 + cfg.alpha() - 1) / cfg.alpha();
}

double theorem1_bound(const EmsConfig& cfg) {
  const int l = max_block_length(cfg);
  if (l == 0) return std::numeric_limits<double>::infinity();
  return 1.0 / l;
}

double theorem2_rate(const EmsConfig& cfg) { return 1.0 / disjoint_block_length(cfg); }

double theorem4_rate(const EmsConfig& cfg, double mu) {
  if (!(mu >= 0.0) || mu > cfg.alpha()) {
    throw DomainError("mean " + std::to_string(mu) + " outside [0, alpha]");
  }
  return binary_entropy(mu / cfg.alpha()) / disjoint_block_length(cfg);
}

Theorem3Bound evaluate_theorem3_bound(const EmsConfig& cfg, double mu,
                                      std::optional<std::size_t> n) {
  if (!(mu >= 0.0) || mu > cfg.alpha()) {
    throw DomainError("mean " + std::to_string(mu) + " outside [0, alpha]");
  }
  if (n && *n == 0) throw DomainError("horizon must be >= 1");

  const double alpha = cfg.alpha();
  const double shift = n ? static_cast<double>(cfg.beta()) / static_cast<double>(*n) : 0.0;
  const double lo = (mu - shift) / alpha;
  const double hi = (mu + shift) / alpha;

  Theorem3Bound out;
  out.clamped = lo < 0.0 || hi > 1.0;
  const double h = std::max(binary_entropy(std::clamp(lo, 0.0, 1.0)),
                            binary_entropy(std::clamp(hi, 0.0, 1.0)));
  const int l = max_block_length(cfg);
  out.value = l == 0 ? std::numeric_limits<double>::infinity() : h / l;
  return out;
}

LeakageReport exact_leakage(const SequenceDistribution& d, const Policy& policy,
                            const EmsConfig& cfg, BoundKind bound) {
  if (d.alpha() > cfg.alpha()) {
    throw DomainError("distribution alphabet exceeds the channel's alpha");
  }
  const std::size_t n = d.horizon();

  // Law of Y^n, plus the output attached to every support element.
  std::map<RequestSequence, double> output_law;
  std::vector<std::pair<double, const RequestSequence*>> joint;
  joint.reserve(d.size());
  for (const auto& [x, p] : d.support()) {
    RequestSequence y = policy(x);
    const BatteryTrajectory traj = trajectory(x, y, cfg);
    if (!traj.stable()) {
      throw InvariantViolation("policy output " + to_string(y) + " for x=" + to_string(x) +
                               " is not stable (" + to_string(traj.violation->kind) +
                               " at index " + std::to_string(traj.violation->index) + ")");
    }
    auto [it, inserted] = output_law.try_emplace(std::move(y), 0.0);
    it->second += p;
    joint.emplace_back(p, &it->first);
  }

  double h_x = 0.0;
  for (const auto& [x, p] : d.support()) h_x -= plogp(p);
  double h_y = 0.0;
  for (const auto& [y, p] : output_law) h_y -= plogp(p);
  // H(X|Y) = sum_x p(x) log(p(y(x)) / p(x)) for a deterministic map.
  double h_x_given_y = 0.0;
  for (const auto& [p, y] : joint) {
    const double py = output_law.at(*y);
    if (p > 0.0 && p != py) h_x_given_y += p * std::log2(py / p);
  }

  const double nd = static_cast<double>(n);
  LeakageReport report;
  report.n = n;
  report.entropy_x_rate = h_x / nd;
  report.entropy_y_rate = h_y / nd;
  report.equivocation_rate = h_x_given_y / nd;
  report.leakage_rate = (h_x - h_x_given_y) / nd;
  if (std::abs(report.leakage_rate - report.entropy_y_rate) > kRateTolerance) {
    throw InvariantViolation("H(X) - H(X|Y) disagrees with H(Y) for a deterministic policy");
  }

  switch (bound) {
    case BoundKind::kTheorem1:
      report.bound_theorem = "theorem1";
      report.bound = theorem1_bound(cfg);
      break;
    case BoundKind::kTheorem3: {
      const double mu = d.declared_mean().value_or(mean_of(d));
      const Theorem3Bound t3 = evaluate_theorem3_bound(cfg, mu, n);
      report.bound_theorem = "theorem3";
      report.bound = t3.value;
      report.bound_clamped = t3.clamped;
      break;
    }
  }
  report.satisfied = report.leakage_rate <= report.bound + kRateTolerance;
  return report;
}

namespace {

nlohmann::json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

nlohmann::json to_json(const LeakageReport& report) {
  return {{"n", report.n},
          {"leakage_rate", report.leakage_rate},
          {"entropy_x_rate", report.entropy_x_rate},
          {"entropy_y_rate", report.entropy_y_rate},
          {"equivocation_rate", report.equivocation_rate},
          {"bound_theorem", report.bound_theorem},
          {"bound", finite_or_string(report.bound)},
          {"bound_clamped", report.bound_clamped},
          {"satisfied", report.satisfied}};
}

DisjointnessReport verify_disjointness(const EmsConfig& cfg, int block_length, int blocks,
                                       const EnumerationLimits& limits) {
  const BlockAlphabet alphabet(cfg.alpha(), block_length, blocks);
  DisjointnessReport report;
  report.hypothesis_holds = static_cast<long long>(block_length) * cfg.alpha() > cfg.beta();

  const auto words = alphabet.codewords();
  for (int s0 = 0; s0 <= cfg.beta(); ++s0) {
    const EmsConfig at = cfg.with_s0(s0);
    std::map<RequestSequence, std::size_t> owner;
    for (std::size_t w = 0; w < words.size(); ++w) {
      const ConsumptionSequence x(words[w]);
      for (auto& y : enumerate_stable_set(x, at, limits)) {
        auto [it, inserted] = owner.try_emplace(y, w);
        if (!inserted && it->second != w) {
          report.disjoint = false;
          report.witness = DisjointnessWitness{s0, ConsumptionSequence(words[it->second]), x, y};
          return report;
        }
      }
    }
  }
  return report;
}

nlohmann::json to_json(const DisjointnessReport& report) {
  nlohmann::json j = {{"hypothesis_holds", report.hypothesis_holds},
                      {"disjoint", report.disjoint}};
  if (report.witness) {
    j["witness"] = {{"s0", report.witness->s0},
                    {"x_first", report.witness->first.values()},
                    {"x_second", report.witness->second.values()},
                    {"y", report.witness->shared.values()}};
  }
  return j;
}

MinLeakageResult brute_force_min_leakage(const SequenceDistribution& d, const EmsConfig& cfg,
                                         std::uint64_t max_policies) {
  std::vector<ConsumptionSequence> inputs;
  std::vector<double> masses;
  for (const auto& [x, p] : d.support()) {
    inputs.push_back(x);
    masses.push_back(p);
  }

  // Index every distinct candidate output once.
  std::map<RequestSequence, std::size_t> output_index;
  std::vector<const RequestSequence*> outputs;
  std::vector<std::vector<std::size_t>> choices(inputs.size());
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (auto& y : enumerate_stable_set(inputs[i], cfg)) {
      auto [it, inserted] = output_index.try_emplace(std::move(y), outputs.size());
      if (inserted) outputs.push_back(&it->first);
      choices[i].push_back(it->second);
    }
    const std::uint64_t k = choices[i].size();
    if (total > max_policies / k) {
      throw ResourceError("brute-force policy search exceeds the guard of " +
                          std::to_string(max_policies) + " maps");
    }
    total *= k;
  }

  std::vector<std::size_t> digit(inputs.size(), 0);
  std::vector<double> law(outputs.size(), 0.0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_digit = digit;
  for (std::uint64_t count = 0; count < total; ++count) {
    std::fill(law.begin(), law.end(), 0.0);
    for (std::size_t i = 0; i < inputs.size(); ++i) law[choices[i][digit[i]]] += masses[i];
    const double h = shannon_entropy(law);
    if (h < best) {
      best = h;
      best_digit = digit;
    }
    for (std::size_t i = 0; i < digit.size(); ++i) {
      if (++digit[i] < choices[i].size()) break;
      digit[i] = 0;
    }
  }

  MinLeakageResult result;
  result.policies_searched = total;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    result.witness.emplace(inputs[i], *outputs[choices[i][best_digit[i]]]);
  }
  const auto& table = result.witness;
  const LeakageReport check = exact_leakage(
      d, [&table](const ConsumptionSequence& x) { return table.at(x); }, cfg);
  result.min_rate = check.leakage_rate;
  if (std::abs(result.min_rate - best / static_cast<double>(d.horizon())) > kRateTolerance) {
    throw InvariantViolation("brute-force optimum disagrees with exact leakage of its witness");
  }
  return result;
}

}  // namespace smprivacy
