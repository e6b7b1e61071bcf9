// SPDX-License-Identifier: Apache-2.0
#include "smprivacy/suites.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "smprivacy/errors.h"
#include "smprivacy/leakage.h"
#include "smprivacy/policy.h"
#include "smprivacy/processes.h"
#include "smprivacy/trapdoor.h"

namespace smprivacy {

namespace {

constexpr double kEquivocationTolerance = 1e-12;

// (beta, alpha) pairs whose block lengths floor/ceil((beta+1)/alpha) agree.
struct TightConfig {
  int beta;
  int alpha;
};
constexpr TightConfig kTightConfigs[] = {{1, 1}, {2, 1}, {3, 2}};
constexpr double kMeanFractions[] = {0.0, 0.25, 0.5, 0.75, 1.0};

class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  void record(bool ok, const std::function<std::string()>& describe) {
    ++result_.cases;
    if (ok) return;
    if (result_.failures++ == 0) result_.detail = describe();
  }

  void set_witness(nlohmann::json w) { result_.witness = std::move(w); }

  CheckResult finish(const std::string& summary) {
    if (result_.failures == 0) result_.detail = summary;
    return std::move(result_);
  }

 private:
  CheckResult result_;
};

std::string describe_cfg(const EmsConfig& cfg) {
  std::ostringstream os;
  os << cfg;
  return os.str();
}

struct NamedPolicy {
  std::string name;
  Policy policy;
};

// Stable policies used to probe policy-independence claims.
std::vector<NamedPolicy> stable_policies(const EmsConfig& cfg, std::size_t n) {
  std::vector<NamedPolicy> policies;
  const int l = max_block_length(cfg);
  if (l >= 1 && n % static_cast<std::size_t>(l) == 0) {
    BlockPolicy block(cfg, l);
    policies.push_back({"block", [block](const ConsumptionSequence& x) { return block(x); }});
  }
  policies.push_back({"echo", echo_policy()});
  policies.push_back({"greedy-charge", greedy_charge_policy(cfg)});
  policies.push_back({"greedy-discharge", greedy_discharge_policy(cfg)});
  return policies;
}

std::vector<double> random_pmf(std::mt19937_64& rng, int size) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> pmf(size);
  double total = 0.0;
  for (auto& p : pmf) total += (p = draw(rng));
  for (auto& p : pmf) p /= total;
  return pmf;
}

SequenceDistribution random_law(std::mt19937_64& rng, int alpha, std::size_t n, bool markov) {
  if (!markov) return iid_process(random_pmf(rng, alpha + 1), n);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= alpha; ++i) rows.push_back(random_pmf(rng, alpha + 1));
  return markov_process(rows, random_pmf(rng, alpha + 1), n);
}

// Block-policy existence over every input and start state, then leakage of
// random i.i.d./Markov laws against 1/l.
SuiteReport theorem1_suite(const SuiteOptions& opt) {
  SuiteReport report;
  Tally existence("block policy stable and in O^m_l for every s0 and x");
  Tally bound("exact leakage <= 1/l for random laws");
  std::mt19937_64 rng(opt.seed);
  for (int alpha = 1; alpha <= 2; ++alpha) {
    for (int beta = 0; beta <= 4; ++beta) {
      const EmsConfig base(alpha, alpha, beta, 0);
      const int l = max_block_length(base);
      if (l == 0) {
        report.notes.push_back("skipped alpha=" + std::to_string(alpha) + " beta=" +
                               std::to_string(beta) + ": floor((beta+1)/alpha) = 0, no block policy");
        continue;
      }
      const std::size_t n = 2 * static_cast<std::size_t>(l);
      const BlockAlphabet alphabet(alpha, l, 2);
      for (int s0 = 0; s0 <= beta; ++s0) {
        const EmsConfig cfg = base.with_s0(s0);
        for_each_sequence(n, alpha, [&](const std::vector<int>& xs) {
          const ConsumptionSequence x(xs);
          const RequestSequence y = apply_policy(x, cfg, l);
          existence.record(is_stable(x, y, cfg) && alphabet.contains(y.view()), [&] {
            return describe_cfg(cfg) + " x=" + to_string(x) + " y=" + to_string(y);
          });
        });
      }
      for (int k = 0; k < opt.random_laws; ++k) {
        const EmsConfig cfg = base.with_s0(k % (beta + 1));
        const SequenceDistribution d = random_law(rng, alpha, n, k % 2 == 1);
        const LeakageReport r = exact_leakage(d, BlockPolicy(cfg, l), cfg);
        bound.record(r.leakage_rate <= 1.0 / l + kRateTolerance && r.satisfied, [&] {
          return describe_cfg(cfg) + " law #" + std::to_string(k) + " leaks " +
                 std::to_string(r.leakage_rate) + " > 1/" + std::to_string(l);
        });
      }
    }
  }
  report.checks.push_back(existence.finish("all block outputs stable"));
  report.checks.push_back(bound.finish("all random laws within 1/l"));
  return report;
}

std::vector<EmsConfig> tight_configs(const SuiteOptions& opt) {
  if (opt.config) return {*opt.config};
  std::vector<EmsConfig> out;
  for (const auto& t : kTightConfigs) out.emplace_back(t.alpha, t.alpha, t.beta, 0);
  return out;
}

std::vector<int> block_counts(const SuiteOptions& opt) {
  if (opt.blocks) return {*opt.blocks};
  return {1, 2, 3};
}

SuiteReport disjointness_suite(const SuiteOptions& opt) {
  SuiteReport report;
  Tally tally("stable sets of distinct block inputs are disjoint");
  for (const EmsConfig& base : tight_configs(opt)) {
    const int l = opt.block_length.value_or(disjoint_block_length(base));
    for (int m : block_counts(opt)) {
      const DisjointnessReport r = verify_disjointness(base, l, m);
      if (!r.hypothesis_holds) {
        report.notes.push_back("l*alpha > beta fails for l=" + std::to_string(l) + " " +
                               describe_cfg(base) + "; overlap is expected");
      }
      tally.record(r.disjoint, [&] {
        tally.set_witness(to_json(r));
        return describe_cfg(base) + " l=" + std::to_string(l) + " m=" + std::to_string(m) +
               ": s0=" + std::to_string(r.witness->s0) + " y=" + to_string(r.witness->shared) +
               " is stable for x=" + to_string(r.witness->first) + " and x=" +
               to_string(r.witness->second);
      });
    }
  }
  report.checks.push_back(tally.finish("no shared request sequence"));
  return report;
}

SuiteReport theorem2_suite(const SuiteOptions& opt) {
  SuiteReport report;
  Tally rate("leakage = 1/l under every tested stable policy");
  Tally equivocation("equivocation rate = 0");
  for (const EmsConfig& base : tight_configs(opt)) {
    const int l = opt.block_length.value_or(disjoint_block_length(base));
    for (int m : block_counts(opt)) {
      const SequenceDistribution d = uniform_block_process(base, l, m);
      for (int s0 = 0; s0 <= base.beta(); ++s0) {
        const EmsConfig cfg = base.with_s0(s0);
        for (const auto& [name, policy] : stable_policies(cfg, d.horizon())) {
          const LeakageReport r = exact_leakage(d, policy, cfg);
          const auto where = [&] {
            return describe_cfg(cfg) + " m=" + std::to_string(m) + " policy=" + name;
          };
          rate.record(std::abs(r.leakage_rate - 1.0 / l) <= kRateTolerance, [&] {
            return where() + " leaks " + std::to_string(r.leakage_rate);
          });
          equivocation.record(std::abs(r.equivocation_rate) <= kEquivocationTolerance, [&] {
            return where() + " equivocation " + std::to_string(r.equivocation_rate);
          });
        }
      }
    }
  }
  report.checks.push_back(rate.finish("leakage = 1/l everywhere"));
  report.checks.push_back(equivocation.finish("zero equivocation everywhere"));
  SuiteReport disjoint = disjointness_suite(opt);
  for (auto& c : disjoint.checks) report.checks.push_back(std::move(c));
  for (auto& n : disjoint.notes) report.notes.push_back(std::move(n));
  return report;
}

SuiteReport theorem3_suite(const SuiteOptions& opt) {
  SuiteReport report;
  Tally bound("block-policy leakage <= finite-n average-constraint bound");
  Tally asymptote("n -> infinity bound = H2(mu/alpha) / floor((beta+1)/alpha)");
  for (const EmsConfig& base : tight_configs(opt)) {
    const int l = max_block_length(base);
    for (double frac : kMeanFractions) {
      const double mu = frac * base.alpha();
      const double limit = theorem3_bound(base, mu, std::nullopt);
      const double expected = binary_entropy(mu / base.alpha()) / l;
      asymptote.record(limit == expected, [&] {
        return describe_cfg(base) + " mu=" + std::to_string(mu) + " limit " +
               std::to_string(limit) + " != " + std::to_string(expected);
      });
      for (int m : block_counts(opt)) {
        const SequenceDistribution d = mean_block_process(base, l, m, mu);
        for (int s0 = 0; s0 <= base.beta(); ++s0) {
          const EmsConfig cfg = base.with_s0(s0);
          const LeakageReport r = exact_leakage(d, BlockPolicy(cfg, l), cfg, BoundKind::kTheorem3);
          bound.record(r.leakage_rate <= r.bound + kRateTolerance, [&] {
            return describe_cfg(cfg) + " mu=" + std::to_string(mu) + " n=" +
                   std::to_string(r.n) + ": leakage " + std::to_string(r.leakage_rate) +
                   " > bound " + std::to_string(r.bound);
          });
        }
      }
    }
  }
  report.checks.push_back(bound.finish("all grid points within the bound"));
  report.checks.push_back(asymptote.finish("limit matches exactly"));
  return report;
}

SuiteReport theorem4_suite(const SuiteOptions& opt) {
  SuiteReport report;
  Tally rate("leakage = H2(mu/alpha)/l under every tested stable policy");
  for (const EmsConfig& base : tight_configs(opt)) {
    const int l = disjoint_block_length(base);
    for (double frac : kMeanFractions) {
      const double mu = frac * base.alpha();
      const double expected = binary_entropy(mu / base.alpha()) / l;
      for (int m : block_counts(opt)) {
        const SequenceDistribution d = mean_block_process(base, l, m, mu);
        for (int s0 = 0; s0 <= base.beta(); ++s0) {
          const EmsConfig cfg = base.with_s0(s0);
          for (const auto& [name, policy] : stable_policies(cfg, d.horizon())) {
            const LeakageReport r = exact_leakage(d, policy, cfg);
            rate.record(std::abs(r.leakage_rate - expected) <= kRateTolerance &&
                            std::abs(theorem4_rate(cfg, mu) - expected) <= kRateTolerance,
                        [&] {
                          return describe_cfg(cfg) + " mu=" + std::to_string(mu) + " m=" +
                                 std::to_string(m) + " policy=" + name + " leaks " +
                                 std::to_string(r.leakage_rate) + ", expected " +
                                 std::to_string(expected);
                        });
          }
        }
      }
    }
  }
  report.checks.push_back(rate.finish("equality holds everywhere"));
  return report;
}

SuiteReport trapdoor_suite(const SuiteOptions&) {
  SuiteReport report;
  Tally equivalence("EMS stability <=> trapdoor stability");
  Tally round_trip("color mapping round-trips");
  for (int beta = 0; beta <= 3; ++beta) {
    for (int s0 = 0; s0 <= beta; ++s0) {
      const EmsConfig cfg(1, 1, beta, s0);
      for (std::size_t n = 1; n <= 4; ++n) {
        for_each_sequence(n, 1, [&](const std::vector<int>& xs) {
          const ConsumptionSequence x(xs);
          for_each_sequence(n, 1, [&](const std::vector<int>& ys) {
            const RequestSequence y(ys);
            const TrapdoorTrace trace = ems_to_trapdoor(x, y, cfg);
            equivalence.record(is_stable(x, y, cfg) == trapdoor_stable(trace, beta), [&] {
              return describe_cfg(cfg) + " x=" + to_string(x) + " y=" + to_string(y);
            });
            const EmsPair back = trapdoor_to_ems(trace);
            round_trip.record(back.x == x && back.y == y && back.s0 == s0, [&] {
              return "round trip failed for x=" + to_string(x) + " y=" + to_string(y);
            });
          });
        });
      }
    }
  }
  report.checks.push_back(equivalence.finish("zero counterexamples"));
  report.checks.push_back(round_trip.finish("mapping is bijective"));
  return report;
}

SuiteReport oracle_suite(const SuiteOptions&) {
  SuiteReport report;
  Tally minimum("brute-force minimum leakage on uniform O^1_2 = 1/ceil((beta+1)/alpha)");
  for (int s0 = 0; s0 <= 1; ++s0) {
    const EmsConfig cfg(1, 1, 1, s0);
    const SequenceDistribution d = uniform_block_process(cfg, 2, 1);
    const MinLeakageResult r = brute_force_min_leakage(d, cfg);
    minimum.record(std::abs(r.min_rate - theorem2_rate(cfg)) <= kRateTolerance &&
                       std::abs(r.min_rate - 0.5) <= kRateTolerance,
                   [&] { return describe_cfg(cfg) + " minimum " + std::to_string(r.min_rate); });
  }

  Tally filter("pruned enumeration == naive filter of Y^n");
  for (int alpha = 1; alpha <= 2; ++alpha) {
    for (int gamma = alpha; gamma <= alpha + 1; ++gamma) {
      for (int beta = 0; beta <= 2; ++beta) {
        for (int s0 = 0; s0 <= beta; ++s0) {
          const EmsConfig cfg(alpha, gamma, beta, s0);
          for (std::size_t n = 1; n <= 4; ++n) {
            for_each_sequence(n, alpha, [&](const std::vector<int>& xs) {
              const ConsumptionSequence x(xs);
              std::vector<RequestSequence> naive;
              for_each_sequence(n, gamma, [&](const std::vector<int>& ys) {
                RequestSequence y(ys);
                if (is_stable(x, y, cfg)) naive.push_back(std::move(y));
              });
              filter.record(enumerate_stable_set(x, cfg) == naive, [&] {
                return describe_cfg(cfg) + " x=" + to_string(x);
              });
            });
          }
        }
      }
    }
  }
  report.checks.push_back(minimum.finish("minimum = 0.5"));
  report.checks.push_back(filter.finish("identical sets everywhere"));
  return report;
}

SuiteReport conservation_suite(const SuiteOptions& opt) {
  SuiteReport report;
  Tally conservation("sum(y) - sum(x) = s_n - s_0 and |sum(y) - sum(x)| <= beta");
  std::mt19937_64 rng(opt.seed);
  auto uniform = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (std::size_t k = 0; k < opt.conservation_pairs; ++k) {
    const int alpha = uniform(1, 3);
    const int gamma = uniform(alpha, alpha + 2);
    const int beta = uniform(0, 5);
    const EmsConfig cfg(alpha, gamma, beta, uniform(0, beta));
    const auto n = static_cast<std::size_t>(uniform(1, 12));
    std::vector<int> xs(n);
    std::vector<int> ys(n);
    int s = cfg.s0();
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = uniform(0, alpha);
      ys[i] = uniform(std::max(0, xs[i] - s), std::min(gamma, beta - s + xs[i]));
      s += ys[i] - xs[i];
    }
    const ConsumptionSequence x(xs);
    const RequestSequence y(ys);
    const BatteryTrajectory traj = trajectory(x, y, cfg);
    const long long diff = y.sum() - x.sum();
    conservation.record(
        traj.stable() && diff - (traj.states.back() - traj.states.front()) == 0 &&
            std::llabs(diff) <= beta,
        [&] { return describe_cfg(cfg) + " x=" + to_string(x) + " y=" + to_string(y); });
  }
  report.checks.push_back(conservation.finish("all pairs conserve energy"));
  return report;
}

using SuiteFn = SuiteReport (*)(const SuiteOptions&);

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"theorem1", theorem1_suite},
    {"theorem2", theorem2_suite},
    {"theorem3", theorem3_suite},
    {"theorem4", theorem4_suite},
    {"trapdoor-equivalence", trapdoor_suite},
    {"disjointness", disjointness_suite},
    {"oracle", oracle_suite},
    {"conservation", conservation_suite},
};

}  // namespace

bool SuiteReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : kSuites) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& s : kSuites) {
    if (name != s.name) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report = s.fn(options);
    report.suite = name;
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }
  throw DomainError("unknown suite '" + name + "'");
}

nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json j = {{"name", c.name},
                        {"passed", c.passed()},
                        {"cases", c.cases},
                        {"failures", c.failures},
                        {"detail", c.detail}};
    if (!c.witness.is_null()) j["witness"] = c.witness;
    checks.push_back(std::move(j));
  }
  return {{"suite", report.suite},
          {"passed", report.passed()},
          {"checks", std::move(checks)},
          {"notes", report.notes},
          {"elapsed_seconds", report.elapsed_seconds}};
}

}  // namespace smprivacy
