// SPDX-License-Identifier: Apache-2.0
#include "cli.h"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smprivacy/errors.h"
#include "smprivacy/leakage.h"
#include "smprivacy/policy.h"
#include "smprivacy/processes.h"
#include "smprivacy/suites.h"
#include "smprivacy/sweep.h"

namespace smprivacy::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Params {
  std::vector<int> alpha{1};
  std::vector<int> gamma;
  std::vector<int> beta;
  std::vector<double> ratio;
  std::vector<double> mu;
  int s0 = 0;
  std::optional<int> l;
  std::optional<int> m;
  std::optional<std::size_t> n;
  std::uint64_t seed = SuiteOptions{}.seed;
  std::string out;
  std::string config;
  std::string x;
  std::string process;
  std::string policy = "block";
  std::string kind;
  std::string bound = "theorem1";
  std::string suite;
};

// Flag values win; a key from the JSON config fills only flags left unset.
class ConfigMerge {
 public:
  explicit ConfigMerge(json config) : config_(std::move(config)) {}

  template <typename T>
  void fill(const CLI::Option* opt, const char* key, T& target) const {
    if (opt->count() > 0 || !config_.contains(key)) return;
    try {
      target = config_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
  }

  template <typename T>
  void fill(const CLI::Option* opt, const char* key, std::vector<T>& target) const {
    if (opt->count() > 0 || !config_.contains(key)) return;
    try {
      const json& v = config_.at(key);
      target = v.is_array() ? v.get<std::vector<T>>() : std::vector<T>{v.get<T>()};
    } catch (const json::exception& e) {
      throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
  }

  template <typename T>
  void fill(const CLI::Option* opt, const char* key, std::optional<T>& target) const {
    if (opt->count() > 0 || !config_.contains(key)) return;
    try {
      target = config_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
  }

  bool has(const char* key) const { return config_.contains(key); }

 private:
  json config_;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

int single(const std::vector<int>& values, const char* flag) {
  if (values.size() != 1) {
    throw UsageError(std::string(flag) + " takes exactly one value for this command");
  }
  return values.front();
}

EmsConfig single_config(const Params& p) {
  const int alpha = single(p.alpha, "--alpha");
  const int gamma = p.gamma.empty() ? alpha : single(p.gamma, "--gamma");
  if (p.beta.empty()) throw UsageError("--beta is required for this command");
  return EmsConfig(alpha, gamma, single(p.beta, "--beta"), p.s0);
}

std::vector<int> parse_symbols(const std::string& text) {
  std::string trimmed;
  for (char c : text) {
    if (c != '[' && c != ']' && c != '(' && c != ')' && c != ' ') trimmed += c;
  }
  std::vector<int> out;
  std::stringstream ss(trimmed);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse symbol '" + item + "' in --x");
    }
  }
  if (out.empty()) throw UsageError("--x is empty");
  return out;
}

Policy make_policy(const Params& p, const EmsConfig& cfg) {
  if (p.policy == "block") {
    return BlockPolicy(cfg, p.l.value_or(max_block_length(cfg)));
  }
  if (p.policy == "echo") return echo_policy();
  if (p.policy == "greedy-charge") return greedy_charge_policy(cfg);
  if (p.policy == "greedy-discharge") return greedy_discharge_policy(cfg);
  throw UsageError("unknown policy '" + p.policy + "'");
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void report_skips(const std::vector<GridSkip>& skipped, std::ostream& err) {
  for (const auto& s : skipped) err << "skipped " << s.point << ": " << s.reason << '\n';
}

int cmd_bound(const Params& p, std::ostream& out, std::ostream& err) {
  const Grid grid = expand_grid(p.alpha, p.beta, p.ratio);
  const CsvTable table = bound_table(grid);
  report_skips(table.skipped, err);
  Output o(p.out, out);
  o.stream() << table.to_string();
  return kExitOk;
}

int cmd_avg_bound(const Params& p, std::ostream& out, std::ostream& err) {
  if (p.mu.empty()) throw UsageError("avg-bound needs at least one --mu value");
  const Grid grid = expand_grid(p.alpha, p.beta, p.ratio);
  const CsvTable table = avg_bound_table(grid, p.mu, p.n);
  report_skips(table.skipped, err);
  Output o(p.out, out);
  o.stream() << table.to_string();
  return kExitOk;
}

int cmd_verify(const Params& p, bool override_config, std::ostream& out) {
  SuiteOptions options;
  options.seed = p.seed;
  if (override_config) options.config = single_config(p);
  options.block_length = p.l;
  options.blocks = p.m;
  const SuiteReport report = run_suite(p.suite, options);
  Output o(p.out, out);
  o.stream() << to_json(report).dump(2) << '\n';
  return report.passed() ? kExitOk : kExitVerificationFailed;
}

void print_trace(const ConsumptionSequence& x, const RequestSequence& y, const EmsConfig& cfg,
                 std::ostream& os) {
  const BatteryTrajectory traj = trajectory(x, y, cfg);
  os << "i,x,y,s_before,s_after\n";
  for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) {
    os << i << ',' << x[i] << ',' << y[i] << ',' << traj.states[i] << ',' << traj.states[i + 1]
       << '\n';
  }
  if (traj.violation) {
    os << "violation=" << to_string(traj.violation->kind) << " at " << traj.violation->index
       << '\n';
  }
  os << "final_state=" << traj.states.back() << " y=" << y << '\n';
}

SequenceDistribution load_or_generate(const Params& p, const EmsConfig& cfg) {
  if (!p.process.empty()) return distribution_from_json(read_json_file(p.process));
  const int l = p.l.value_or(disjoint_block_length(cfg));
  const int m = p.m.value_or(1);
  if (p.kind == "uniform-block") return uniform_block_process(cfg, l, m);
  if (p.kind == "mean-block") {
    if (p.mu.size() != 1) throw UsageError("mean-block needs exactly one --mu value");
    return mean_block_process(cfg, l, m, p.mu.front());
  }
  throw UsageError("give --process FILE or --kind uniform-block|mean-block");
}

BoundKind parse_bound(const std::string& name) {
  if (name == "theorem1") return BoundKind::kTheorem1;
  if (name == "theorem3") return BoundKind::kTheorem3;
  throw UsageError("unknown bound '" + name + "'");
}

int cmd_simulate(const Params& p, std::ostream& out) {
  const EmsConfig cfg = single_config(p);
  if (p.x.empty() && p.process.empty()) throw UsageError("simulate needs --x or --process");
  if (!p.x.empty() && !p.process.empty()) throw UsageError("give only one of --x and --process");
  const Policy policy = make_policy(p, cfg);
  Output o(p.out, out);
  if (!p.x.empty()) {
    const ConsumptionSequence x(parse_symbols(p.x));
    print_trace(x, policy(x), cfg, o.stream());
    return kExitOk;
  }
  const SequenceDistribution d = distribution_from_json(read_json_file(p.process));
  o.stream() << "p,x,y,final_state\n";
  for (const auto& [x, prob] : d.support()) {
    const RequestSequence y = policy(x);
    const BatteryTrajectory traj = trajectory(x, y, cfg);
    o.stream() << format_number(prob) << ',' << x << ',' << y << ','
               << (traj.stable() ? std::to_string(traj.states.back()) : "unstable") << '\n';
  }
  const LeakageReport report = exact_leakage(d, policy, cfg, parse_bound(p.bound));
  o.stream() << to_json(report).dump(2) << '\n';
  return kExitOk;
}

int cmd_leakage(const Params& p, std::ostream& out) {
  const EmsConfig cfg = single_config(p);
  const SequenceDistribution d = load_or_generate(p, cfg);
  const LeakageReport report = exact_leakage(d, make_policy(p, cfg), cfg, parse_bound(p.bound));
  Output o(p.out, out);
  o.stream() << to_json(report).dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Battery-mediated smart-meter privacy: leakage bounds and exact verification",
               "smprivacy"};
  app.require_subcommand(1);
  app.fallthrough();

  Params p;
  auto* o_alpha = app.add_option("--alpha", p.alpha, "peak consumption symbol(s)")->delimiter(',');
  auto* o_gamma = app.add_option("--gamma", p.gamma, "peak request symbol (default alpha)")->delimiter(',');
  auto* o_beta = app.add_option("--beta", p.beta, "battery capacity value(s)")->delimiter(',');
  auto* o_ratio = app.add_option("--ratio", p.ratio, "beta/alpha grid values")->delimiter(',');
  auto* o_mu = app.add_option("--mu", p.mu, "average consumption value(s)")->delimiter(',');
  auto* o_s0 = app.add_option("--s0", p.s0, "initial battery level");
  auto* o_l = app.add_option("--l", p.l, "block length");
  auto* o_m = app.add_option("--m", p.m, "number of blocks");
  auto* o_n = app.add_option("--n", p.n, "horizon (omit for the n -> infinity limit)");
  auto* o_seed = app.add_option("--seed", p.seed, "seed for randomized suites");
  auto* o_out = app.add_option("--out", p.out, "output file (default stdout)");
  app.add_option("--config", p.config, "JSON file with the same keys as the flags");
  auto* o_x = app.add_option("--x", p.x, "consumption sequence, e.g. 1,1,0,0");
  auto* o_process = app.add_option("--process", p.process, "distribution JSON fixture");
  auto* o_policy = app.add_option("--policy", p.policy,
                                  "block | echo | greedy-charge | greedy-discharge");
  auto* o_kind = app.add_option("--kind", p.kind, "generated process: uniform-block | mean-block");
  auto* o_bound = app.add_option("--bound", p.bound, "bound to report: theorem1 | theorem3");

  auto* bound = app.add_subcommand("bound", "1/floor((beta+1)/alpha) over a beta/alpha grid, as CSV");
  auto* avg = app.add_subcommand("avg-bound", "average-consumption bound over mu and beta/alpha, as CSV");
  auto* verify = app.add_subcommand("verify", "run a named verification suite, JSON report");
  verify->add_option("suite", p.suite, "suite name")->required();
  auto* simulate = app.add_subcommand("simulate", "per-step trace of a policy on one input or a fixture");
  auto* leakage = app.add_subcommand("leakage", "exact leakage report for a distribution and policy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    json config = json::object();
    if (!p.config.empty()) config = read_json_file(p.config);
    const ConfigMerge merge(config);
    merge.fill(o_alpha, "alpha", p.alpha);
    merge.fill(o_gamma, "gamma", p.gamma);
    merge.fill(o_beta, "beta", p.beta);
    merge.fill(o_ratio, "ratio", p.ratio);
    merge.fill(o_mu, "mu", p.mu);
    merge.fill(o_s0, "s0", p.s0);
    merge.fill(o_l, "l", p.l);
    merge.fill(o_m, "m", p.m);
    merge.fill(o_n, "n", p.n);
    merge.fill(o_seed, "seed", p.seed);
    merge.fill(o_out, "out", p.out);
    merge.fill(o_x, "x", p.x);
    merge.fill(o_process, "process", p.process);
    merge.fill(o_policy, "policy", p.policy);
    merge.fill(o_kind, "kind", p.kind);
    merge.fill(o_bound, "bound", p.bound);

    if (*bound) return cmd_bound(p, out, err);
    if (*avg) return cmd_avg_bound(p, out, err);
    if (*verify) {
      const auto& names = known_suites();
      if (std::find(names.begin(), names.end(), p.suite) == names.end()) {
        std::string list;
        for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        throw UsageError("unknown suite '" + p.suite + "' (known: " + list + ")");
      }
      return cmd_verify(p, o_beta->count() > 0 || merge.has("beta"), out);
    }
    if (*simulate) return cmd_simulate(p, out);
    if (*leakage) return cmd_leakage(p, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PolicyInfeasibleError& e) {
    err << "policy infeasible: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace smprivacy::cli
