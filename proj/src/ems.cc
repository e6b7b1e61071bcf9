// SPDX-License-Identifier: Apache-2.0
#include "smprivacy/ems.h"

#include <algorithm>
#include <limits>
#include <sstream>

#include "smprivacy/errors.h"

namespace smprivacy {

EmsConfig::EmsConfig(int alpha, int gamma, int beta, int s0)
    : alpha_(alpha), gamma_(gamma), beta_(beta), s0_(s0) {
  if (alpha < 1) {
    throw DomainError("alpha must be >= 1, got " + std::to_string(alpha));
  }
  if (gamma < alpha) {
    throw DomainError("gamma must be >= alpha, got gamma=" + std::to_string(gamma) +
                      " alpha=" + std::to_string(alpha));
  }
  if (beta < 0) {
    throw DomainError("beta must be >= 0, got " + std::to_string(beta));
  }
  if (s0 < 0 || s0 > beta) {
    throw DomainError("s0 must lie in [0, beta], got s0=" + std::to_string(s0) +
                      " beta=" + std::to_string(beta));
  }
}

std::ostream& operator<<(std::ostream& os, const EmsConfig& cfg) {
  return os << "EmsConfig{alpha=" << cfg.alpha() << ", gamma=" << cfg.gamma()
            << ", beta=" << cfg.beta() << ", s0=" << cfg.s0() << '}';
}

std::string to_string(const ConsumptionSequence& seq) {
  std::ostringstream os;
  os << seq;
  return os.str();
}

std::string to_string(const RequestSequence& seq) {
  std::ostringstream os;
  os << seq;
  return os.str();
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kOutage:
      return "outage";
    case ViolationKind::kWaste:
      return "waste";
  }
  return "unknown";
}

namespace {

void check_symbol(int value, int max_value, const char* what, std::size_t index) {
  if (value < 0 || value > max_value) {
    throw DomainError(std::string(what) + "[" + std::to_string(index) + "] = " +
                      std::to_string(value) + " outside [0, " + std::to_string(max_value) +
                      "]");
  }
}

}  // namespace

void validate(const ConsumptionSequence& x, const EmsConfig& cfg) {
  for (std::size_t i = 0; i < x.size(); ++i) check_symbol(x[i], cfg.alpha(), "x", i);
}

void validate(const RequestSequence& y, const EmsConfig& cfg) {
  for (std::size_t i = 0; i < y.size(); ++i) check_symbol(y[i], cfg.gamma(), "y", i);
}

StepOutcome step(int s, int x, int y, const EmsConfig& cfg) {
  check_symbol(s, cfg.beta(), "s", 0);
  check_symbol(x, cfg.alpha(), "x", 0);
  check_symbol(y, cfg.gamma(), "y", 0);
  StepOutcome out;
  out.level = s + y - x;
  if (out.level < 0) {
    out.violation = ViolationKind::kOutage;
  } else if (out.level > cfg.beta()) {
    out.violation = ViolationKind::kWaste;
  }
  return out;
}

BatteryTrajectory trajectory(const ConsumptionSequence& x, const RequestSequence& y,
                             const EmsConfig& cfg) {
  if (x.size() != y.size()) {
    throw DomainError("length mismatch: |x|=" + std::to_string(x.size()) +
                      " |y|=" + std::to_string(y.size()));
  }
  validate(x, cfg);
  validate(y, cfg);
  BatteryTrajectory traj;
  traj.states.reserve(x.size() + 1);
  traj.states.push_back(cfg.s0());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const StepOutcome next = step(traj.states.back(), x[i], y[i], cfg);
    if (!next.ok()) {
      traj.violation = Violation{i, *next.violation};
      break;
    }
    traj.states.push_back(next.level);
  }
  return traj;
}

bool is_stable(const ConsumptionSequence& x, const RequestSequence& y, const EmsConfig& cfg) {
  return trajectory(x, y, cfg).stable();
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exponent) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result *= base;
  }
  return result;
}

std::vector<RequestSequence> enumerate_stable_set(const ConsumptionSequence& x,
                                                  const EmsConfig& cfg,
                                                  const EnumerationLimits& limits) {
  validate(x, cfg);
  const std::uint64_t candidates =
      saturating_pow(static_cast<std::uint64_t>(cfg.gamma()) + 1, x.size());
  if (candidates > limits.max_candidates) {
    throw ResourceError("stable-set enumeration needs " + std::to_string(candidates) +
                        " candidates, cap is " + std::to_string(limits.max_candidates));
  }

  std::vector<RequestSequence> result;
  const std::size_t n = x.size();
  std::vector<int> prefix(n, 0);
  std::vector<int> states(n + 1, 0);
  states[0] = cfg.s0();

  // Explicit-stack DFS: next_choice[i] is the next y value to try at depth i.
  std::vector<int> next_choice(n + 1, 0);
  std::vector<int> last_choice(n + 1, 0);
  auto open = [&](std::size_t depth) {
    const int s = states[depth];
    const int xi = x[depth];
    next_choice[depth] = std::max(0, xi - s);
    last_choice[depth] = std::min(cfg.gamma(), cfg.beta() - s + xi);
  };

  if (n == 0) {
    result.emplace_back();
    return result;
  }
  std::size_t depth = 0;
  open(0);
  while (true) {
    if (next_choice[depth] > last_choice[depth]) {
      if (depth == 0) break;
      --depth;
      continue;
    }
    const int y = next_choice[depth]++;
    prefix[depth] = y;
    states[depth + 1] = states[depth] + y - x[depth];
    if (depth + 1 == n) {
      result.emplace_back(prefix);
    } else {
      ++depth;
      open(depth);
    }
  }
  if (result.empty()) {
    throw InvariantViolation("empty stable set for x=" + to_string(x));
  }
  return result;
}

void for_each_sequence(std::size_t n, int max_symbol,
                       const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> seq(n, 0);
  while (true) {
    fn(seq);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (seq[i] < max_symbol) {
        ++seq[i];
        break;
      }
      seq[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace smprivacy
