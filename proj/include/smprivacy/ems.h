// SPDX-License-Identifier: Apache-2.0
//
// Discrete-time energy management channel: a household consumes x_i units,
// the management unit requests y_i units from the grid, and a battery of
// capacity beta absorbs the difference, s_{i+1} = s_i + y_i - x_i.
#ifndef SMPRIVACY_EMS_H_
#define SMPRIVACY_EMS_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace smprivacy {

// Alphabet and battery parameters of one channel instance. Immutable; the
// constructor rejects gamma < alpha, alpha < 1, beta < 0 and s0 outside
// [0, beta].
class EmsConfig {
 public:
  EmsConfig(int alpha, int gamma, int beta, int s0);

  int alpha() const { return alpha_; }
  int gamma() const { return gamma_; }
  int beta() const { return beta_; }
  int s0() const { return s0_; }

  EmsConfig with_s0(int s0) const { return EmsConfig(alpha_, gamma_, beta_, s0); }

  bool operator==(const EmsConfig&) const = default;

 private:
  int alpha_;
  int gamma_;
  int beta_;
  int s0_;
};

std::ostream& operator<<(std::ostream& os, const EmsConfig& cfg);

// Ordered integer symbols. The tag keeps consumption and request sequences
// from being passed in each other's place.
template <typename Tag>
class SymbolSequence {
 public:
  SymbolSequence() = default;
  explicit SymbolSequence(std::vector<int> symbols) : symbols_(std::move(symbols)) {}
  SymbolSequence(std::initializer_list<int> symbols) : symbols_(symbols) {}

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  int operator[](std::size_t i) const { return symbols_[i]; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }
  std::span<const int> view() const { return symbols_; }
  const std::vector<int>& values() const { return symbols_; }

  long long sum() const {
    long long total = 0;
    for (int v : symbols_) total += v;
    return total;
  }

  auto operator<=>(const SymbolSequence&) const = default;

 private:
  std::vector<int> symbols_;
};

struct ConsumptionTag {};
struct RequestTag {};
using ConsumptionSequence = SymbolSequence<ConsumptionTag>;
using RequestSequence = SymbolSequence<RequestTag>;

template <typename Tag>
std::ostream& operator<<(std::ostream& os, const SymbolSequence<Tag>& seq) {
  os << '(';
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) os << ',';
    os << seq[i];
  }
  return os << ')';
}

std::string to_string(const ConsumptionSequence& seq);
std::string to_string(const RequestSequence& seq);

enum class ViolationKind { kOutage, kWaste };

const char* to_string(ViolationKind kind);

struct StepOutcome {
  // s + y - x, whether or not it lies in [0, beta].
  int level = 0;
  std::optional<ViolationKind> violation;

  bool ok() const { return !violation.has_value(); }
};

struct Violation {
  std::size_t index = 0;
  ViolationKind kind = ViolationKind::kOutage;

  bool operator==(const Violation&) const = default;
};

// states holds s_0 .. s_k where k is the violating index, or s_0 .. s_n when
// the pair is stable.
struct BatteryTrajectory {
  std::vector<int> states;
  std::optional<Violation> violation;

  bool stable() const { return !violation.has_value(); }
};

struct EnumerationLimits {
  std::uint64_t max_candidates = std::uint64_t{1} << 24;
};

// Throws DomainError unless every symbol lies in [0, alpha] (resp. [0, gamma]).
void validate(const ConsumptionSequence& x, const EmsConfig& cfg);
void validate(const RequestSequence& y, const EmsConfig& cfg);

// One battery update. Outage and waste are reported in the outcome; a
// parameter outside its alphabet throws DomainError.
StepOutcome step(int s, int x, int y, const EmsConfig& cfg);

// Runs step from cfg.s0() and stops at the first violation.
BatteryTrajectory trajectory(const ConsumptionSequence& x, const RequestSequence& y,
                             const EmsConfig& cfg);

bool is_stable(const ConsumptionSequence& x, const RequestSequence& y, const EmsConfig& cfg);

// All stable request sequences for x from cfg.s0(), in lexicographic order.
// Depth-first over Y^n; a prefix that already leaves [0, beta] is pruned.
// Throws ResourceError when (gamma+1)^n exceeds limits.max_candidates.
std::vector<RequestSequence> enumerate_stable_set(const ConsumptionSequence& x,
                                                  const EmsConfig& cfg,
                                                  const EnumerationLimits& limits = {});

// base^exponent, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::size_t exponent);

// Calls fn on every sequence in {0..max_symbol}^n in lexicographic order.
void for_each_sequence(std::size_t n, int max_symbol,
                       const std::function<void(const std::vector<int>&)>& fn);

}  // namespace smprivacy

#endif  // SMPRIVACY_EMS_H_
