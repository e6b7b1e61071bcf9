// SPDX-License-Identifier: Apache-2.0
//
// Ball-in-box trapdoor channel. A box holds `capacity` balls, red_count of
// them red. Each step one ball is thrown in and one ball is drawn out. For
// alpha = gamma = 1 this is the energy management channel with red balls in
// the role of stored energy units and blue in the role of symbol 1.
#ifndef SMPRIVACY_TRAPDOOR_H_
#define SMPRIVACY_TRAPDOOR_H_

#include <optional>
#include <vector>

#include "smprivacy/ems.h"

namespace smprivacy {

enum class Ball { kRed, kBlue };

inline int blue_indicator(Ball b) { return b == Ball::kBlue ? 1 : 0; }

class TrapdoorBox {
 public:
  TrapdoorBox(int capacity, int red_count);

  int capacity() const { return capacity_; }
  int red_count() const { return red_count_; }
  int blue_count() const { return capacity_ - red_count_; }

  bool operator==(const TrapdoorBox&) const = default;

 private:
  int capacity_;
  int red_count_;
};

// Throws in_ball, then draws out_ball. Returns nullopt when the draw is
// impossible. The red-count recursion r' = r + bl(out) - bl(in) and the
// physical ball count are both evaluated; disagreement throws
// InvariantViolation.
std::optional<TrapdoorBox> trapdoor_step(const TrapdoorBox& box, Ball in_ball, Ball out_ball);

struct TrapdoorTrace {
  std::vector<Ball> in;
  std::vector<Ball> out;
  int r0 = 0;

  bool operator==(const TrapdoorTrace&) const = default;
};

// True iff every step of the trace is feasible from a box of `capacity`
// balls with r0 red.
bool trapdoor_stable(const TrapdoorTrace& trace, int capacity);

// Symbol 1 maps to blue and 0 to red on both streams; r0 = s0. Throws
// UnsupportedConfigError unless alpha = gamma = 1.
TrapdoorTrace ems_to_trapdoor(const ConsumptionSequence& x, const RequestSequence& y,
                              const EmsConfig& cfg);

struct EmsPair {
  ConsumptionSequence x;
  RequestSequence y;
  int s0 = 0;
};

EmsPair trapdoor_to_ems(const TrapdoorTrace& trace);

}  // namespace smprivacy

#endif  // SMPRIVACY_TRAPDOOR_H_
