// SPDX-License-Identifier: Apache-2.0
#include "smprivacy/trapdoor.h"

#include <string>

#include "smprivacy/errors.h"

namespace smprivacy {

TrapdoorBox::TrapdoorBox(int capacity, int red_count) : capacity_(capacity), red_count_(red_count) {
  if (capacity < 0 || red_count < 0 || red_count > capacity) {
    throw DomainError("trapdoor box needs 0 <= red_count <= capacity, got red_count=" +
                      std::to_string(red_count) + " capacity=" + std::to_string(capacity));
  }
}

std::optional<TrapdoorBox> trapdoor_step(const TrapdoorBox& box, Ball in_ball, Ball out_ball) {
  const int next_red = box.red_count() + blue_indicator(out_ball) - blue_indicator(in_ball);
  const bool count_ok = next_red >= 0 && next_red <= box.capacity();

  // capacity + 1 balls are in the box between insertion and extraction.
  const int red_inside = box.red_count() + (in_ball == Ball::kRed ? 1 : 0);
  const int blue_inside = box.blue_count() + (in_ball == Ball::kBlue ? 1 : 0);
  const bool draw_ok = out_ball == Ball::kRed ? red_inside > 0 : blue_inside > 0;

  if (count_ok != draw_ok) {
    throw InvariantViolation("trapdoor count recursion and ball draw disagree at r=" +
                             std::to_string(box.red_count()));
  }
  if (!count_ok) return std::nullopt;
  return TrapdoorBox(box.capacity(), next_red);
}

bool trapdoor_stable(const TrapdoorTrace& trace, int capacity) {
  if (trace.in.size() != trace.out.size()) {
    throw DomainError("trapdoor trace streams differ in length");
  }
  if (trace.r0 < 0 || trace.r0 > capacity) return false;
  TrapdoorBox box(capacity, trace.r0);
  for (std::size_t i = 0; i < trace.in.size(); ++i) {
    auto next = trapdoor_step(box, trace.in[i], trace.out[i]);
    if (!next) return false;
    box = *next;
  }
  return true;
}

namespace {

Ball to_ball(int symbol) { return symbol == 1 ? Ball::kBlue : Ball::kRed; }

}  // namespace

TrapdoorTrace ems_to_trapdoor(const ConsumptionSequence& x, const RequestSequence& y,
                              const EmsConfig& cfg) {
  if (cfg.alpha() != 1 || cfg.gamma() != 1) {
    throw UnsupportedConfigError("trapdoor mapping needs alpha = gamma = 1, got alpha=" +
                                 std::to_string(cfg.alpha()) +
                                 " gamma=" + std::to_string(cfg.gamma()));
  }
  if (x.size() != y.size()) throw DomainError("length mismatch between x and y");
  validate(x, cfg);
  validate(y, cfg);
  TrapdoorTrace trace;
  trace.r0 = cfg.s0();
  trace.in.reserve(x.size());
  trace.out.reserve(y.size());
  for (int v : x) trace.in.push_back(to_ball(v));
  for (int v : y) trace.out.push_back(to_ball(v));
  return trace;
}

EmsPair trapdoor_to_ems(const TrapdoorTrace& trace) {
  std::vector<int> x;
  std::vector<int> y;
  x.reserve(trace.in.size());
  y.reserve(trace.out.size());
  for (Ball b : trace.in) x.push_back(blue_indicator(b));
  for (Ball b : trace.out) y.push_back(blue_indicator(b));
  return EmsPair{ConsumptionSequence(std::move(x)), RequestSequence(std::move(y)), trace.r0};
}

}  // namespace smprivacy
