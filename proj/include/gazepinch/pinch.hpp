#pragma once

#include <limits>
#include <optional>
#include <string>

#include "gazepinch/errors.hpp"
#include "gazepinch/util.hpp"

namespace gazepinch {

enum class PinchState { FullPinch, SemiPinch, FullRelease };

inline const char* to_string(PinchState s) {
  switch (s) {
    case PinchState::FullPinch: return "full_pinch";
    case PinchState::SemiPinch: return "semi_pinch";
    case PinchState::FullRelease: return "full_release";
  }
  return "?";
}

// Fingertip-distance bands, meters. The gaps between bands are intentional
// hysteresis: a sample inside (full_enter, semi_lower) or
// (semi_upper, release_enter) never moves the state.
struct PinchThresholds {
  double full_enter = 0.015;
  double semi_lower = 0.02;
  double semi_upper = 0.07;
  double release_enter = 0.10;

  void validate() const {
    if (!(0.0 < full_enter && full_enter < semi_lower && semi_lower < semi_upper &&
          semi_upper < release_enter)) {
      throw ConfigError("pinch thresholds must satisfy 0 < full_enter < semi_lower"
                        " < semi_upper < release_enter");
    }
  }
};

enum class PinchTransition { None, EnteredFull, EnteredSemi, EnteredRelease };

// Per-hand pinch classifier.
//
// Starts in FullRelease. One distance sample per frame moves the state by at
// most one step:
//   FullRelease -> SemiPinch   iff d in [semi_lower, semi_upper]
//   SemiPinch   -> FullPinch   iff d <= full_enter
//   SemiPinch   -> FullRelease iff d >= release_enter
//   FullPinch   -> SemiPinch   iff d >= semi_lower
// Any other sample (gap bands included) leaves the state alone, and an absent
// sample (hand untracked) does too. FullRelease -> FullPinch is therefore
// impossible without an intervening SemiPinch.
class PinchTracker {
 public:
  explicit PinchTracker(PinchThresholds thresholds = {})
      : th_(thresholds) {
    th_.validate();
  }

  // Feed one sample. Timestamps must be strictly increasing.
  PinchTransition step(double frame_time, std::optional<double> dist) {
    if (frame_time <= last_time_) {
      throw ClockError("pinch tracker time went backwards: " +
                       format_double(frame_time) + " after " +
                       format_double(last_time_));
    }
    last_time_ = frame_time;
    if (!dist) return PinchTransition::None;

    const double d = *dist;
    PinchState next = state_;
    switch (state_) {
      case PinchState::FullRelease:
        if (d >= th_.semi_lower && d <= th_.semi_upper) next = PinchState::SemiPinch;
        break;
      case PinchState::SemiPinch:
        if (d >= th_.release_enter) next = PinchState::FullRelease;
        else if (d <= th_.full_enter) next = PinchState::FullPinch;
        break;
      case PinchState::FullPinch:
        if (d >= th_.semi_lower) next = PinchState::SemiPinch;
        break;
    }
    if (next == state_) return PinchTransition::None;

    state_ = next;
    hold_start_.reset();
    switch (next) {
      case PinchState::FullPinch:
        hold_start_ = frame_time;
        return PinchTransition::EnteredFull;
      case PinchState::SemiPinch:
        return PinchTransition::EnteredSemi;
      case PinchState::FullRelease:
        return PinchTransition::EnteredRelease;
    }
    return PinchTransition::None;
  }

  PinchState state() const { return state_; }

  // Time the current FullPinch began, if the hand is in one.
  std::optional<double> hold_start() const { return hold_start_; }

  // True once the hand has stayed in FullPinch for at least `dwell` seconds
  // as of `now`. `now` is the time of the latest stepped frame.
  bool debounced_full_hold(double now, double dwell = 0.25) const {
    return state_ == PinchState::FullPinch && hold_start_ &&
           now - *hold_start_ >= dwell;
  }

  const PinchThresholds& thresholds() const { return th_; }

 private:
  PinchThresholds th_{};
  PinchState state_ = PinchState::FullRelease;
  std::optional<double> hold_start_{};
  double last_time_ = -std::numeric_limits<double>::infinity();
};

}  // namespace gazepinch
