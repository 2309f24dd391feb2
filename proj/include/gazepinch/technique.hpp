#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "gazepinch/errors.hpp"
#include "gazepinch/gaze.hpp"
#include "gazepinch/geometry.hpp"
#include "gazepinch/input.hpp"
#include "gazepinch/pinch.hpp"

namespace gazepinch {

// Five ways to toggle the gazed object into or out of the selection group.
//
//   FullDH    dominant-hand full pinch confirms, while the other hand holds a
//             full pinch to keep multi-select mode on (baseline).
//   SemiNDH   dominant hand holds a semi pinch as the mode; the other hand's
//             full pinch confirms.
//   SemiDwell semi-pinch mode; resting the gaze on an object confirms.
//   SemiSwipe semi-pinch mode; a lateral hand swipe confirms.
//   SemiTilt  semi-pinch mode; rolling the hand confirms.
enum class TechniqueId { FullDH, SemiNDH, SemiDwell, SemiSwipe, SemiTilt };

inline const char* to_string(TechniqueId t) {
  switch (t) {
    case TechniqueId::FullDH: return "fulldh";
    case TechniqueId::SemiNDH: return "semindh";
    case TechniqueId::SemiDwell: return "semidwell";
    case TechniqueId::SemiSwipe: return "semiswipe";
    case TechniqueId::SemiTilt: return "semitilt";
  }
  return "?";
}

inline TechniqueId technique_from_string(const std::string& s) {
  if (s == "fulldh") return TechniqueId::FullDH;
  if (s == "semindh") return TechniqueId::SemiNDH;
  if (s == "semidwell") return TechniqueId::SemiDwell;
  if (s == "semiswipe") return TechniqueId::SemiSwipe;
  if (s == "semitilt") return TechniqueId::SemiTilt;
  throw ConfigError("unknown technique '" + s + "'");
}

inline constexpr TechniqueId kAllTechniques[] = {
    TechniqueId::FullDH, TechniqueId::SemiNDH, TechniqueId::SemiDwell,
    TechniqueId::SemiSwipe, TechniqueId::SemiTilt};

struct TechniqueParams {
  double dwell_time = 0.5;       // seconds of continuous gaze (SemiDwell)
  double swipe_distance = 0.10;  // meters of lateral palm travel (SemiSwipe)
  double tilt_angle = 30.0;      // degrees of hand roll to confirm (SemiTilt)
  double tilt_gain = 3.0;        // indicator rotation per unit of hand roll
  bool left_handed = false;      // mirrors swipe direction and roll sign

  void validate() const {
    if (dwell_time <= 0.0 || swipe_distance <= 0.0 || tilt_angle <= 0.0 ||
        tilt_gain <= 0.0) {
      throw ConfigError("technique parameters must be positive");
    }
  }
};

// Here "mode" means multi-selection is engaged and confirms are live.
inline bool mode_active(TechniqueId id, PinchState dh, PinchState ndh) {
  if (id == TechniqueId::FullDH) return ndh == PinchState::FullPinch;
  return dh == PinchState::SemiPinch;
}

enum class IndicatorKind { None, Swipe, Tilt };

// Progress feedback attached to the gazed object while a swipe or tilt is in
// flight. Absent (kind=None) unless the mode is on and an object is gazed.
struct IndicatorState {
  IndicatorKind kind = IndicatorKind::None;
  double progress = 0.0;        // 0..1 toward the confirm threshold
  Vec3 anchor_position{};       // Swipe: palm position the travel is measured from
  double anchor_roll_deg = 0.0; // Tilt: hand roll the delta is measured from
  int target = -1;              // object id the indicator is attached to
};

// Everything a technique may look at for one frame. States are the already
// stepped per-hand pinch states for this frame's samples.
struct TechniqueContext {
  PinchState dh_state = PinchState::FullRelease;
  PinchState ndh_state = PinchState::FullRelease;
  HandPose dh_pose{};
  HandPose ndh_pose{};
  GazeStatus gaze{};
  double now = 0.0;
};

struct TechniqueStep {
  std::optional<int> toggle{};  // object to flip in the group, if any
  IndicatorState indicator{};
};

namespace detail {

// Signed roll of the palm about the world forward axis, degrees, where
// positive means rightward for a right-handed user (mirrored by the flag).
inline std::optional<double> rightward_roll(const Orientation& q, bool left_handed) {
  auto twist = twist_about_forward(q);
  if (!twist) return std::nullopt;
  return left_handed ? *twist : -*twist;
}

}  // namespace detail

// Dwell confirm. The timer runs on the gaze episode itself, so a fixation
// that began before the mode engaged counts; emission still requires the mode
// to be on at that instant. One toggle per episode: after firing, the episode
// is consumed and the gaze must leave and re-enter the object to fire again.
class SemiDwellTechnique {
 public:
  TechniqueStep step(const TechniqueContext& ctx, const TechniqueParams& p) {
    TechniqueStep out;
    if (ctx.dh_state != PinchState::SemiPinch || !ctx.gaze.gazed_object) return out;
    const int obj = *ctx.gaze.gazed_object;
    const double enter = *ctx.gaze.gaze_enter_time;
    if (consumed_ && consumed_->first == obj && consumed_->second == enter) return out;
    if (ctx.now - enter >= p.dwell_time) {
      consumed_ = {{obj, enter}};
      out.toggle = obj;
    }
    return out;
  }

 private:
  std::optional<std::pair<int, double>> consumed_{};
};

// Swipe confirm. An episode arms when the mode is on and an object is gazed:
// the palm position at that frame becomes the anchor, and leftward travel
// from it fills the indicator. Reaching swipe_distance toggles and re-arms at
// the current palm position. Gaze switches re-anchor; losing gaze or mode
// kills the indicator. Rightward travel never advances progress.
class SemiSwipeTechnique {
 public:
  TechniqueStep step(const TechniqueContext& ctx, const TechniqueParams& p) {
    TechniqueStep out;
    if (ctx.dh_state != PinchState::SemiPinch || !ctx.gaze.gazed_object) {
      armed_ = false;
      last_ = IndicatorState{};
      return out;
    }
    if (!ctx.dh_pose.tracked) {
      out.indicator = last_;  // hold through tracking dropouts
      return out;
    }
    const int obj = *ctx.gaze.gazed_object;
    const double enter = *ctx.gaze.gaze_enter_time;
    if (!armed_ || target_ != obj || episode_enter_ != enter) {
      armed_ = true;
      target_ = obj;
      episode_enter_ = enter;
      anchor_ = ctx.dh_pose.palm_center;
    }

    double travel = anchor_.x - ctx.dh_pose.palm_center.x;
    if (p.left_handed) travel = -travel;
    double progress = travel / p.swipe_distance;
    if (progress < 0.0) progress = 0.0;
    if (progress > 1.0) progress = 1.0;

    if (travel >= p.swipe_distance) {
      out.toggle = obj;
      anchor_ = ctx.dh_pose.palm_center;  // re-arm for the next confirm
    }
    out.indicator = {IndicatorKind::Swipe, progress, anchor_, 0.0, obj};
    last_ = out.indicator;
    return out;
  }

 private:
  bool armed_ = false;
  int target_ = -1;
  double episode_enter_ = 0.0;
  Vec3 anchor_{};
  IndicatorState last_{};
};

// Tilt confirm. Mirrors the swipe structure with hand roll instead of palm
// travel. The indicator rotates tilt_gain times faster than the hand and
// clamps at 90 degrees; the toggle itself fires on the raw roll delta
// reaching tilt_angle. Leftward roll never advances progress. A degenerate
// orientation (no measurable roll) holds the previous indicator.
class SemiTiltTechnique {
 public:
  TechniqueStep step(const TechniqueContext& ctx, const TechniqueParams& p) {
    TechniqueStep out;
    if (ctx.dh_state != PinchState::SemiPinch || !ctx.gaze.gazed_object) {
      armed_ = false;
      last_ = IndicatorState{};
      return out;
    }
    auto roll = ctx.dh_pose.tracked
                    ? detail::rightward_roll(ctx.dh_pose.palm_orientation, p.left_handed)
                    : std::nullopt;
    if (!roll) {
      out.indicator = last_;
      return out;
    }
    const int obj = *ctx.gaze.gazed_object;
    const double enter = *ctx.gaze.gaze_enter_time;
    if (!armed_ || target_ != obj || episode_enter_ != enter) {
      armed_ = true;
      target_ = obj;
      episode_enter_ = enter;
      anchor_roll_ = *roll;
    }

    const double delta = wrap_degrees(*roll - anchor_roll_);
    double angle = p.tilt_gain * (delta > 0.0 ? delta : 0.0);
    if (angle > 90.0) angle = 90.0;

    if (delta >= p.tilt_angle) {
      out.toggle = obj;
      anchor_roll_ = *roll;  // re-arm
    }
    out.indicator = {IndicatorKind::Tilt, angle / 90.0, Vec3{}, anchor_roll_, obj};
    last_ = out.indicator;
    return out;
  }

 private:
  bool armed_ = false;
  int target_ = -1;
  double episode_enter_ = 0.0;
  double anchor_roll_ = 0.0;
  IndicatorState last_{};
};

// Non-dominant full pinch confirms while the dominant hand holds the semi
// pinch. Edge triggered: the pinch must open back past the full-pinch exit
// before it can confirm again, which the pinch state machine enforces.
class SemiNdhTechnique {
 public:
  TechniqueStep step(const TechniqueContext& ctx, const TechniqueParams&) {
    TechniqueStep out;
    const bool rising =
        ctx.ndh_state == PinchState::FullPinch && prev_ndh_ != PinchState::FullPinch;
    prev_ndh_ = ctx.ndh_state;
    if (rising && ctx.dh_state == PinchState::SemiPinch && ctx.gaze.gazed_object) {
      out.toggle = *ctx.gaze.gazed_object;
    }
    return out;
  }

 private:
  PinchState prev_ndh_ = PinchState::FullRelease;
};

// Baseline: dominant full pinch confirms while the non-dominant hand holds a
// full pinch as the mode. A dominant full pinch with the mode off is not a
// confirm; the session treats a held one as the finalize gesture.
class FullDhTechnique {
 public:
  TechniqueStep step(const TechniqueContext& ctx, const TechniqueParams&) {
    TechniqueStep out;
    const bool rising =
        ctx.dh_state == PinchState::FullPinch && prev_dh_ != PinchState::FullPinch;
    prev_dh_ = ctx.dh_state;
    if (rising && ctx.ndh_state == PinchState::FullPinch && ctx.gaze.gazed_object) {
      out.toggle = *ctx.gaze.gazed_object;
    }
    return out;
  }

 private:
  PinchState prev_dh_ = PinchState::FullRelease;
};

class Technique {
 public:
  explicit Technique(TechniqueId id) : id_(id) {
    switch (id) {
      case TechniqueId::FullDH: impl_ = FullDhTechnique{}; break;
      case TechniqueId::SemiNDH: impl_ = SemiNdhTechnique{}; break;
      case TechniqueId::SemiDwell: impl_ = SemiDwellTechnique{}; break;
      case TechniqueId::SemiSwipe: impl_ = SemiSwipeTechnique{}; break;
      case TechniqueId::SemiTilt: impl_ = SemiTiltTechnique{}; break;
    }
  }

  TechniqueId id() const { return id_; }

  TechniqueStep step(const TechniqueContext& ctx, const TechniqueParams& p) {
    return std::visit([&](auto& t) { return t.step(ctx, p); }, impl_);
  }

 private:
  TechniqueId id_;
  std::variant<FullDhTechnique, SemiNdhTechnique, SemiDwellTechnique,
               SemiSwipeTechnique, SemiTiltTechnique>
      impl_{};
};

}  // namespace gazepinch
