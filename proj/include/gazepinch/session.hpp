#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "gazepinch/events.hpp"
#include "gazepinch/gaze.hpp"
#include "gazepinch/input.hpp"
#include "gazepinch/pinch.hpp"
#include "gazepinch/scene.hpp"
#include "gazepinch/technique.hpp"

namespace gazepinch {

enum class Phase { Idle, Selecting, Finalized };

struct GroupState {
  std::set<int> members;
  Phase phase = Phase::Idle;
};

struct SessionParams {
  PinchThresholds thresholds{};
  TechniqueParams technique{};
  double finalize_hold = 0.25;  // seconds of held full pinch that commits

  void validate() const {
    thresholds.validate();
    technique.validate();
    if (finalize_hold <= 0.0) throw ConfigError("finalize_hold must be positive");
  }
};

struct FrameOutput {
  std::vector<InteractionEvent> events;
  IndicatorState indicator{};
};

// Drives one trial: both pinch trackers, gaze bookkeeping, the technique, and
// the trial lifecycle.
//
//   Idle       waiting in the inter-trial interval; a dominant-hand
//              full-release edge starts the trial (targets appear).
//   Selecting  technique confirms toggle group membership. A dominant-hand
//              full-release edge empties the group but keeps selecting. A
//              dominant full pinch held for finalize_hold commits the group
//              and ends the trial; under FullDH that gesture only counts
//              while the non-dominant mode pinch is off, since otherwise it
//              is indistinguishable from a confirm in progress.
//   Finalized  trial over; further input is ignored.
//
// Gaze is resolved only while Selecting. During the inter-trial interval the
// layout is hidden behind a fixation cross, so no object is gazeable and no
// dwell can pre-charge before the targets appear.
class Session {
 public:
  Session(const Scene& scene, TechniqueId technique, SessionParams params = {})
      : scene_(&scene),
        params_(params),
        technique_(technique),
        dh_(params.thresholds),
        ndh_(params.thresholds) {
    params_.validate();
  }

  FrameOutput step(const InputFrame& frame) {
    FrameOutput out;
    const double now = frame.timestamp;

    const PinchTransition dh_edge = dh_.step(now, pinch_distance(frame.dominant));
    ndh_.step(now, pinch_distance(frame.non_dominant));

    bool started_now = false;
    if (group_.phase == Phase::Idle && dh_edge == PinchTransition::EnteredRelease) {
      group_.phase = Phase::Selecting;
      group_.members.clear();
      started_now = true;
      emit(out, {now, EventKind::TrialStarted});
    }

    if (group_.phase != Phase::Selecting) {
      gaze_ = GazeStatus{};
      return out;
    }

    gaze_ = update_gaze_status(gaze_, resolve_gaze(frame.gaze, *scene_), now);

    TechniqueContext ctx{dh_.state(), ndh_.state(), frame.dominant,
                         frame.non_dominant, gaze_, now};
    TechniqueStep ts = technique_.step(ctx, params_.technique);
    out.indicator = ts.indicator;
    if (ts.toggle) apply_toggle(out, now, *ts.toggle);

    // The release edge that started this trial is consumed by the phase
    // transition above; only a subsequent release empties the group.
    if (dh_edge == PinchTransition::EnteredRelease && !started_now) {
      group_.members.clear();
      emit(out, {now, EventKind::GroupCleared});
    }

    const bool fulldh_mode_on = technique_.id() == TechniqueId::FullDH &&
                                ndh_.state() == PinchState::FullPinch;
    if (dh_.debounced_full_hold(now, params_.finalize_hold) && !fulldh_mode_on) {
      group_.phase = Phase::Finalized;
      emit(out, {now, EventKind::GroupFinalized});
      emit(out, {now, EventKind::TrialEnded});
    }
    return out;
  }

  const GroupState& group() const { return group_; }
  const GazeStatus& gaze() const { return gaze_; }
  PinchState dh_state() const { return dh_.state(); }
  PinchState ndh_state() const { return ndh_.state(); }
  const std::vector<InteractionEvent>& log() const { return log_; }

  // Toggles requested outside Selecting (none should occur; see step()).
  std::uint64_t ignored_toggles() const { return ignored_toggles_; }

  Highlight highlight(int object_id) const {
    return highlight_for(gaze_.gazed_object == object_id,
                         group_.members.count(object_id) > 0);
  }

 private:
  void apply_toggle(FrameOutput& out, double now, int object) {
    if (group_.phase != Phase::Selecting) {
      ++ignored_toggles_;
      return;
    }
    const bool grouped = group_.members.insert(object).second;
    if (!grouped) group_.members.erase(object);
    emit(out, {now, EventKind::SubselectToggled, object, grouped,
               !scene_->object(object).is_target});
  }

  void emit(FrameOutput& out, InteractionEvent e) {
    out.events.push_back(e);
    log_.push_back(e);
  }

  const Scene* scene_;
  SessionParams params_;
  Technique technique_;
  PinchTracker dh_;
  PinchTracker ndh_;
  GazeStatus gaze_{};
  GroupState group_{};
  std::vector<InteractionEvent> log_;
  std::uint64_t ignored_toggles_ = 0;
};

}  // namespace gazepinch
