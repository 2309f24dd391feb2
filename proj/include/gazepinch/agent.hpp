#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "gazepinch/errors.hpp"
#include "gazepinch/session.hpp"
#include "gazepinch/util.hpp"

namespace gazepinch {

// Synthetic-participant knobs. Zero noise (jitter and premature both 0) makes
// the agent an exact oracle: it groups precisely the targets and nothing else.
struct AgentParams {
  double frame_rate = 90.0;            // Hz of the synthesized frame stream
  double gaze_rate = 30.0;             // Hz at which the gaze ray re-samples
  double reaction_time = 0.15;         // s pause before acting on a stimulus
  double gaze_jitter_sigma_deg = 0.0;  // angular noise per gaze re-sample
  double hand_speed = 0.5;             // m/s palm travel during swipes
  double roll_speed = 120.0;           // deg/s hand roll during tilts
  double premature_trigger_prob = 0.0; // chance a pinch click fires one gaze
                                       // sample before the gaze lands
  std::uint64_t seed = 1;

  void validate() const {
    if (frame_rate <= 0.0 || gaze_rate <= 0.0) throw ConfigError("rates must be positive");
    const double ratio = frame_rate / gaze_rate;
    if (std::fabs(ratio - std::round(ratio)) > 1e-9 || ratio < 1.0) {
      throw ConfigError("frame_rate must be an integer multiple of gaze_rate");
    }
    if (reaction_time < 0.0 || gaze_jitter_sigma_deg < 0.0) {
      throw ConfigError("reaction_time and gaze jitter must be non-negative");
    }
    if (hand_speed <= 0.0 || roll_speed <= 0.0) throw ConfigError("speeds must be positive");
    if (premature_trigger_prob < 0.0 || premature_trigger_prob > 1.0) {
      throw ConfigError("premature_trigger_prob must lie in [0, 1]");
    }
  }
};

// What the agent meant to select each time it pulled a trigger.
struct IntentRecord {
  double time = 0.0;
  int object = -1;
  bool premature = false;
};

struct AgentRun {
  std::vector<InputFrame> frames;
  std::vector<IntentRecord> intents;
  std::vector<InteractionEvent> events;  // from the live session the agent drove
};

namespace detail {

// Closed-loop synthesizer for one trial. Emits frames at frame_rate, feeds
// each through a live Session, and scripts its next move off the session's
// replies. Replaying the emitted frames through a fresh session therefore
// reproduces the event log exactly.
//
// Pinch clicks are scheduled around gaze-sample boundaries: a clean click
// lands one gaze sample after the gaze reaches the object, and a premature
// one lands one gaze sample before, on whatever was gazed previously, which
// reproduces the early-trigger failure pattern of quick pinch confirms.
// Premature draws therefore apply to the two pinch-click techniques only;
// dwell is timed by the engine and swipe/tilt confirms cannot complete before
// their motion does.
class TrialSynthesizer {
 public:
  TrialSynthesizer(const Scene& scene, TechniqueId technique,
                   const SessionParams& sp, const AgentParams& ap)
      : scene_(&scene),
        technique_(technique),
        sp_(sp),
        ap_(ap),
        session_(scene, technique, sp),
        rng_(ap.seed),
        stride_(static_cast<std::size_t>(std::llround(ap.frame_rate / ap.gaze_rate))) {
    ap_.validate();
    if (scene.target_ids().empty()) throw ConfigError("scene has no targets");
    // Rest gaze low, outside every collider, so long pauses never dwell.
    safe_point_ = {0.0, grid_bottom_y() - 5.0, scene.config.distance};
    aim_point_ = safe_point_;
    current_ray_ = make_ray(aim_point_);
  }

  AgentRun run() {
    start_trial();
    prepare_mode();
    for (int target : visit_order()) {
      wait_seconds(ap_.reaction_time);
      if (click_based()) search_fixation(target);
      select(target);
      if (done()) break;  // safety: never expected mid-plan
    }
    for (int round = 0; round < 5 && !done(); ++round) {
      auto [extra, missing] = group_mismatch();
      if (extra.empty() && missing.empty()) break;
      for (int id : extra) careful_fix(id);
      for (int id : missing) careful_fix(id);
    }
    finalize();
    return std::move(run_);
  }

 private:
  static constexpr double kFullDist = 0.01;   // well inside the full-pinch band
  static constexpr double kSemiDist = 0.045;  // middle of the semi band
  static constexpr double kOpenDist = 0.12;   // past the release threshold

  bool click_based() const {
    return technique_ == TechniqueId::FullDH || technique_ == TechniqueId::SemiNDH;
  }
  bool done() const { return session_.group().phase == Phase::Finalized; }

  double grid_bottom_y() const {
    double y = 0.0;
    for (const auto& o : scene_->objects) y = std::min(y, o.position.y);
    return y;
  }

  GazeRay make_ray(Vec3 aim) {
    Vec3 dir = normalized(aim);  // eye sits at the origin
    if (ap_.gaze_jitter_sigma_deg > 0.0) {
      const double sigma = deg_to_rad(ap_.gaze_jitter_sigma_deg);
      Vec3 up = std::fabs(dir.y) < 0.99 ? Vec3{0.0, 1.0, 0.0} : Vec3{1.0, 0.0, 0.0};
      Vec3 u = normalized(cross(up, dir));
      Vec3 v = cross(dir, u);
      dir = normalized(dir + sigma * normal01(rng_) * u + sigma * normal01(rng_) * v);
    }
    return {Vec3{}, dir};
  }

  HandPose hand_pose(Vec3 palm, double dist, double rightward_roll_deg) const {
    HandPose h;
    h.palm_center = palm;
    if (rightward_roll_deg != 0.0) {
      const double sign = sp_.technique.left_handed ? 1.0 : -1.0;
      h.palm_orientation = from_axis_angle({0.0, 0.0, 1.0}, sign * rightward_roll_deg);
    }
    h.index_tip = palm + Vec3{0.02, 0.03, 0.08};
    h.thumb_tip = h.index_tip - Vec3{0.0, dist, 0.0};
    h.tracked = true;
    return h;
  }

  void emit() {
    InputFrame f;
    f.timestamp = static_cast<double>(frame_index_) / ap_.frame_rate;
    if (frame_index_ % stride_ == 0) current_ray_ = make_ray(aim_point_);
    f.gaze = current_ray_;
    f.dominant = hand_pose(dh_palm_, dh_dist_, dh_roll_);
    f.non_dominant = hand_pose(ndh_palm_, ndh_dist_, 0.0);
    FrameOutput out = session_.step(f);
    run_.frames.push_back(f);
    run_.events.insert(run_.events.end(), out.events.begin(), out.events.end());
    ++frame_index_;
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) emit();
  }
  void advance_to(std::size_t frame) {
    while (frame_index_ < frame) emit();
  }
  std::size_t frames_for(double seconds) const {
    return static_cast<std::size_t>(std::ceil(seconds * ap_.frame_rate));
  }
  void wait_seconds(double s) { advance(frames_for(s)); }
  std::size_t next_boundary_at_or_after(std::size_t i) const {
    return (i + stride_ - 1) / stride_ * stride_;
  }

  // True when an event of `kind` arrived after the given log mark.
  bool event_since(std::size_t mark, EventKind kind) const {
    for (std::size_t i = mark; i < run_.events.size(); ++i) {
      if (run_.events[i].kind == kind) return true;
    }
    return false;
  }

  bool wait_for_event(EventKind kind, std::size_t max_frames) {
    const std::size_t mark = run_.events.size();
    for (std::size_t i = 0; i < max_frames; ++i) {
      if (event_since(mark, kind)) return true;
      emit();
    }
    return event_since(mark, kind);
  }

  void intent(int object, bool premature) {
    run_.intents.push_back({static_cast<double>(frame_index_) / ap_.frame_rate,
                            object, premature});
  }

  void start_trial() {
    dh_dist_ = kSemiDist;
    ndh_dist_ = kOpenDist;
    advance(3);            // pass through semi so the release edge exists
    dh_dist_ = kOpenDist;  // full release: trial begins
    wait_for_event(EventKind::TrialStarted, 10);
    wait_seconds(ap_.reaction_time);
  }

  void prepare_mode() {
    switch (technique_) {
      case TechniqueId::FullDH:
        ndh_dist_ = kSemiDist;
        advance(2);
        ndh_dist_ = kFullDist;  // mode pinch on
        advance(2);
        dh_dist_ = kSemiDist;   // park the clicking hand next to the threshold
        advance(2);
        break;
      case TechniqueId::SemiNDH:
        dh_dist_ = kSemiDist;   // quasi-mode on
        advance(2);
        ndh_dist_ = kSemiDist;  // park the clicking hand
        advance(2);
        break;
      default:
        dh_dist_ = kSemiDist;   // quasi-mode on
        advance(2);
        break;
    }
  }

  // Nearest-neighbor tour over targets, starting from the grid center.
  std::vector<int> visit_order() const {
    std::vector<int> remaining = scene_->target_ids();
    std::vector<int> order;
    Vec3 at{0.0, 0.0, scene_->config.distance};
    while (!remaining.empty()) {
      std::size_t best = 0;
      double best_d = distance(at, scene_->object(remaining[0]).position);
      for (std::size_t i = 1; i < remaining.size(); ++i) {
        const double d = distance(at, scene_->object(remaining[i]).position);
        if (d < best_d) {
          best = i;
          best_d = d;
        }
      }
      order.push_back(remaining[best]);
      at = scene_->object(remaining[best]).position;
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return order;
  }

  // Brief stop on the distractor nearest the upcoming target, modeling the
  // visual-search fixation that precedes a selection.
  void search_fixation(int target) {
    const SceneObject& t = scene_->object(target);
    const SceneObject* nearest = nullptr;
    double best = 0.0;
    for (const auto& o : scene_->objects) {
      if (o.is_target) continue;
      const double d = distance(o.position, t.position);
      if (!nearest || d < best) {
        nearest = &o;
        best = d;
      }
    }
    if (!nearest) return;
    look_at(nearest->position);
    advance(stride_);  // hold one gaze sample
  }

  // Move the gaze so it lands at the next boundary; returns that frame index,
  // with the landing frame already emitted.
  std::size_t look_at(Vec3 point) {
    const std::size_t b = next_boundary_at_or_after(frame_index_);
    advance_to(b);
    aim_point_ = point;
    emit();
    return b;
  }

  void select(int target) {
    switch (technique_) {
      case TechniqueId::FullDH: click_select(target, dh_dist_); break;
      case TechniqueId::SemiNDH: click_select(target, ndh_dist_); break;
      case TechniqueId::SemiDwell: dwell_select(target); break;
      case TechniqueId::SemiSwipe: swipe_select(target); break;
      case TechniqueId::SemiTilt: tilt_select(target); break;
    }
  }

  void click(double& dist) {
    dist = kFullDist;
    emit();
    emit();
    dist = kSemiDist;
    emit();
  }

  void click_select(int target, double& dist) {
    const bool early = uniform01(rng_) < ap_.premature_trigger_prob;
    const Vec3 pos = scene_->object(target).position;
    if (early) {
      // Click one gaze sample before the gaze reaches the target.
      std::size_t b = next_boundary_at_or_after(frame_index_ + stride_ + 1);
      advance_to(b - stride_);
      intent(target, true);
      click(dist);
      advance_to(b);
      aim_point_ = pos;
      emit();
      advance(2);
    } else {
      look_at(pos);
      advance(stride_);  // let the gaze settle one sample
      intent(target, false);
      click(dist);
    }
  }

  void dwell_select(int target) {
    const std::size_t mark = run_.events.size();
    look_at(scene_->object(target).position);
    intent(target, false);
    const std::size_t cap = frames_for(sp_.technique.dwell_time) + 90;
    for (std::size_t i = 0; i < cap; ++i) {
      if (event_since(mark, EventKind::SubselectToggled)) return;
      emit();
    }
  }

  void swipe_select(int target) {
    look_at(scene_->object(target).position);
    wait_seconds(ap_.reaction_time);
    intent(target, false);
    const std::size_t mark = run_.events.size();
    const double step = ap_.hand_speed / ap_.frame_rate;
    const double dir = sp_.technique.left_handed ? 1.0 : -1.0;
    const std::size_t cap =
        2 * frames_for(sp_.technique.swipe_distance / ap_.hand_speed) + 30;
    for (std::size_t i = 0; i < cap; ++i) {
      if (event_since(mark, EventKind::SubselectToggled)) return;
      dh_palm_.x += dir * step;
      emit();
    }
  }

  void tilt_select(int target) {
    look_at(scene_->object(target).position);
    wait_seconds(ap_.reaction_time);
    intent(target, false);
    const std::size_t mark = run_.events.size();
    const double step = ap_.roll_speed / ap_.frame_rate;
    const std::size_t cap =
        2 * frames_for(sp_.technique.tilt_angle / ap_.roll_speed) + 30;
    for (std::size_t i = 0; i < cap; ++i) {
      if (event_since(mark, EventKind::SubselectToggled)) break;
      dh_roll_ += step;
      emit();
    }
    while (dh_roll_ > 0.0) {  // roll back to neutral before moving on
      dh_roll_ = std::max(0.0, dh_roll_ - step);
      emit();
    }
  }

  std::pair<std::vector<int>, std::vector<int>> group_mismatch() const {
    std::vector<int> extra, missing;
    const auto& members = session_.group().members;
    for (int id : members) {
      if (!scene_->object(id).is_target) extra.push_back(id);
    }
    for (int id : scene_->target_ids()) {
      if (!members.count(id)) missing.push_back(id);
    }
    return {extra, missing};
  }

  // Deliberate re-selection: look away first for a fresh gaze episode, settle
  // two gaze samples, then confirm. Stable even when the confirm draw comes
  // out premature, since the previous gaze sample is already on the object.
  void careful_fix(int object) {
    look_at(safe_point_);
    advance(stride_);
    const std::size_t mark = run_.events.size();
    look_at(scene_->object(object).position);
    advance(2 * stride_);
    intent(object, false);
    switch (technique_) {
      case TechniqueId::FullDH: click(dh_dist_); break;
      case TechniqueId::SemiNDH: click(ndh_dist_); break;
      case TechniqueId::SemiDwell: break;  // dwell timer completes on its own
      case TechniqueId::SemiSwipe: {
        const double step = ap_.hand_speed / ap_.frame_rate;
        const double dir = sp_.technique.left_handed ? 1.0 : -1.0;
        const std::size_t cap =
            2 * frames_for(sp_.technique.swipe_distance / ap_.hand_speed) + 30;
        for (std::size_t i = 0; i < cap; ++i) {
          if (event_since(mark, EventKind::SubselectToggled)) return;
          dh_palm_.x += dir * step;
          emit();
        }
        return;
      }
      case TechniqueId::SemiTilt: {
        const double step = ap_.roll_speed / ap_.frame_rate;
        const std::size_t cap =
            2 * frames_for(sp_.technique.tilt_angle / ap_.roll_speed) + 30;
        for (std::size_t i = 0; i < cap; ++i) {
          if (event_since(mark, EventKind::SubselectToggled)) break;
          dh_roll_ += step;
          emit();
        }
        while (dh_roll_ > 0.0) {
          dh_roll_ = std::max(0.0, dh_roll_ - step);
          emit();
        }
        return;
      }
    }
    const std::size_t cap = frames_for(sp_.technique.dwell_time) + 90;
    for (std::size_t i = 0; i < cap; ++i) {
      if (event_since(mark, EventKind::SubselectToggled)) return;
      emit();
    }
  }

  void finalize() {
    if (done()) return;
    if (technique_ == TechniqueId::FullDH) {
      ndh_dist_ = kSemiDist;  // drop the mode pinch so the hold can commit
      advance(2);
    }
    if (dh_dist_ == kOpenDist) {  // re-enter through semi if fully open
      dh_dist_ = kSemiDist;
      advance(2);
    }
    dh_dist_ = kFullDist;
    wait_for_event(EventKind::TrialEnded, frames_for(sp_.finalize_hold) + 30);
  }

  const Scene* scene_;
  TechniqueId technique_;
  SessionParams sp_;
  AgentParams ap_;
  Session session_;
  std::mt19937_64 rng_;
  std::size_t stride_;

  AgentRun run_;
  std::size_t frame_index_ = 0;
  Vec3 safe_point_{};
  Vec3 aim_point_{};
  GazeRay current_ray_{};
  Vec3 dh_palm_{0.25, -0.25, 0.45};
  Vec3 ndh_palm_{-0.25, -0.25, 0.45};
  double dh_dist_ = kOpenDist;
  double ndh_dist_ = kOpenDist;
  double dh_roll_ = 0.0;
};

}  // namespace detail

// Synthesize one full trial of input and run it through a live session.
inline AgentRun run_trial(const Scene& scene, TechniqueId technique,
                          const SessionParams& session_params,
                          const AgentParams& agent_params) {
  detail::TrialSynthesizer synth(scene, technique, session_params, agent_params);
  return synth.run();
}

}  // namespace gazepinch
