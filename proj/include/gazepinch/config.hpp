#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "gazepinch/agent.hpp"
#include "gazepinch/errors.hpp"
#include "gazepinch/pinch.hpp"
#include "gazepinch/scene.hpp"
#include "gazepinch/session.hpp"
#include "gazepinch/technique.hpp"
#include "gazepinch/util.hpp"

namespace gazepinch {

// Complete semantic description of a run: everything that determines the
// produced frames, events and metrics, and nothing that does not (output
// locations are deliberately not part of this, so artifacts and digests are
// identical wherever they are written).
struct EngineConfig {
  TechniqueId technique = TechniqueId::FullDH;
  PinchThresholds pinch{};
  TechniqueParams technique_params{};
  double finalize_hold = 0.25;
  SceneConfig scene{};
  AgentParams agent{};
  std::uint64_t seed = 1;  // master seed the per-trial seeds derive from

  void validate() const {
    pinch.validate();
    technique_params.validate();
    scene.validate();
    agent.validate();
    if (finalize_hold <= 0.0) throw ConfigError("finalize_hold must be positive");
  }

  SessionParams session_params() const {
    return {pinch, technique_params, finalize_hold};
  }
};

inline nlohmann::json to_json(const EngineConfig& c) {
  nlohmann::json j;
  j["technique"] = to_string(c.technique);
  j["seed"] = c.seed;
  j["finalize_hold"] = c.finalize_hold;
  j["pinch"] = {{"full_enter", c.pinch.full_enter},
                {"semi_lower", c.pinch.semi_lower},
                {"semi_upper", c.pinch.semi_upper},
                {"release_enter", c.pinch.release_enter}};
  j["params"] = {{"dwell_time", c.technique_params.dwell_time},
                 {"swipe_distance", c.technique_params.swipe_distance},
                 {"tilt_angle", c.technique_params.tilt_angle},
                 {"tilt_gain", c.technique_params.tilt_gain},
                 {"left_handed", c.technique_params.left_handed}};
  j["scene"] = {{"distance", c.scene.distance},
                {"spacing", c.scene.spacing},
                {"columns", c.scene.columns},
                {"rows", c.scene.rows},
                {"object_count", c.scene.object_count},
                {"visual_radius", c.scene.visual_radius},
                {"collider_scale", c.scene.collider_scale},
                {"target_count", c.scene.target_count},
                {"seed", c.scene.seed}};
  j["agent"] = {{"frame_rate", c.agent.frame_rate},
                {"gaze_rate", c.agent.gaze_rate},
                {"reaction_time", c.agent.reaction_time},
                {"gaze_jitter_sigma_deg", c.agent.gaze_jitter_sigma_deg},
                {"hand_speed", c.agent.hand_speed},
                {"roll_speed", c.agent.roll_speed},
                {"premature_trigger_prob", c.agent.premature_trigger_prob},
                {"seed", c.agent.seed}};
  return j;
}

inline EngineConfig config_from_json(const nlohmann::json& j) {
  try {
    EngineConfig c;
    c.technique = technique_from_string(j.at("technique").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    c.finalize_hold = j.at("finalize_hold").get<double>();
    const auto& p = j.at("pinch");
    c.pinch = {p.at("full_enter").get<double>(), p.at("semi_lower").get<double>(),
               p.at("semi_upper").get<double>(), p.at("release_enter").get<double>()};
    const auto& t = j.at("params");
    c.technique_params = {t.at("dwell_time").get<double>(),
                          t.at("swipe_distance").get<double>(),
                          t.at("tilt_angle").get<double>(),
                          t.at("tilt_gain").get<double>(),
                          t.at("left_handed").get<bool>()};
    const auto& s = j.at("scene");
    c.scene = {s.at("distance").get<double>(),
               s.at("spacing").get<double>(),
               s.at("columns").get<int>(),
               s.at("rows").get<int>(),
               s.at("object_count").get<int>(),
               s.at("visual_radius").get<double>(),
               s.at("collider_scale").get<double>(),
               s.at("target_count").get<int>(),
               s.at("seed").get<std::uint64_t>()};
    const auto& a = j.at("agent");
    c.agent = {a.at("frame_rate").get<double>(),
               a.at("gaze_rate").get<double>(),
               a.at("reaction_time").get<double>(),
               a.at("gaze_jitter_sigma_deg").get<double>(),
               a.at("hand_speed").get<double>(),
               a.at("roll_speed").get<double>(),
               a.at("premature_trigger_prob").get<double>(),
               a.at("seed").get<std::uint64_t>()};
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad engine config: ") + e.what());
  }
}

// Canonical digest: FNV-1a over the sorted-key JSON dump.
inline std::string config_digest(const EngineConfig& c) {
  return hex64(fnv1a64(to_json(c).dump()));
}

}  // namespace gazepinch
