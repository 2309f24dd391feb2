#pragma once

#include <optional>

#include "gazepinch/geometry.hpp"

namespace gazepinch {

// Tracked hand sample. Geometric fields are meaningless while tracked=false;
// consumers hold their previous derived state across untracked stretches.
struct HandPose {
  Vec3 thumb_tip{};
  Vec3 index_tip{};
  Vec3 palm_center{};
  Orientation palm_orientation{};
  bool tracked = true;
};

struct GazeRay {
  Vec3 origin{};
  Vec3 direction{0.0, 0.0, 1.0};  // unit length
};

// One headset sample: eye ray plus both hands, timestamped in seconds.
// Streams of these must carry strictly increasing timestamps.
struct InputFrame {
  double timestamp = 0.0;
  GazeRay gaze{};
  HandPose dominant{};
  HandPose non_dominant{};
};

// Thumb-to-index fingertip separation in meters; nullopt while untracked.
inline std::optional<double> pinch_distance(const HandPose& hand) {
  if (!hand.tracked) return std::nullopt;
  return distance(hand.thumb_tip, hand.index_tip);
}

}  // namespace gazepinch
