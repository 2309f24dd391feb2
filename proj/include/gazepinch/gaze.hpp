#pragma once

#include <optional>

#include "gazepinch/geometry.hpp"
#include "gazepinch/input.hpp"
#include "gazepinch/scene.hpp"

namespace gazepinch {

// Object the eye ray currently rests on. Colliders overlap (they are inflated
// well past the spacing), so the nearest hit along the ray wins; exact-tie
// hits resolve to the lowest object id.
inline std::optional<int> resolve_gaze(const GazeRay& ray, const Scene& scene) {
  std::optional<int> best;
  double best_t = 0.0;
  for (const auto& obj : scene.objects) {
    auto t = ray_sphere_hit(ray.origin, ray.direction, obj.position, obj.collider_radius);
    if (!t) continue;
    if (!best || *t < best_t) {
      best = obj.id;
      best_t = *t;
    }
  }
  return best;
}

// Continuous-fixation bookkeeping: which object is gazed and since when.
// gaze_enter_time resets whenever the gazed object changes (including to or
// from nothing), so (gazed_object, gaze_enter_time) identifies one episode.
struct GazeStatus {
  std::optional<int> gazed_object{};
  std::optional<double> gaze_enter_time{};
};

inline GazeStatus update_gaze_status(const GazeStatus& prev, std::optional<int> resolved,
                                     double now) {
  if (resolved == prev.gazed_object) return prev;
  GazeStatus next;
  next.gazed_object = resolved;
  if (resolved) next.gaze_enter_time = now;
  return next;
}

enum class Highlight { None, Gazed, Grouped };

// Outline color precedence: grouped (yellow) beats gazed (gray).
inline Highlight highlight_for(bool gazed, bool grouped) {
  if (grouped) return Highlight::Grouped;
  if (gazed) return Highlight::Gazed;
  return Highlight::None;
}

}  // namespace gazepinch
