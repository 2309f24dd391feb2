#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gazepinch/errors.hpp"
#include "gazepinch/geometry.hpp"
#include "gazepinch/util.hpp"

namespace gazepinch {

struct SceneObject {
  int id = 0;
  Vec3 position{};
  double visual_radius = 0.2;
  double collider_radius = 0.6;
  bool is_target = false;
};

// Planar grid of selectable spheres facing the user. Objects occupy a random
// subset of grid slots; a random subset of those are targets.
struct SceneConfig {
  double distance = 13.5;   // meters from the user to the grid plane
  double spacing = 1.0;     // meters between adjacent slots
  int columns = 16;
  int rows = 7;
  int object_count = 40;
  double visual_radius = 0.2;
  double collider_scale = 3.0;  // collider radius = visual_radius * scale
  int target_count = 4;
  std::uint64_t seed = 1;

  void validate() const {
    if (distance <= 0.0 || spacing <= 0.0 || visual_radius <= 0.0 ||
        collider_scale <= 0.0) {
      throw ConfigError("scene dimensions must be positive");
    }
    if (columns < 1 || rows < 1) throw ConfigError("scene grid must be at least 1x1");
    if (object_count < 1 || object_count > columns * rows) {
      throw ConfigError("object_count must fit the grid");
    }
    if (target_count < 1 || target_count > object_count) {
      throw ConfigError("target_count must be between 1 and object_count");
    }
  }
};

struct Scene {
  SceneConfig config{};
  std::vector<SceneObject> objects;

  const SceneObject& object(int id) const { return objects.at(static_cast<std::size_t>(id)); }

  std::vector<int> target_ids() const {
    std::vector<int> out;
    for (const auto& o : objects) {
      if (o.is_target) out.push_back(o.id);
    }
    return out;
  }

  std::string digest() const {
    std::string blob;
    for (const auto& o : objects) {
      blob += std::to_string(o.id) + ':' + format_double(o.position.x) + ',' +
              format_double(o.position.y) + ',' + format_double(o.position.z) + ',' +
              format_double(o.visual_radius) + ',' + format_double(o.collider_radius) +
              ',' + (o.is_target ? '1' : '0') + ';';
    }
    return hex64(fnv1a64(blob));
  }
};

// Deterministic per seed: slot choice and target choice both come from one
// mt19937_64 stream. Ids are assigned in slot order (row-major), so id order
// matches spatial order and ties resolve predictably.
inline Scene generate_scene(const SceneConfig& cfg) {
  cfg.validate();
  const std::size_t slots = static_cast<std::size_t>(cfg.columns) *
                            static_cast<std::size_t>(cfg.rows);
  std::mt19937_64 rng(cfg.seed);

  auto chosen = sample_without_replacement(rng, slots, static_cast<std::size_t>(cfg.object_count));
  std::sort(chosen.begin(), chosen.end());

  Scene scene;
  scene.config = cfg;
  scene.objects.reserve(chosen.size());
  const double x0 = -(cfg.columns - 1) / 2.0 * cfg.spacing;
  const double y0 = -(cfg.rows - 1) / 2.0 * cfg.spacing;
  int next_id = 0;
  for (std::size_t slot : chosen) {
    const int col = static_cast<int>(slot % static_cast<std::size_t>(cfg.columns));
    const int row = static_cast<int>(slot / static_cast<std::size_t>(cfg.columns));
    SceneObject obj;
    obj.id = next_id++;
    obj.position = {x0 + col * cfg.spacing, y0 + row * cfg.spacing, cfg.distance};
    obj.visual_radius = cfg.visual_radius;
    obj.collider_radius = cfg.visual_radius * cfg.collider_scale;
    scene.objects.push_back(obj);
  }

  auto targets = sample_without_replacement(rng, static_cast<std::size_t>(cfg.object_count),
                                            static_cast<std::size_t>(cfg.target_count));
  for (std::size_t t : targets) scene.objects[t].is_target = true;
  return scene;
}

struct AngularExtent {
  double width_deg = 0.0;
  double height_deg = 0.0;
};

// Visual angle subtended by the grid of slot centers as seen from the origin.
inline AngularExtent angular_extent(const SceneConfig& cfg) {
  const double half_w = (cfg.columns - 1) * cfg.spacing / 2.0;
  const double half_h = (cfg.rows - 1) * cfg.spacing / 2.0;
  return {rad_to_deg(2.0 * std::atan(half_w / cfg.distance)),
          rad_to_deg(2.0 * std::atan(half_h / cfg.distance))};
}

}  // namespace gazepinch
