#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gazepinch/config.hpp"
#include "gazepinch/errors.hpp"
#include "gazepinch/input.hpp"

namespace gazepinch {

// JSONL trace, schema v1. Line 1 is a header object carrying the schema tag,
// the full engine config, and the config and scene digests; every following
// line is one input frame. Floats are written in shortest round-trip form, so
// a read-then-rewrite reproduces the file byte for byte and parsed fields are
// bit-identical to what was recorded.
inline const char* kTraceSchema = "v1";

struct TraceData {
  EngineConfig config{};
  std::string config_digest;
  std::string scene_digest;
  std::vector<InputFrame> frames;
};

namespace detail {

inline nlohmann::json hand_to_json(const HandPose& h) {
  return {{"thumb", {h.thumb_tip.x, h.thumb_tip.y, h.thumb_tip.z}},
          {"index", {h.index_tip.x, h.index_tip.y, h.index_tip.z}},
          {"palm", {h.palm_center.x, h.palm_center.y, h.palm_center.z}},
          {"quat", {h.palm_orientation.w, h.palm_orientation.x, h.palm_orientation.y,
                    h.palm_orientation.z}},
          {"tracked", h.tracked}};
}

inline Vec3 vec3_from_json(const nlohmann::json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

inline HandPose hand_from_json(const nlohmann::json& j) {
  HandPose h;
  h.thumb_tip = vec3_from_json(j.at("thumb"));
  h.index_tip = vec3_from_json(j.at("index"));
  h.palm_center = vec3_from_json(j.at("palm"));
  const auto& q = j.at("quat");
  h.palm_orientation = {q.at(0).get<double>(), q.at(1).get<double>(),
                        q.at(2).get<double>(), q.at(3).get<double>()};
  h.tracked = j.at("tracked").get<bool>();
  return h;
}

}  // namespace detail

inline nlohmann::json frame_to_json(const InputFrame& f) {
  nlohmann::json j;
  j["ts"] = f.timestamp;
  j["gaze"] = {{"ox", f.gaze.origin.x}, {"oy", f.gaze.origin.y},
               {"oz", f.gaze.origin.z}, {"dx", f.gaze.direction.x},
               {"dy", f.gaze.direction.y}, {"dz", f.gaze.direction.z}};
  j["dh"] = detail::hand_to_json(f.dominant);
  j["ndh"] = detail::hand_to_json(f.non_dominant);
  return j;
}

inline InputFrame frame_from_json(const nlohmann::json& j) {
  InputFrame f;
  f.timestamp = j.at("ts").get<double>();
  const auto& g = j.at("gaze");
  f.gaze.origin = {g.at("ox").get<double>(), g.at("oy").get<double>(),
                   g.at("oz").get<double>()};
  f.gaze.direction = {g.at("dx").get<double>(), g.at("dy").get<double>(),
                      g.at("dz").get<double>()};
  f.dominant = detail::hand_from_json(j.at("dh"));
  f.non_dominant = detail::hand_from_json(j.at("ndh"));
  return f;
}

inline void write_trace(std::ostream& os, const EngineConfig& config,
                        const std::string& scene_digest,
                        const std::vector<InputFrame>& frames) {
  nlohmann::json header;
  header["schema"] = kTraceSchema;
  header["config"] = to_json(config);
  header["config_digest"] = config_digest(config);
  header["scene_digest"] = scene_digest;
  os << header.dump() << '\n';
  for (const auto& f : frames) os << frame_to_json(f).dump() << '\n';
}

inline void write_trace_file(const std::string& path, const EngineConfig& config,
                             const std::string& scene_digest,
                             const std::vector<InputFrame>& frames) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write trace file '" + path + "'");
  write_trace(os, config, scene_digest, frames);
  if (!os) throw IoError("write failed for trace file '" + path + "'");
}

inline TraceData read_trace(std::istream& is) {
  TraceData td;
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(is, line)) throw ParseError("trace line 1: missing header");
  ++line_no;
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
    const std::string schema = header.at("schema").get<std::string>();
    if (schema != kTraceSchema) {
      throw VersionError("unsupported trace schema '" + schema + "'");
    }
    td.config = config_from_json(header.at("config"));
    td.config_digest = header.at("config_digest").get<std::string>();
    td.scene_digest = header.at("scene_digest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("trace line 1: " + std::string(e.what()));
  }

  double prev_ts = -std::numeric_limits<double>::infinity();
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    InputFrame f;
    try {
      f = frame_from_json(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!(f.timestamp > prev_ts)) {
      throw ClockError("trace line " + std::to_string(line_no) +
                       ": timestamp not increasing (" + format_double(f.timestamp) +
                       " after " + format_double(prev_ts) + ")");
    }
    prev_ts = f.timestamp;
    const double n = norm(f.gaze.direction);
    if (std::fabs(n - 1.0) > 1e-6) {
      throw ParseError("trace line " + std::to_string(line_no) +
                       ": gaze direction is not unit length");
    }
    td.frames.push_back(f);
  }
  return td;
}

inline TraceData read_trace_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open trace file '" + path + "'");
  return read_trace(is);
}

// Integrity: the stored digests must match what the stored config produces.
inline void verify_trace_integrity(const TraceData& td) {
  const std::string cd = config_digest(td.config);
  if (cd != td.config_digest) {
    throw DigestMismatch("config digest mismatch: header says " + td.config_digest +
                         ", config hashes to " + cd);
  }
  const std::string sd = generate_scene(td.config.scene).digest();
  if (sd != td.scene_digest) {
    throw DigestMismatch("scene digest mismatch: header says " + td.scene_digest +
                         ", scene config regenerates to " + sd);
  }
}

}  // namespace gazepinch
