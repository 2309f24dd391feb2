#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gazepinch/errors.hpp"
#include "gazepinch/events.hpp"
#include "gazepinch/input.hpp"
#include "gazepinch/scene.hpp"
#include "gazepinch/util.hpp"

namespace gazepinch {

// Per-trial outcomes. Ratios are percentages. A ratio whose denominator was
// zero is reported as 0 with its flag set rather than as NaN, so downstream
// aggregation never silently eats a degenerate trial.
struct TrialMetrics {
  double tct_s = 0.0;                  // TrialStarted to TrialEnded
  int subselections = 0;               // toggles that grouped an object
  int accidental_subselections = 0;    // of those, how many grouped a distractor
  double accidental_ratio_pct = 0.0;
  bool asr_zero_denominator = false;
  int missed_targets = 0;              // targets absent from the final group
  int grouped_distractors = 0;         // distractors present in the final group
  double error_rate_pct = 0.0;         // (missed + grouped distractors) / |final group|
  bool er_zero_denominator = false;
  double hand_movement_m = 0.0;        // dominant palm path length inside the trial
  double hand_rotation_deg = 0.0;      // dominant palm geodesic rotation path
  bool error_free = false;             // no misses and no grouped distractors
  bool valid = false;                  // grouped more than half of the targets
};

// Fold one complete trial log (plus its frame stream for kinematics) into
// metrics. The log must contain TrialStarted and TrialEnded.
inline TrialMetrics trial_metrics(const std::vector<InteractionEvent>& events,
                                  const std::vector<InputFrame>& frames,
                                  const Scene& scene) {
  std::optional<double> started, ended;
  std::set<int> members;
  TrialMetrics m;

  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::TrialStarted:
        started = e.time;
        break;
      case EventKind::TrialEnded:
        ended = e.time;
        break;
      case EventKind::SubselectToggled:
        if (e.now_grouped) {
          members.insert(e.object);
          ++m.subselections;
          if (e.is_distractor) ++m.accidental_subselections;
        } else {
          members.erase(e.object);
        }
        break;
      case EventKind::GroupCleared:
        members.clear();
        break;
      case EventKind::GroupFinalized:
        break;
    }
  }
  if (!started || !ended) {
    throw IncompleteTrial("trial log lacks TrialStarted/TrialEnded");
  }
  m.tct_s = *ended - *started;

  if (m.subselections == 0) {
    m.asr_zero_denominator = true;
  } else {
    m.accidental_ratio_pct =
        100.0 * m.accidental_subselections / static_cast<double>(m.subselections);
  }

  int grouped_targets = 0;
  for (int id : members) {
    if (scene.object(id).is_target) ++grouped_targets;
    else ++m.grouped_distractors;
  }
  int target_count = 0;
  for (const auto& o : scene.objects) {
    if (o.is_target) ++target_count;
  }
  m.missed_targets = target_count - grouped_targets;

  const int final_size = static_cast<int>(members.size());
  if (final_size == 0) {
    m.er_zero_denominator = true;
  } else {
    m.error_rate_pct = 100.0 * (m.missed_targets + m.grouped_distractors) /
                       static_cast<double>(final_size);
  }

  m.error_free = m.missed_targets == 0 && m.grouped_distractors == 0;
  m.valid = grouped_targets > 0.5 * target_count;

  // Kinematics over dominant-hand frames whose pair lies inside the trial.
  for (std::size_t i = 1; i < frames.size(); ++i) {
    const InputFrame& a = frames[i - 1];
    const InputFrame& b = frames[i];
    if (a.timestamp < *started || b.timestamp > *ended) continue;
    if (!a.dominant.tracked || !b.dominant.tracked) continue;
    m.hand_movement_m += distance(a.dominant.palm_center, b.dominant.palm_center);
    m.hand_rotation_deg +=
        angular_delta(a.dominant.palm_orientation, b.dominant.palm_orientation);
  }
  return m;
}

// Technique-by-target-count aggregate. Invalid trials are excluded from the
// time mean and from the success denominator, mirroring how the block-level
// analysis filters mostly-failed trials.
struct BlockMetrics {
  int trials = 0;
  int valid_trials = 0;
  int error_free_valid_trials = 0;
  double mean_tct_s = 0.0;
  double success_rate = 0.0;  // error-free fraction of valid trials
  std::optional<double> inverse_efficiency_s;  // mean_tct / success_rate
};

inline BlockMetrics block_metrics(const std::vector<TrialMetrics>& trials) {
  BlockMetrics b;
  b.trials = static_cast<int>(trials.size());
  double tct_sum = 0.0;
  for (const auto& t : trials) {
    if (!t.valid) continue;
    ++b.valid_trials;
    tct_sum += t.tct_s;
    if (t.error_free) ++b.error_free_valid_trials;
  }
  if (b.valid_trials == 0) throw EmptyBlock("no valid trials in block");
  b.mean_tct_s = tct_sum / b.valid_trials;
  b.success_rate = b.error_free_valid_trials / static_cast<double>(b.valid_trials);
  if (b.success_rate > 0.0) {
    b.inverse_efficiency_s = b.mean_tct_s / b.success_rate;
  }
  return b;
}

// CSV schemas. The leading comment line carries the schema tag and the digest
// of the configuration that produced the file.

inline const char* kTrialCsvSchema = "trials-v1";
inline const char* kTrialCsvHeader =
    "technique,targets,trial,seed,tct_s,subselections,accidental_subselections,"
    "accidental_ratio_pct,missed_targets,grouped_distractors,error_rate_pct,"
    "hand_movement_m,hand_rotation_deg,error_free,valid,asr_zero_denominator,"
    "er_zero_denominator";

inline std::string trial_csv_row(const std::string& technique, int targets, int trial,
                                 std::uint64_t seed, const TrialMetrics& m) {
  std::string row = technique;
  row += ',' + std::to_string(targets);
  row += ',' + std::to_string(trial);
  row += ',' + std::to_string(seed);
  row += ',' + format_double(m.tct_s);
  row += ',' + std::to_string(m.subselections);
  row += ',' + std::to_string(m.accidental_subselections);
  row += ',' + format_double(m.accidental_ratio_pct);
  row += ',' + std::to_string(m.missed_targets);
  row += ',' + std::to_string(m.grouped_distractors);
  row += ',' + format_double(m.error_rate_pct);
  row += ',' + format_double(m.hand_movement_m);
  row += ',' + format_double(m.hand_rotation_deg);
  row += std::string(",") + (m.error_free ? "1" : "0");
  row += std::string(",") + (m.valid ? "1" : "0");
  row += std::string(",") + (m.asr_zero_denominator ? "1" : "0");
  row += std::string(",") + (m.er_zero_denominator ? "1" : "0");
  return row;
}

inline const char* kBlockCsvSchema = "blocks-v1";
inline const char* kBlockCsvHeader =
    "technique,targets,trials,valid_trials,error_free_valid_trials,mean_tct_s,"
    "success_rate,inverse_efficiency_s";

inline std::string block_csv_row(const std::string& technique, int targets,
                                 const BlockMetrics& b) {
  std::string row = technique;
  row += ',' + std::to_string(targets);
  row += ',' + std::to_string(b.trials);
  row += ',' + std::to_string(b.valid_trials);
  row += ',' + std::to_string(b.error_free_valid_trials);
  row += ',' + format_double(b.mean_tct_s);
  row += ',' + format_double(b.success_rate);
  row += ',';
  if (b.inverse_efficiency_s) row += format_double(*b.inverse_efficiency_s);
  return row;
}

}  // namespace gazepinch
