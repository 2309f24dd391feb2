#pragma once

#include <string>
#include <vector>

#include "gazepinch/errors.hpp"
#include "gazepinch/util.hpp"

namespace gazepinch {

enum class EventKind {
  TrialStarted,      // targets appeared; selection is live
  SubselectToggled,  // one object flipped in or out of the group
  GroupCleared,      // group emptied by a full release
  GroupFinalized,    // group committed
  TrialEnded
};

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::TrialStarted: return "trial_started";
    case EventKind::SubselectToggled: return "subselect_toggled";
    case EventKind::GroupCleared: return "group_cleared";
    case EventKind::GroupFinalized: return "group_finalized";
    case EventKind::TrialEnded: return "trial_ended";
  }
  return "?";
}

inline EventKind event_kind_from_string(const std::string& s) {
  if (s == "trial_started") return EventKind::TrialStarted;
  if (s == "subselect_toggled") return EventKind::SubselectToggled;
  if (s == "group_cleared") return EventKind::GroupCleared;
  if (s == "group_finalized") return EventKind::GroupFinalized;
  if (s == "trial_ended") return EventKind::TrialEnded;
  throw ParseError("unknown event kind '" + s + "'");
}

// One row of a trial's event log. The object fields are only meaningful for
// SubselectToggled: `now_grouped` is membership after the flip and
// `is_distractor` says the object was not a designated target.
struct InteractionEvent {
  double time = 0.0;
  EventKind kind = EventKind::TrialStarted;
  int object = -1;
  bool now_grouped = false;
  bool is_distractor = false;

  friend bool operator==(const InteractionEvent&, const InteractionEvent&) = default;
};

inline const char* kEventCsvHeader = "time_s,event,object,now_grouped,is_distractor";

inline std::string to_csv_row(const InteractionEvent& e) {
  std::string row = format_double(e.time);
  row += ',';
  row += to_string(e.kind);
  if (e.kind == EventKind::SubselectToggled) {
    row += ',' + std::to_string(e.object) + ',' + (e.now_grouped ? "1" : "0") + ',' +
           (e.is_distractor ? "1" : "0");
  } else {
    row += ",,,";
  }
  return row;
}

inline std::string to_jsonl_row(const InteractionEvent& e) {
  std::string row = "{\"t\":" + format_double(e.time) + ",\"event\":\"" +
                    to_string(e.kind) + "\"";
  if (e.kind == EventKind::SubselectToggled) {
    row += ",\"object\":" + std::to_string(e.object) +
           ",\"now_grouped\":" + (e.now_grouped ? "true" : "false") +
           ",\"is_distractor\":" + (e.is_distractor ? "true" : "false");
  }
  return row + "}";
}

}  // namespace gazepinch
