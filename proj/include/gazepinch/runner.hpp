#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gazepinch/agent.hpp"
#include "gazepinch/config.hpp"
#include "gazepinch/errors.hpp"
#include "gazepinch/metrics.hpp"
#include "gazepinch/trace.hpp"

namespace gazepinch {

// Per-trial seeds derive from the master seed, the technique, the target
// count and the trial index, so any single trial can be reproduced without
// running the ones before it and the sweep order never matters.
inline std::uint64_t derive_seed(std::uint64_t master, const char* role,
                                 TechniqueId technique, int targets, int trial) {
  std::string s = std::to_string(master);
  s += '|';
  s += role;
  s += '|';
  s += to_string(technique);
  s += '|' + std::to_string(targets) + '|' + std::to_string(trial);
  return fnv1a64(s);
}

// Fully resolved configuration for one trial of a sweep.
inline EngineConfig trial_config(const EngineConfig& base, TechniqueId technique,
                                 int targets, int trial) {
  EngineConfig c = base;
  c.technique = technique;
  c.scene.target_count = targets;
  c.scene.seed = derive_seed(base.seed, "scene", technique, targets, trial);
  c.agent.seed = derive_seed(base.seed, "agent", technique, targets, trial);
  return c;
}

struct TrialRecord {
  TechniqueId technique = TechniqueId::FullDH;
  int targets = 0;
  int trial = 0;
  EngineConfig config{};
  AgentRun run{};
  TrialMetrics metrics{};
};

inline TrialRecord run_one_trial(const EngineConfig& base, TechniqueId technique,
                                 int targets, int trial) {
  TrialRecord r;
  r.technique = technique;
  r.targets = targets;
  r.trial = trial;
  r.config = trial_config(base, technique, targets, trial);
  r.config.validate();
  const Scene scene = generate_scene(r.config.scene);
  r.run = run_trial(scene, technique, r.config.session_params(), r.config.agent);
  r.metrics = trial_metrics(r.run.events, r.run.frames, scene);
  return r;
}

struct RunOptions {
  EngineConfig base{};
  std::vector<TechniqueId> techniques{TechniqueId::FullDH};
  std::vector<int> target_counts{2, 4, 6};
  int trials = 15;
  std::string out_dir = "out";
  std::string trace_dir;  // empty: no traces written
};

struct RunResult {
  std::string trials_csv;
  std::string blocks_csv;
  int trials_run = 0;
};

inline RunResult cmd_run(const RunOptions& opt) {
  if (opt.trials < 1) throw ConfigError("--trials must be at least 1");
  if (opt.techniques.empty()) throw ConfigError("no technique selected");
  if (opt.target_counts.empty()) throw ConfigError("no target counts selected");

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + opt.out_dir + "'");
  if (!opt.trace_dir.empty()) {
    fs::create_directories(opt.trace_dir, ec);
    if (ec) throw IoError("cannot create trace directory '" + opt.trace_dir + "'");
  }

  const std::string digest = config_digest(opt.base);
  std::ostringstream trials_csv, blocks_csv;
  trials_csv << "# schema=" << kTrialCsvSchema << " config=" << digest << '\n'
             << kTrialCsvHeader << '\n';
  blocks_csv << "# schema=" << kBlockCsvSchema << " config=" << digest << '\n'
             << kBlockCsvHeader << '\n';

  int total = 0;
  for (TechniqueId technique : opt.techniques) {
    for (int targets : opt.target_counts) {
      std::vector<TrialMetrics> block;
      for (int trial = 0; trial < opt.trials; ++trial) {
        TrialRecord r = run_one_trial(opt.base, technique, targets, trial);
        trials_csv << trial_csv_row(to_string(technique), targets, trial,
                                    r.config.agent.seed, r.metrics)
                   << '\n';
        if (!opt.trace_dir.empty()) {
          const std::string name = std::string("trace_") + to_string(technique) +
                                   "_t" + std::to_string(targets) + "_" +
                                   std::to_string(trial) + ".jsonl";
          write_trace_file((fs::path(opt.trace_dir) / name).string(), r.config,
                           generate_scene(r.config.scene).digest(), r.run.frames);
        }
        block.push_back(r.metrics);
        ++total;
      }
      try {
        blocks_csv << block_csv_row(to_string(technique), targets,
                                    block_metrics(block))
                   << '\n';
      } catch (const EmptyBlock&) {
        // No valid trials: keep the row, leave the aggregates blank.
        blocks_csv << to_string(technique) << ',' << targets << ','
                   << block.size() << ",0,0,,,\n";
      }
    }
  }

  RunResult out;
  out.trials_run = total;
  out.trials_csv = (fs::path(opt.out_dir) / "trials.csv").string();
  out.blocks_csv = (fs::path(opt.out_dir) / "blocks.csv").string();
  auto write_file = [](const std::string& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write '" + path + "'");
    os << body;
    if (!os) throw IoError("write failed for '" + path + "'");
  };
  write_file(out.trials_csv, trials_csv.str());
  write_file(out.blocks_csv, blocks_csv.str());
  return out;
}

struct ReplayResult {
  TraceData trace{};
  std::vector<InteractionEvent> events;
  TrialMetrics metrics{};
};

// Re-drive a recorded frame stream through a fresh session. With force=false
// the header digests must check out first.
inline ReplayResult cmd_replay(const std::string& trace_path, bool force = false,
                               const std::string& out_dir = "") {
  ReplayResult r;
  r.trace = read_trace_file(trace_path);
  if (!force) verify_trace_integrity(r.trace);
  r.trace.config.validate();

  const Scene scene = generate_scene(r.trace.config.scene);
  Session session(scene, r.trace.config.technique, r.trace.config.session_params());
  for (const auto& frame : r.trace.frames) {
    FrameOutput out = session.step(frame);
    r.events.insert(r.events.end(), out.events.begin(), out.events.end());
  }
  r.metrics = trial_metrics(r.events, r.trace.frames, scene);

  if (!out_dir.empty()) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "'");
    const std::string digest = config_digest(r.trace.config);

    std::ofstream ev_csv(fs::path(out_dir) / "events.csv", std::ios::binary);
    ev_csv << "# schema=events-v1 config=" << digest << '\n'
           << kEventCsvHeader << '\n';
    for (const auto& e : r.events) ev_csv << to_csv_row(e) << '\n';

    std::ofstream ev_jsonl(fs::path(out_dir) / "events.jsonl", std::ios::binary);
    for (const auto& e : r.events) ev_jsonl << to_jsonl_row(e) << '\n';

    std::ofstream m_csv(fs::path(out_dir) / "trials.csv", std::ios::binary);
    m_csv << "# schema=" << kTrialCsvSchema << " config=" << digest << '\n'
          << kTrialCsvHeader << '\n'
          << trial_csv_row(to_string(r.trace.config.technique),
                           r.trace.config.scene.target_count, 0,
                           r.trace.config.agent.seed, r.metrics)
          << '\n';
    if (!ev_csv || !ev_jsonl || !m_csv) throw IoError("write failed in '" + out_dir + "'");
  }
  return r;
}

struct ReportCell {
  int n = 0;
  int valid = 0;
  int error_free_valid = 0;
  double mean_tct_s = 0.0;        // over valid trials
  double mean_asr_pct = 0.0;      // over all trials
  double mean_er_pct = 0.0;       // over all trials
  double mean_movement_m = 0.0;   // over valid trials
  double mean_rotation_deg = 0.0; // over valid trials
  std::optional<double> ie_s;
};

struct Report {
  std::map<std::pair<std::string, int>, ReportCell> cells;
};

inline Report load_report(const std::vector<std::string>& trial_csv_paths) {
  if (trial_csv_paths.empty()) throw ConfigError("report needs at least one trials CSV");
  struct Acc {
    int n = 0, valid = 0, ef_valid = 0;
    double tct = 0, asr = 0, er = 0, mov = 0, rot = 0;
  };
  std::map<std::pair<std::string, int>, Acc> acc;

  for (const auto& path : trial_csv_paths) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(is, line) ||
        line.rfind(std::string("# schema=") + kTrialCsvSchema + " ", 0) != 0) {
      throw SchemaError("'" + path + "' is not a " + kTrialCsvSchema + " CSV");
    }
    if (!std::getline(is, line) || line != kTrialCsvHeader) {
      throw SchemaError("'" + path + "' has an unexpected column layout");
    }
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      const auto cols = split(line, ',');
      if (cols.size() != 17) {
        throw SchemaError("'" + path + "' row has " + std::to_string(cols.size()) +
                          " columns, expected 17");
      }
      Acc& a = acc[{cols[0], static_cast<int>(parse_long(cols[1]))}];
      const bool valid = cols[14] == "1";
      const bool error_free = cols[13] == "1";
      ++a.n;
      a.asr += parse_double(cols[7]);
      a.er += parse_double(cols[10]);
      if (valid) {
        ++a.valid;
        if (error_free) ++a.ef_valid;
        a.tct += parse_double(cols[4]);
        a.mov += parse_double(cols[11]);
        a.rot += parse_double(cols[12]);
      }
    }
  }

  Report rep;
  for (const auto& [key, a] : acc) {
    ReportCell c;
    c.n = a.n;
    c.valid = a.valid;
    c.error_free_valid = a.ef_valid;
    c.mean_asr_pct = a.asr / a.n;
    c.mean_er_pct = a.er / a.n;
    if (a.valid > 0) {
      c.mean_tct_s = a.tct / a.valid;
      c.mean_movement_m = a.mov / a.valid;
      c.mean_rotation_deg = a.rot / a.valid;
      const double success = a.ef_valid / static_cast<double>(a.valid);
      if (success > 0.0) c.ie_s = c.mean_tct_s / success;
    }
    rep.cells[key] = c;
  }
  return rep;
}

// Markdown table: one row per technique and target count. Time, movement and
// rotation means cover valid trials; the ratio means cover all trials.
inline std::string render_report(const Report& rep) {
  std::ostringstream os;
  os << "| technique | targets | n | valid | mean_tct_s | asr_pct | er_pct | ie_s |"
        " movement_m | rotation_deg |\n";
  os << "|---|---|---|---|---|---|---|---|---|---|\n";
  auto fmt = [](double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::fixed << v;
    return s.str();
  };
  for (const auto& [key, c] : rep.cells) {
    os << "| " << key.first << " | " << key.second << " | " << c.n << " | " << c.valid
       << " | " << fmt(c.mean_tct_s) << " | " << fmt(c.mean_asr_pct) << " | "
       << fmt(c.mean_er_pct) << " | " << (c.ie_s ? fmt(*c.ie_s) : std::string("-"))
       << " | " << fmt(c.mean_movement_m) << " | " << fmt(c.mean_rotation_deg)
       << " |\n";
  }
  return os.str();
}

}  // namespace gazepinch
