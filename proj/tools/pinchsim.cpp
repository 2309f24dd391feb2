// pinchsim — trace-driven simulator and batch runner for the gaze+pinch
// multi-selection engine.
//
//   pinchsim run     synthesize trials, write trials.csv / blocks.csv (+ traces)
//   pinchsim replay  re-drive a recorded trace through a fresh session
//   pinchsim report  aggregate one or more trials.csv files into a table
//
// Exit codes: 0 success, 2 configuration/usage error, 3 I/O error,
// 4 data-integrity error (malformed trace/CSV, digest mismatch, clock fault).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gazepinch/runner.hpp"

namespace gp = gazepinch;

namespace {

std::vector<gp::TechniqueId> parse_techniques(const std::vector<std::string>& raw,
                                              bool all) {
  if (all) {
    return {std::begin(gp::kAllTechniques), std::end(gp::kAllTechniques)};
  }
  std::vector<gp::TechniqueId> out;
  for (const auto& item : raw) {
    for (const auto& name : gp::split(item, ',')) {
      out.push_back(gp::technique_from_string(std::string(gp::trim(name))));
    }
  }
  if (out.empty()) out.push_back(gp::TechniqueId::FullDH);
  return out;
}

std::vector<int> parse_targets(const std::string& raw) {
  std::vector<int> out;
  for (const auto& tok : gp::split(raw, ',')) {
    out.push_back(static_cast<int>(gp::parse_long(gp::trim(tok))));
  }
  return out;
}

// Dotted options shadowing every tunable in EngineConfig. Defaults in the
// bound struct are the engine defaults, so only overridden values change.
void add_config_options(CLI::App& app, gp::EngineConfig& cfg) {
  app.add_option("--seed", cfg.seed, "master seed for the sweep");
  app.add_option("--finalize-hold", cfg.finalize_hold,
                 "full-pinch hold time that finalizes the group (s)");

  app.add_option("--pinch.full-enter", cfg.pinch.full_enter);
  app.add_option("--pinch.semi-lower", cfg.pinch.semi_lower);
  app.add_option("--pinch.semi-upper", cfg.pinch.semi_upper);
  app.add_option("--pinch.release-enter", cfg.pinch.release_enter);

  app.add_option("--params.dwell-time", cfg.technique_params.dwell_time);
  app.add_option("--params.swipe-distance", cfg.technique_params.swipe_distance);
  app.add_option("--params.tilt-angle", cfg.technique_params.tilt_angle);
  app.add_option("--params.tilt-gain", cfg.technique_params.tilt_gain);
  app.add_flag("--params.left-handed", cfg.technique_params.left_handed);

  app.add_option("--scene.distance", cfg.scene.distance);
  app.add_option("--scene.spacing", cfg.scene.spacing);
  app.add_option("--scene.columns", cfg.scene.columns);
  app.add_option("--scene.rows", cfg.scene.rows);
  app.add_option("--scene.object-count", cfg.scene.object_count);
  app.add_option("--scene.visual-radius", cfg.scene.visual_radius);
  app.add_option("--scene.collider-scale", cfg.scene.collider_scale);

  app.add_option("--agent.frame-rate", cfg.agent.frame_rate);
  app.add_option("--agent.gaze-rate", cfg.agent.gaze_rate);
  app.add_option("--agent.reaction-time", cfg.agent.reaction_time);
  app.add_option("--agent.gaze-jitter-sigma-deg", cfg.agent.gaze_jitter_sigma_deg);
  app.add_option("--agent.hand-speed", cfg.agent.hand_speed);
  app.add_option("--agent.roll-speed", cfg.agent.roll_speed);
  app.add_option("--agent.premature-trigger-prob", cfg.agent.premature_trigger_prob);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaze+pinch multi-selection simulator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");

  // --- run ---------------------------------------------------------------
  auto* run = app.add_subcommand("run", "synthesize trials and write CSV results");
  gp::EngineConfig base;
  std::vector<std::string> technique_args;
  bool all_techniques = false;
  std::string targets_arg = "2,4,6";
  gp::RunOptions ropt;
  run->add_option("--technique", technique_args,
                  "technique name(s): fulldh, semindh, semidwell, semiswipe, semitilt");
  run->add_flag("--all-techniques", all_techniques, "sweep every technique");
  run->add_option("--targets", targets_arg, "comma-separated target counts");
  run->add_option("--trials", ropt.trials, "trials per technique x target-count cell");
  run->add_option("--out", ropt.out_dir, "output directory for CSV files");
  run->add_option("--trace-out", ropt.trace_dir,
                  "directory for per-trial trace files (omit to skip traces)");
  add_config_options(*run, base);

  // --- replay ------------------------------------------------------------
  auto* replay = app.add_subcommand("replay", "re-run a recorded trace");
  std::string trace_path, replay_out;
  bool force = false;
  replay->add_option("trace", trace_path, "trace .jsonl file")->required();
  replay->add_option("--out", replay_out, "write events.csv/events.jsonl/trials.csv here");
  replay->add_flag("--force", force, "skip config/scene digest verification");

  // --- report ------------------------------------------------------------
  auto* report = app.add_subcommand("report", "aggregate trials.csv files");
  std::vector<std::string> report_inputs;
  std::string report_out;
  report->add_option("inputs", report_inputs, "trials.csv files")->required();
  report->add_option("--out", report_out, "write the markdown table to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      base.validate();
      ropt.base = base;
      ropt.techniques = parse_techniques(technique_args, all_techniques);
      ropt.target_counts = parse_targets(targets_arg);
      gp::RunResult res = gp::cmd_run(ropt);
      std::cout << "ran " << res.trials_run << " trials\n"
                << "trials: " << res.trials_csv << '\n'
                << "blocks: " << res.blocks_csv << '\n';
    } else if (replay->parsed()) {
      gp::ReplayResult res = gp::cmd_replay(trace_path, force, replay_out);
      std::cout << "replayed " << res.trace.frames.size() << " frames, "
                << res.events.size() << " events\n"
                << "tct_s=" << gp::format_double(res.metrics.tct_s)
                << " subselections=" << res.metrics.subselections
                << " error_free=" << (res.metrics.error_free ? 1 : 0)
                << " valid=" << (res.metrics.valid ? 1 : 0) << '\n';
    } else if (report->parsed()) {
      gp::Report rep = gp::load_report(report_inputs);
      const std::string table = gp::render_report(rep);
      if (report_out.empty()) {
        std::cout << table;
      } else {
        std::ofstream os(report_out, std::ios::binary);
        if (!os) throw gp::IoError("cannot write '" + report_out + "'");
        os << table;
      }
    }
  } catch (const gp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const gp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const gp::ClockError& e) {
    std::cerr << "clock error: " << e.what() << '\n';
    return 4;
  } catch (const gp::VersionError& e) {
    std::cerr << "version error: " << e.what() << '\n';
    return 4;
  } catch (const gp::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return 4;
  } catch (const gp::DigestMismatch& e) {
    std::cerr << "integrity error: " << e.what() << '\n';
    return 4;
  } catch (const gp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 4;
  } catch (const gp::IncompleteTrial& e) {
    std::cerr << "incomplete trial: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
