#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "react/baselines.hpp"
#include "react/config.hpp"
#include "react/metrics.hpp"
#include "react/risk_map.hpp"
#include "react/scenario.hpp"
#include "react/trace_io.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

react::EngineConfig load_config_or_default(const std::string& path) {
  if (path.empty()) return react::EngineConfig{};
  return react::load_engine_config(path);
}

// All artifacts land as <name>.tmp first and are renamed once every write
// has succeeded, so a failed run never leaves a partial artifact set.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(const fs::path& dir) : dir_(dir) {
    fs::create_directories(dir_);
  }

  fs::path stage(const std::string& name) {
    const fs::path tmp = dir_ / (name + ".tmp");
    staged_.emplace_back(tmp, dir_ / name);
    return tmp;
  }

  void commit() {
    for (const auto& [tmp, final_path] : staged_)
      fs::rename(tmp, final_path);
    staged_.clear();
  }

  ~ArtifactWriter() {
    std::error_code ec;
    for (const auto& [tmp, final_path] : staged_) fs::remove(tmp, ec);
  }

 private:
  fs::path dir_;
  std::vector<std::pair<fs::path, fs::path>> staged_;
};

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", t);
  return buf;
}

ordered_json latency_json(const react::LatencyStats& s) {
  return {{"mean_ms", s.mean_ms}, {"p95_ms", s.p95_ms}, {"max_ms", s.max_ms}};
}

int run_scenario_command(const std::string& kind_text,
                         const std::string& config_path,
                         const std::string& out_dir, const std::string& mode) {
  const react::ScenarioKind kind = react::parse_scenario_kind(kind_text);
  react::EngineConfig config = load_config_or_default(config_path);
  react::ensure_calibrated(config);

  react::ScenarioScript script = react::build_scenario(kind, config.scenario);
  script.lane = config.lane;

  const react::Trace open_loop = react::run(script);
  const std::vector<react::FrameAssessment> first_pass =
      react::assess_trace(open_loop, {}, config);

  react::DriverResponse resp;
  if (mode == "warning") {
    std::vector<int> levels;
    levels.reserve(first_pass.size());
    for (const auto& a : first_pass) levels.push_back(a.advisory.level);
    resp = react::ego_driver_model(open_loop, levels,
                                   react::DriverMode::WithWarning,
                                   config.driver);
  } else {
    resp = react::ego_driver_model(open_loop, {},
                                   react::DriverMode::NoWarning,
                                   config.driver);
  }

  const std::vector<react::FrameAssessment> assessments =
      react::assess_trace(resp.trace, resp.s_brake, config);

  react::RunLabels labels;
  labels.t_f = resp.trace.labels.t_f;
  labels.hazard_start = resp.trace.labels.hazard_start;
  labels.hazard_end = resp.trace.labels.hazard_end;
  labels.hazard_run = !config.scenario.nominal;
  const react::RunMetrics metrics = react::evaluate_run(assessments, labels);

  ArtifactWriter out(out_dir);
  react::write_trace_csv(out.stage("trace.csv").string(), resp.trace);
  react::write_assessments(out.stage("assessments.jsonl").string(),
                           assessments);

  // heatmap snapshots around the labeled and detected moments
  std::vector<double> snap_times = {labels.t_f - 1.0, labels.t_f};
  if (metrics.t_w) {
    snap_times.push_back(*metrics.t_w);
    snap_times.push_back(*metrics.t_w + 1.0);
  }
  std::map<std::string, std::size_t> snapshots;  // file name -> frame index
  for (double target : snap_times) {
    std::size_t best = resp.trace.frames.size();
    double best_err = resp.trace.dt / 2.0 + 1e-9;
    for (std::size_t i = 0; i < resp.trace.frames.size(); ++i) {
      const double err = std::abs(resp.trace.frames[i].t - target);
      if (err < best_err) {
        best_err = err;
        best = i;
      }
    }
    if (best < resp.trace.frames.size())
      snapshots["matrix_" + format_time(resp.trace.frames[best].t) + ".csv"] =
          best;
  }
  for (const auto& [name, idx] : snapshots) {
    const react::TraceFrame& frame = resp.trace.frames[idx];
    const react::AgentState* ego = react::find_agent(frame, resp.trace.ego_id);
    std::vector<react::AgentState> others;
    for (const react::AgentState& a : frame.agents)
      if (a.id != resp.trace.ego_id) others.push_back(a);
    const react::Grid grid = react::build_grid(*ego, config.grid);
    const react::RiskMatrix m =
        react::compute_risk_matrix(grid, *ego, others, config.lane, config.model);
    react::write_matrix_csv(out.stage(name).string(), m);
  }

  ordered_json mj;
  mj["scenario"] = react::scenario_kind_name(kind);
  mj["mode"] = mode;
  mj["nominal"] = config.scenario.nominal;
  mj["t_f"] = labels.t_f;
  mj["hazard_window"] = {labels.hazard_start, labels.hazard_end};
  mj["false_alarm_rate"] = metrics.false_alarm_rate;
  mj["miss_rate"] = metrics.miss_rate;
  if (metrics.t_w) mj["t_w"] = *metrics.t_w;
  else mj["t_w"] = nullptr;
  if (metrics.warning_lead_time)
    mj["warning_lead_time"] = *metrics.warning_lead_time;
  else
    mj["warning_lead_time"] = nullptr;
  if (resp.brake_onset_t) mj["brake_onset_t"] = *resp.brake_onset_t;
  else mj["brake_onset_t"] = nullptr;
  mj["reference_energy"] = config.norm.reference_energy;
  mj["latency"] = latency_json(metrics.latency);
  mj["per_frame_records"] = metrics.per_frame_records;
  {
    std::ofstream f(out.stage("metrics.json"));
    if (!f) throw react::InputError("cannot write metrics.json");
    f << mj.dump(2) << '\n';
  }

  out.commit();
  std::cout << "scenario " << react::scenario_kind_name(kind) << " mode="
            << mode << (config.scenario.nominal ? " (nominal)" : "")
            << ": miss_rate=" << metrics.miss_rate
            << " false_alarm_rate=" << metrics.false_alarm_rate;
  if (metrics.warning_lead_time)
    std::cout << " lead_time=" << *metrics.warning_lead_time << "s";
  std::cout << " -> " << out_dir << std::endl;
  return 0;
}

int run_replay_command(const std::string& trace_path, std::int64_t ego_id,
                       const std::string& config_path,
                       const std::string& out_dir) {
  react::EngineConfig config = load_config_or_default(config_path);
  react::ensure_calibrated(config);

  const react::Trace trace =
      react::load_trace(trace_path, config.schema, ego_id);
  const std::vector<react::FrameAssessment> assessments =
      react::assess_trace(trace, {}, config);
  const std::vector<react::BaselineRecord> baselines =
      react::baseline_series(trace, config.lead, config.rss);

  ArtifactWriter out(out_dir);
  react::write_assessments(out.stage("assessments.jsonl").string(),
                           assessments);
  react::write_baseline_csv(out.stage("baselines.csv").string(), baselines);
  out.commit();

  std::size_t warnings = 0;
  for (const auto& a : assessments)
    if (a.advisory.level >= 1) ++warnings;
  std::cout << "replay " << trace_path << ": " << trace.frames.size()
            << " frames, " << warnings << " advisories -> " << out_dir
            << std::endl;
  return 0;
}

int run_bench_command(const std::string& config_path,
                      std::vector<std::size_t> sizes, std::size_t reps) {
  react::EngineConfig config = load_config_or_default(config_path);
  react::ensure_calibrated(config);
  if (sizes.empty()) sizes = {0, 5, 10};

  const std::vector<react::BenchRow> rows =
      react::latency_bench(config, sizes, reps);
  std::printf("%14s %8s %12s %10s %10s %10s\n", "participants", "cells",
              "iterations", "mean_ms", "p95_ms", "max_ms");
  for (const react::BenchRow& r : rows)
    std::printf("%14zu %8zu %12zu %10.4f %10.4f %10.4f\n", r.participants,
                r.cells, r.iterations, r.latency.mean_ms, r.latency.p95_ms,
                r.latency.max_ms);
  return 0;
}

int run_calibrate_command(const std::string& config_path) {
  react::EngineConfig config = load_config_or_default(config_path);
  const double e_ref = react::calibrate_reference_energy(
      config.model, config.grid, config.norm);
  std::cout.precision(17);
  std::cout << "reference_energy " << e_ref << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"runtime traffic risk assessment and warning pipeline"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string mode = "warning";
  std::string kind_text;
  std::string trace_path;
  std::int64_t ego_id = 0;
  std::vector<std::size_t> sizes;
  std::size_t reps = 1000;

  CLI::App* scenario = app.add_subcommand("scenario", "run a scripted scenario");
  scenario->add_option("kind", kind_text, "CF, CI, RV or IC")->required();
  scenario->add_option("--config", config_path, "JSON config file");
  scenario->add_option("--out", out_dir, "output directory");
  scenario->add_option("--mode", mode, "warning|nowarning")
      ->check(CLI::IsMember({"warning", "nowarning"}));

  CLI::App* replay = app.add_subcommand("replay", "replay a recorded trace");
  replay->add_option("--trace", trace_path, "trajectory CSV")->required();
  replay->add_option("--ego-id", ego_id, "ego agent id")->required();
  replay->add_option("--config", config_path, "JSON config file");
  replay->add_option("--out", out_dir, "output directory");

  CLI::App* bench = app.add_subcommand("bench", "latency benchmark");
  bench->add_option("--config", config_path, "JSON config file");
  bench->add_option("--sizes", sizes, "participant counts");
  bench->add_option("--reps", reps, "timed iterations per size");

  CLI::App* calibrate =
      app.add_subcommand("calibrate", "print the reference energy");
  calibrate->add_option("--config", config_path, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (scenario->parsed())
      return run_scenario_command(kind_text, config_path, out_dir, mode);
    if (replay->parsed())
      return run_replay_command(trace_path, ego_id, config_path, out_dir);
    if (bench->parsed()) return run_bench_command(config_path, sizes, reps);
    if (calibrate->parsed()) return run_calibrate_command(config_path);
  } catch (const react::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << std::endl;
    return 2;
  } catch (const react::CalibrationError& e) {
    std::cerr << "configuration error: " << e.what() << std::endl;
    return 2;
  } catch (const react::InputError& e) {
    std::cerr << "input error: " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
