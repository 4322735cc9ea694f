// SPDX-License-Identifier: Apache-2.0
//
// semota - multi-sensor remote state estimation over MIMO fading channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "semota_cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "semota/config.hpp"
#include "semota/error.hpp"
#include "semota/experiments.hpp"
#include "semota/export.hpp"
#include "semota/validation.hpp"

namespace semota::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Invocation {
  std::string command;
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 0;
  std::vector<std::string> overrides;
  bool full_horizon = false;
};

fs::path output_dir(const Invocation& inv) {
  if (inv.out_dir) return *inv.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return kDefaultOutDir;
}

fs::path cache_path(const fs::path& out) { return out / "channel_stats_cache.json"; }

unsigned worker_count(const Invocation& inv) {
  if (inv.jobs > 0) return inv.jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentConfig resolve_config(const Invocation& inv) {
  std::vector<std::string> overrides;
  if (inv.full_horizon) overrides.emplace_back("K=1000");
  overrides.insert(overrides.end(), inv.overrides.begin(), inv.overrides.end());
  std::optional<fs::path> path;
  if (inv.config_path) path = fs::path(*inv.config_path);
  return load_config(path, overrides, inv.seed);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void warn_if_expanding(const SensorSetup& setup, bool relevant, std::ostream& err) {
  if (relevant && !setup.stats.contracting()) {
    err << "warning: alpha_bar = " << num(setup.stats.alpha_bar) << " >= 1 at M = "
        << setup.sensors << "; the Q^a future-cost bound loosens with the horizon\n";
  }
}

bool any_semota(const std::vector<Policy>& policies) {
  for (Policy p : policies) {
    if (is_semota(p)) return true;
  }
  return false;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_simulate(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = resolve_config(inv);
  const fs::path dir = output_dir(inv);
  const unsigned jobs = worker_count(inv);
  const SensorSetup setup = prepare_setup(cfg, cfg.sensors, cache_path(dir));
  warn_if_expanding(setup, is_semota(cfg.policy), err);
  const ThresholdTuning tuning = tune_thresholds(cfg, setup, {cfg.policy}, jobs);
  const PolicyRun run = run_policy(cfg, setup, cfg.policy, tuning, jobs);

  write_slot_csv(dir / "slots.csv", run.result);
  json manifest = make_manifest("simulate", cfg);
  manifest["setup"] = sweep_point_to_json({setup, tuning});
  manifest["summary"] = run_summary_to_json(run);
  manifest["wall_time_s"] = elapsed(t0);
  write_json(dir / "manifest.json", manifest);

  out << to_string(cfg.policy) << " M=" << cfg.sensors << " K=" << cfg.horizon
      << " runs=" << cfg.runs << ": mean NMSE " << num(run.result.avg_nmse.mean);
  if (run.result.has_standard_errors()) out << " (SE " << num(run.result.avg_nmse.se) << ")";
  out << ", mean power " << num(run.result.avg_power.mean) << "\n";
  out << "wrote " << (dir / "slots.csv").string() << "\n";
  return kExitOk;
}

int cmd_sweep(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = resolve_config(inv);
  const fs::path dir = output_dir(inv);
  const SweepResult res =
      sweep_sensors(cfg, cfg.sensor_counts, cfg.policies, worker_count(inv), cache_path(dir));
  json points = json::array();
  for (const auto& p : res.points) {
    warn_if_expanding(p.setup, any_semota(cfg.policies), err);
    points.push_back(sweep_point_to_json(p));
  }
  write_sweep_csv(dir / "sweep.csv", res);
  json manifest = make_manifest("sweep", cfg);
  manifest["points"] = points;
  manifest["wall_time_s"] = elapsed(t0);
  write_json(dir / "manifest.json", manifest);

  for (const auto& row : res.rows) {
    out << "M=" << row.sensors << " " << to_string(row.policy) << ": NMSE "
        << num(row.mean_nmse) << ", power " << num(row.mean_power) << "\n";
  }
  out << "wrote " << (dir / "sweep.csv").string() << "\n";
  return kExitOk;
}

int cmd_power_trace(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = resolve_config(inv);
  const fs::path dir = output_dir(inv);
  const PowerTraceResult res = power_trace(cfg, cfg.policies, worker_count(inv), cache_path(dir));
  warn_if_expanding(res.point.setup, any_semota(cfg.policies), err);
  json summaries = json::array();
  for (const auto& run : res.runs) {
    const fs::path file = dir / ("power_" + to_string(run.policy) + ".csv");
    write_slot_csv(file, run.result);
    summaries.push_back(run_summary_to_json(run));
    out << to_string(run.policy) << ": mean power " << num(run.result.avg_power.mean)
        << " -> " << file.string() << "\n";
  }
  json manifest = make_manifest("power-trace", cfg);
  manifest["setup"] = sweep_point_to_json(res.point);
  manifest["summary"] = summaries;
  manifest["wall_time_s"] = elapsed(t0);
  write_json(dir / "manifest.json", manifest);
  return kExitOk;
}

int cmd_stats(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = resolve_config(inv);
  const fs::path dir = output_dir(inv);
  const SensorSetup setup = prepare_setup(cfg, cfg.sensors, cache_path(dir));
  const ChannelStats& s = setup.stats;
  warn_if_expanding(setup, true, err);
  out << (setup.stats_cached ? "cached" : "computed") << " M=" << setup.sensors
      << " N_r=" << cfg.n_r << " n_samples=" << s.n_samples << " seed=" << s.seed << "\n"
      << "alpha_bar " << num(s.alpha_bar) << " (SE " << num(s.alpha_se) << ")\n"
      << "beta_bar " << num(s.beta_bar) << " (SE " << num(s.beta_se) << ")\n"
      << "full_rank_fraction " << num(s.full_rank_fraction) << "\n";
  return kExitOk;
}

int cmd_grid_search(const Invocation& inv, std::ostream& out, std::ostream&) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg = resolve_config(inv);
  cfg.baseline.tune = true;
  const fs::path dir = output_dir(inv);
  const SensorSetup setup = prepare_setup(cfg, cfg.sensors, cache_path(dir));
  const ThresholdTuning t =
      tune_thresholds(cfg, setup, {Policy::kAloha, Policy::kTdma}, worker_count(inv));

  const fs::path file = dir / "grid.csv";
  std::error_code ec;
  fs::create_directories(dir, ec);
  {
    std::FILE* f = std::fopen(file.string().c_str(), "wb");
    if (f == nullptr) throw IoError("cannot open '" + file.string() + "' for writing");
    std::fputs("baseline,threshold,mean_nmse\n", f);
    for (const auto* g : {&*t.aloha, &*t.tdma}) {
      const char* kind = g == &*t.aloha ? "aloha" : "tdma";
      for (const auto& [th, v] : g->evaluations) {
        std::fprintf(f, "%s,%s,%s\n", kind, format_number(th).c_str(), format_number(v).c_str());
      }
    }
    if (std::fclose(f) != 0) throw IoError("write to '" + file.string() + "' failed");
  }
  json manifest = make_manifest("grid-search", cfg);
  manifest["setup"] = sweep_point_to_json({setup, t});
  manifest["wall_time_s"] = elapsed(t0);
  write_json(dir / "manifest.json", manifest);
  out << "aloha sigma1 = " << num(t.sigma1) << " (NMSE " << num(t.aloha->best_value) << ")\n"
      << "tdma sigma2 = " << num(t.sigma2) << " (NMSE " << num(t.tdma->best_value) << ")\n";
  return kExitOk;
}

int cmd_validate(const Invocation& inv, std::ostream& out, std::ostream&) {
  const ExperimentConfig cfg = resolve_config(inv);
  const fs::path dir = output_dir(inv);
  const auto results = run_validation(cfg.validate_quick, cfg.master_seed, worker_count(inv));
  bool ok = true;
  json report = json::array();
  for (const auto& r : results) {
    ok = ok && r.passed;
    char line[96];
    std::snprintf(line, sizeof line, "%-26s %-4s %8.2fs  ", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.seconds);
    out << line << r.detail << "\n";
    report.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"detail", r.detail},
                      {"seconds", r.seconds}});
  }
  json manifest = make_manifest("validate", cfg);
  manifest["checks"] = report;
  write_json(dir / "validation.json", manifest);
  return ok ? kExitOk : kExitValidation;
}

void add_common(CLI::App* sub, Invocation& inv) {
  sub->add_option("--config", inv.config_path, "JSON config file or results manifest");
  sub->add_option("--out", inv.out_dir,
                  std::string("Output directory (default $") + kOutDirEnv + " or " +
                      kDefaultOutDir + ")");
  sub->add_option("--seed", inv.seed, "Master seed override");
  sub->add_option("--jobs", inv.jobs, "Worker threads (default: all cores)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--override", inv.overrides, "KEY=VALUE applied onto the config (repeatable)")
      ->take_all();
  sub->add_flag("--full-horizon", inv.full_horizon, "Use K = 1000");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"semota: scheduling for multi-sensor remote state estimation over fading channels"};
  app.require_subcommand(1);
  Invocation inv;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "Monte-Carlo episodes of one policy; writes slots.csv"},
      {"sweep", "NMSE and power versus sensor count; writes sweep.csv"},
      {"power-trace", "Per-slot mean transmit power per policy"},
      {"stats", "Estimate (or load cached) alpha_bar and beta_bar"},
      {"grid-search", "Tune the ALOHA and TDMA thresholds"},
      {"validate", "Run the invariant suites and print a pass/fail table"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, inv);
    sub->callback([&inv, name = name] { inv.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (inv.command == "simulate") return cmd_simulate(inv, out, err);
    if (inv.command == "sweep") return cmd_sweep(inv, out, err);
    if (inv.command == "power-trace") return cmd_power_trace(inv, out, err);
    if (inv.command == "stats") return cmd_stats(inv, out, err);
    if (inv.command == "grid-search") return cmd_grid_search(inv, out, err);
    if (inv.command == "validate") return cmd_validate(inv, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  err << "unknown command\n";
  return kExitConfig;
}

}  // namespace semota::cli
