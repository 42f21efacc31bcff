// Copyright 2026 The Genie Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run, compare, synth, report.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "genie/harness/config.h"
#include "genie/harness/report.h"
#include "genie/harness/scenario.h"
#include "genie/workload/synth.h"
#include "genie/workload/trace.h"

namespace {

using genie::harness::ScenarioConfig;

int Run(const std::string& config_path, std::optional<uint64_t> seed,
        const std::string& out_dir) {
  ScenarioConfig cfg = ScenarioConfig::Load(config_path);
  if (seed) cfg.seed = *seed;
  const auto report = genie::harness::RunScenario(cfg);
  genie::harness::EmitReport(report, out_dir);
  genie::harness::PrintSummary(
      std::cout, nlohmann::json::parse(report.Summary().dump()));
  std::cout << "wrote " << out_dir << '\n';
  return 0;
}

int Compare(const std::string& config_path, std::optional<uint64_t> seed,
            const std::string& out_dir) {
  ScenarioConfig cfg = ScenarioConfig::Load(config_path);
  if (seed) cfg.seed = *seed;
  const auto c = genie::harness::CompareBaselines(cfg);
  genie::harness::EmitComparison(c, out_dir);
  const auto j = c.ToJson();
  std::cout << "mean latency ms: L " << j["mean_latency_ms"]["L"].get<double>()
            << "  R " << j["mean_latency_ms"]["R"].get<double>() << "  DG "
            << j["mean_latency_ms"]["DG"].get<double>() << '\n'
            << "DG improvement: " << j["improvement_percent"]["DG_vs_L"].get<double>()
            << "% vs L, " << j["improvement_percent"]["DG_vs_R"].get<double>()
            << "% vs R\n"
            << "wrote " << out_dir << '\n';
  return 0;
}

int Synth(genie::workload::SynthParams p, const std::string& route,
          const std::string& out) {
  p.route = genie::workload::RouteFromString(route);
  const auto trace = genie::workload::SynthTrace(p);
  if (out == "-") {
    genie::workload::SaveTrace(std::cout, trace);
  } else {
    genie::workload::SaveTrace(out, trace);
    std::cerr << "wrote " << trace.size() << " frames ("
              << genie::workload::CountRepeatsWithinCars(trace)
              << " repeated within cars) to " << out << '\n';
  }
  return 0;
}

int Report(const std::string& in_dir) {
  const std::string path = in_dir + "/summary.json";
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << '\n';
    return 2;
  }
  genie::harness::PrintSummary(std::cout, nlohmann::json::parse(in));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genie edge-cache simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<uint64_t> seed;

  auto* run = app.add_subcommand("run", "Run one scenario and write a report");
  run->add_option("--config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Run L, R and DG on the same trace");
  compare->add_option("--config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  compare->add_option("--seed", seed, "Override the config seed");
  compare->add_option("--out", out_dir, "Output directory")->capture_default_str();

  genie::workload::SynthParams sp;
  std::string route = "loop";
  std::string trace_out = "trace.jsonl";
  auto* synth = app.add_subcommand("synth", "Generate a synthetic trace");
  synth->add_option("--route", route, "loop | shared-corridor | disjoint")->capture_default_str();
  synth->add_option("--cars", sp.n_cars, "Number of cars")->capture_default_str();
  synth->add_option("--frames", sp.n_frames, "Frames per car")->capture_default_str();
  synth->add_option("--objects", sp.objects_per_frame, "Objects per frame")->capture_default_str();
  synth->add_option("--overlap", sp.overlap, "Overlap fraction in [0,1]")->capture_default_str();
  synth->add_option("--seed", sp.seed, "Seed")->capture_default_str();
  synth->add_option("--period", sp.frame_period_ms, "Frame period ms")->capture_default_str();
  synth->add_option("--stagger", sp.stagger_ms, "Start offset between cars ms")->capture_default_str();
  synth->add_option("--out", trace_out, "Output file, - for stdout")->capture_default_str();

  std::string in_dir;
  auto* report = app.add_subcommand("report", "Pretty-print a report's summary.json");
  report->add_option("--in", in_dir, "Report directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return Run(config_path, seed, out_dir);
    if (*compare) return Compare(config_path, seed, out_dir);
    if (*synth) return Synth(sp, route, trace_out);
    if (*report) return Report(in_dir);
  } catch (const genie::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const genie::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
