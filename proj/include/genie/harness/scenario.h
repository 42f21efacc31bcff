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

#ifndef GENIE_HARNESS_SCENARIO_H_
#define GENIE_HARNESS_SCENARIO_H_

#include <functional>
#include <string>

#include "genie/harness/config.h"
#include "genie/harness/report.h"
#include "genie/node/genie_cache.h"
#include "genie/workload/device_profile.h"
#include "genie/workload/trace.h"

namespace genie::harness {

struct ScenarioHooks {
  // Called on every cache hit with the serving Genie.
  std::function<void(const NodeId& genie, const node::HitEvent& hit)> on_hit;
  // Keep the fabric delivery log in the report.
  bool keep_log = false;
};

// Builds the topology for config.mode, replays the trace and collects
// metrics. Throws ConfigError before simulating if the config does not
// validate against the profiles.
MetricsReport RunScenario(const ScenarioConfig& config,
                          const ScenarioHooks& hooks = {});
MetricsReport RunScenario(const ScenarioConfig& config,
                          const workload::Trace& trace,
                          const workload::ProfileTable& profiles,
                          const ScenarioHooks& hooks = {});

struct Comparison {
  MetricsReport local;
  MetricsReport remote;
  MetricsReport genie;

  nlohmann::ordered_json ToJson() const;
};

// Runs L, R and DG on the same trace and seed, one thread each.
Comparison CompareBaselines(const ScenarioConfig& config);

// Writes L/, R/ and DG/ report directories plus comparison.json.
void EmitComparison(const Comparison& c, const std::string& out_dir);

}  // namespace genie::harness

#endif  // GENIE_HARNESS_SCENARIO_H_
