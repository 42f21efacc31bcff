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

#ifndef GENIE_HARNESS_CONFIG_H_
#define GENIE_HARNESS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "genie/objectmap/object_map.h"
#include "genie/workload/device_profile.h"
#include "genie/workload/synth.h"
#include "genie/workload/trace.h"
#include "json.hpp"

namespace genie::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// L: detector on the car only. R: every frame uploaded to an edge detector.
// DG: local and remote Genies.
enum class Mode { kLocal, kRemote, kGenie };

std::string_view ToString(Mode mode);
Mode ModeFromString(std::string_view s);

struct LinkConfig {
  double intra_ms = 0.0;        // between nodes on one machine
  double edge_ms = 0.0;         // car <-> edge, one way
  double edge_jitter_ms = 0.0;  // extra delay drawn from U(0, jitter)
};

struct TraceSource {
  std::optional<std::string> path;
  // Used when no path is given. n_cars is taken from the scenario.
  workload::SynthParams synth;
  // Seed for synthesis; defaults to the scenario seed.
  std::optional<uint64_t> synth_seed;
};

struct ScenarioConfig {
  int n_cars = 1;
  std::string car_device = "Nano";
  std::vector<std::string> edge_devices = {"AGX"};
  std::string model = "DETR-ResNet-50";
  Mode mode = Mode::kGenie;
  TraceSource trace;
  uint64_t seed = 42;
  double deadline_ms = 33.0;
  double cache_overhead_ms = 8.8;
  double dedup_window_ms = 1000.0;
  double pending_timeout_ms = 5000.0;
  size_t max_entries = 0;
  bool caching_enabled = true;
  bool strict_share_filter = false;
  objectmap::ObjectMapOptions objectmap;
  LinkConfig links;
  // Car ids (as named in the trace) that have no detector.
  std::vector<std::string> phantom_cars;
  // Device profile file; the built-in table when empty.
  std::optional<std::string> profiles_path;
  uint64_t image_bytes = 1242 * 375 * 3;

  // Field-for-field JSON. Unknown keys are rejected.
  static ScenarioConfig FromJson(const nlohmann::json& j);
  static ScenarioConfig Load(const std::string& path);
  nlohmann::json ToJson() const;

  // Range checks that need no external resources. Throws ConfigError.
  void Validate() const;
  // Validate() plus profile resolution: every device and the model must be
  // known, and the model must fit on every device that will run it.
  void ValidateAgainst(const workload::ProfileTable& profiles) const;

  workload::ProfileTable LoadProfiles() const;
  // Loads or synthesizes the trace and checks that it has enough cars and
  // that phantom ids exist in it.
  workload::Trace LoadTrace() const;
  workload::SynthParams EffectiveSynth() const;
};

// The first n_cars car ids of the trace, shortest names first so that
// "car2" precedes "car10".
std::vector<std::string> SimulatedCars(const workload::Trace& trace, int n_cars);

}  // namespace genie::harness

#endif  // GENIE_HARNESS_CONFIG_H_
