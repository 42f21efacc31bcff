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

#include "genie/harness/config.h"

#include <algorithm>
#include <fstream>
#include <set>

namespace genie::harness {

namespace {

using nlohmann::json;

void RejectUnknown(const json& j, const std::set<std::string>& known,
                   const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

objectmap::ObjectMapOptions ObjectMapFromJson(const json& j) {
  RejectUnknown(j, {"resolution_m", "c_threshold", "lambda", "rule", "radius_m"},
                "objectmap");
  objectmap::ObjectMapOptions o;
  Read(j, "resolution_m", o.resolution_m);
  Read(j, "c_threshold", o.c_threshold);
  Read(j, "lambda", o.lambda);
  Read(j, "radius_m", o.radius_m);
  if (j.contains("rule")) {
    o.rule = objectmap::UpdateRuleFromString(j.at("rule").get<std::string>());
  }
  return o;
}

TraceSource TraceFromJson(const json& j) {
  RejectUnknown(j, {"path", "synth"}, "trace");
  TraceSource t;
  if (j.contains("path")) t.path = j.at("path").get<std::string>();
  if (j.contains("synth")) {
    const json& s = j.at("synth");
    RejectUnknown(s,
                  {"route", "n_frames", "objects_per_frame", "overlap", "seed",
                   "frame_period_ms", "stagger_ms", "spacing_m", "beta_a",
                   "beta_b"},
                  "trace.synth");
    workload::SynthParams& p = t.synth;
    if (s.contains("route")) {
      p.route = workload::RouteFromString(s.at("route").get<std::string>());
    }
    Read(s, "n_frames", p.n_frames);
    Read(s, "objects_per_frame", p.objects_per_frame);
    Read(s, "overlap", p.overlap);
    Read(s, "frame_period_ms", p.frame_period_ms);
    Read(s, "stagger_ms", p.stagger_ms);
    Read(s, "spacing_m", p.spacing_m);
    Read(s, "beta_a", p.beta_a);
    Read(s, "beta_b", p.beta_b);
    if (s.contains("seed")) t.synth_seed = s.at("seed").get<uint64_t>();
  }
  if (t.path && j.contains("synth")) {
    throw ConfigError("trace: give either path or synth, not both");
  }
  return t;
}

}  // namespace

std::vector<std::string> SimulatedCars(const workload::Trace& trace, int n_cars) {
  std::vector<std::string> cars = trace.cars();
  std::stable_sort(cars.begin(), cars.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  if (static_cast<int>(cars.size()) > n_cars) cars.resize(n_cars);
  return cars;
}

std::string_view ToString(Mode mode) {
  switch (mode) {
    case Mode::kLocal:
      return "L";
    case Mode::kRemote:
      return "R";
    case Mode::kGenie:
      return "DG";
  }
  return "DG";
}

Mode ModeFromString(std::string_view s) {
  if (s == "L") return Mode::kLocal;
  if (s == "R") return Mode::kRemote;
  if (s == "DG") return Mode::kGenie;
  throw ConfigError("unknown mode '" + std::string(s) + "' (expected L, R or DG)");
}

ScenarioConfig ScenarioConfig::FromJson(const json& j) {
  ScenarioConfig c;
  try {
    RejectUnknown(j,
                  {"n_cars", "car_device", "edge_devices", "model", "mode",
                   "trace", "seed", "deadline_ms", "cache_overhead_ms",
                   "dedup_window_ms", "pending_timeout_ms", "max_entries",
                   "caching_enabled", "strict_share_filter", "objectmap",
                   "links", "phantom_cars", "profiles", "image_bytes"},
                  "config");
    Read(j, "n_cars", c.n_cars);
    Read(j, "car_device", c.car_device);
    Read(j, "edge_devices", c.edge_devices);
    Read(j, "model", c.model);
    if (j.contains("mode")) c.mode = ModeFromString(j.at("mode").get<std::string>());
    if (j.contains("trace")) c.trace = TraceFromJson(j.at("trace"));
    Read(j, "seed", c.seed);
    Read(j, "deadline_ms", c.deadline_ms);
    Read(j, "cache_overhead_ms", c.cache_overhead_ms);
    Read(j, "dedup_window_ms", c.dedup_window_ms);
    Read(j, "pending_timeout_ms", c.pending_timeout_ms);
    Read(j, "max_entries", c.max_entries);
    Read(j, "caching_enabled", c.caching_enabled);
    Read(j, "strict_share_filter", c.strict_share_filter);
    if (j.contains("objectmap")) c.objectmap = ObjectMapFromJson(j.at("objectmap"));
    if (j.contains("links")) {
      const json& l = j.at("links");
      RejectUnknown(l, {"intra_ms", "edge_ms", "edge_jitter_ms"}, "links");
      Read(l, "intra_ms", c.links.intra_ms);
      Read(l, "edge_ms", c.links.edge_ms);
      Read(l, "edge_jitter_ms", c.links.edge_jitter_ms);
    }
    Read(j, "phantom_cars", c.phantom_cars);
    if (j.contains("profiles")) c.profiles_path = j.at("profiles").get<std::string>();
    Read(j, "image_bytes", c.image_bytes);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

ScenarioConfig ScenarioConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return FromJson(j);
}

json ScenarioConfig::ToJson() const {
  json trace_j = json::object();
  if (trace.path) {
    trace_j["path"] = *trace.path;
  } else {
    const auto& p = trace.synth;
    trace_j["synth"] = {{"route", std::string(workload::ToString(p.route))},
                        {"n_frames", p.n_frames},
                        {"objects_per_frame", p.objects_per_frame},
                        {"overlap", p.overlap},
                        {"frame_period_ms", p.frame_period_ms},
                        {"stagger_ms", p.stagger_ms},
                        {"spacing_m", p.spacing_m},
                        {"beta_a", p.beta_a},
                        {"beta_b", p.beta_b}};
    if (trace.synth_seed) trace_j["synth"]["seed"] = *trace.synth_seed;
  }
  json j = {{"n_cars", n_cars},
            {"car_device", car_device},
            {"edge_devices", edge_devices},
            {"model", model},
            {"mode", std::string(ToString(mode))},
            {"trace", trace_j},
            {"seed", seed},
            {"deadline_ms", deadline_ms},
            {"cache_overhead_ms", cache_overhead_ms},
            {"dedup_window_ms", dedup_window_ms},
            {"pending_timeout_ms", pending_timeout_ms},
            {"max_entries", max_entries},
            {"caching_enabled", caching_enabled},
            {"strict_share_filter", strict_share_filter},
            {"objectmap",
             {{"resolution_m", objectmap.resolution_m},
              {"c_threshold", objectmap.c_threshold},
              {"lambda", objectmap.lambda},
              {"rule", std::string(objectmap::ToString(objectmap.rule))},
              {"radius_m", objectmap.radius_m}}},
            {"links",
             {{"intra_ms", links.intra_ms},
              {"edge_ms", links.edge_ms},
              {"edge_jitter_ms", links.edge_jitter_ms}}},
            {"phantom_cars", phantom_cars},
            {"image_bytes", image_bytes}};
  if (profiles_path) j["profiles"] = *profiles_path;
  return j;
}

void ScenarioConfig::Validate() const {
  if (n_cars < 1) throw ConfigError("n_cars must be >= 1");
  if (!(deadline_ms > 0)) throw ConfigError("deadline_ms must be > 0");
  if (!(cache_overhead_ms >= 0)) throw ConfigError("cache_overhead_ms must be >= 0");
  if (!(dedup_window_ms >= 0)) throw ConfigError("dedup_window_ms must be >= 0");
  if (!(pending_timeout_ms > 0)) throw ConfigError("pending_timeout_ms must be > 0");
  if (!(links.intra_ms >= 0 && links.edge_ms >= 0 && links.edge_jitter_ms >= 0)) {
    throw ConfigError("link latencies must be >= 0");
  }
  if (mode != Mode::kLocal && edge_devices.empty()) {
    throw ConfigError("edge_devices must name one profile per remote Genie");
  }
  std::set<std::string> seen;
  for (const auto& p : phantom_cars) {
    if (!seen.insert(p).second) throw ConfigError("phantom car listed twice: " + p);
  }
  if (mode != Mode::kGenie && !phantom_cars.empty()) {
    throw ConfigError("phantom cars need mode DG");
  }
  try {
    objectmap.Validate();
    if (!trace.path) trace.synth.Validate();
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
}

void ScenarioConfig::ValidateAgainst(const workload::ProfileTable& profiles) const {
  Validate();
  auto check = [&](const std::string& device) {
    if (!profiles.HasDevice(device)) throw ConfigError("unknown device: " + device);
    const auto& p = profiles.Device(device);
    if (!p.models.contains(model)) {
      throw ConfigError("device " + device + " has no profile for model " + model);
    }
    if (p.models.at(model).oom) {
      throw ConfigError("model " + model + " does not fit on " + device + " (OOM)");
    }
  };
  if (mode != Mode::kRemote) check(car_device);
  if (mode != Mode::kLocal) {
    for (const auto& d : edge_devices) check(d);
  }
}

workload::ProfileTable ScenarioConfig::LoadProfiles() const {
  if (!profiles_path) return workload::ProfileTable::Default();
  try {
    return workload::ProfileTable::Load(*profiles_path);
  } catch (const workload::ProfileError& e) {
    throw ConfigError(e.what());
  }
}

workload::SynthParams ScenarioConfig::EffectiveSynth() const {
  workload::SynthParams p = trace.synth;
  p.n_cars = n_cars;
  p.seed = trace.synth_seed.value_or(seed);
  return p;
}

workload::Trace ScenarioConfig::LoadTrace() const {
  workload::Trace t;
  try {
    t = trace.path ? workload::LoadTrace(*trace.path)
                   : workload::SynthTrace(EffectiveSynth());
  } catch (const workload::TraceParseError& e) {
    throw ConfigError(std::string("trace: ") + e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("trace: ") + e.what());
  }
  if (static_cast<int>(t.cars().size()) < n_cars) {
    throw ConfigError("trace has " + std::to_string(t.cars().size()) +
                      " cars but n_cars is " + std::to_string(n_cars));
  }
  const auto cars = SimulatedCars(t, n_cars);
  for (const auto& p : phantom_cars) {
    if (std::find(cars.begin(), cars.end(), p) == cars.end()) {
      throw ConfigError("phantom car " + p + " is not among the simulated cars");
    }
  }
  return t;
}

}  // namespace genie::harness
