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

#include "genie/workload/device_profile.h"

#include <fstream>

namespace genie::workload {

const ModelLatency& DeviceProfile::Model(const std::string& model) const {
  auto it = models.find(model);
  if (it == models.end()) {
    throw ProfileError("device " + device + " has no profile for model " + model);
  }
  return it->second;
}

ProfileTable ProfileTable::Default() {
  // Columns: Nano, AGX, Orin, A4500. Negative = out of memory.
  struct Row {
    const char* model;
    double ms[4];
  };
  static constexpr Row kRows[] = {
      {"YOLOv8s", {27.60, 21.20, 13.73, 5.50}},
      {"YOLOv8m", {60.90, 48.45, 17.50, 7.10}},
      {"YOLOv8l", {92.00, 85.50, 26.20, 9.70}},
      {"DETR-ResNet-50", {307.28, 230.39, 112.26, 30.91}},
      {"DETR-ResNet-101", {422.51, 336.96, 145.92, 40.73}},
      {"DETR-ResNet-101-DC5", {-1.0, 747.30, 316.52, 86.13}},
  };
  static constexpr const char* kDevices[] = {"Nano", "AGX", "Orin", "A4500"};

  ProfileTable t;
  for (int d = 0; d < 4; ++d) {
    DeviceProfile p;
    p.device = kDevices[d];
    for (const Row& r : kRows) {
      p.models[r.model] = r.ms[d] < 0 ? ModelLatency{0.0, true}
                                      : ModelLatency{r.ms[d], false};
    }
    t.devices_[p.device] = std::move(p);
  }
  return t;
}

ProfileTable ProfileTable::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ProfileError("profile table must be a JSON object");
  ProfileTable t;
  for (const auto& [device, models] : j.items()) {
    if (!models.is_object()) throw ProfileError("device " + device + ": expected object");
    DeviceProfile p;
    p.device = device;
    for (const auto& [model, v] : models.items()) {
      if (model == "jitter_fraction") {
        p.jitter_fraction = v.get<double>();
        if (p.jitter_fraction < 0 || p.jitter_fraction >= 1) {
          throw ProfileError(device + ": jitter_fraction must be in [0,1)");
        }
        continue;
      }
      ModelLatency m;
      if (v.value("oom", false)) {
        m.oom = true;
      } else if (v.contains("mean_ms")) {
        m.mean_ms = v.at("mean_ms").get<double>();
        if (!(m.mean_ms > 0)) {
          throw ProfileError(device + "/" + model + ": mean_ms must be positive");
        }
      } else {
        throw ProfileError(device + "/" + model + ": need mean_ms or oom");
      }
      p.models[model] = m;
    }
    t.devices_[device] = std::move(p);
  }
  return t;
}

ProfileTable ProfileTable::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProfileError("cannot open profile file " + path);
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ProfileError(path + ": " + e.what());
  }
}

nlohmann::json ProfileTable::ToJson() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, p] : devices_) {
    nlohmann::json d = nlohmann::json::object();
    for (const auto& [model, m] : p.models) {
      d[model] = m.oom ? nlohmann::json{{"oom", true}}
                       : nlohmann::json{{"mean_ms", m.mean_ms}};
    }
    d["jitter_fraction"] = p.jitter_fraction;
    j[name] = std::move(d);
  }
  return j;
}

const DeviceProfile& ProfileTable::Device(const std::string& name) const {
  auto it = devices_.find(name);
  if (it == devices_.end()) throw ProfileError("unknown device: " + name);
  return it->second;
}

}  // namespace genie::workload
