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

#ifndef GENIE_WORKLOAD_DEVICE_PROFILE_H_
#define GENIE_WORKLOAD_DEVICE_PROFILE_H_

#include <map>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace genie::workload {

class ProfileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelLatency {
  double mean_ms = 0.0;
  bool oom = false;
};

struct DeviceProfile {
  std::string device;
  std::map<std::string, ModelLatency> models;
  double jitter_fraction = 0.05;

  // Throws ProfileError if the model is missing.
  const ModelLatency& Model(const std::string& model) const;
};

// Device name -> profile.
class ProfileTable {
 public:
  // Measured detector runtimes (ms) for Nano, AGX, Orin and A4500.
  static ProfileTable Default();

  // {"<device>": {"<model>": {"mean_ms": f} | {"oom": true}, ...,
  //               "jitter_fraction": f (optional)}}
  static ProfileTable FromJson(const nlohmann::json& j);
  static ProfileTable Load(const std::string& path);
  nlohmann::json ToJson() const;

  const DeviceProfile& Device(const std::string& name) const;
  bool HasDevice(const std::string& name) const {
    return devices_.contains(name);
  }
  const std::map<std::string, DeviceProfile>& devices() const {
    return devices_;
  }

 private:
  std::map<std::string, DeviceProfile> devices_;
};

}  // namespace genie::workload

#endif  // GENIE_WORKLOAD_DEVICE_PROFILE_H_
