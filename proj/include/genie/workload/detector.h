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

#ifndef GENIE_WORKLOAD_DETECTOR_H_
#define GENIE_WORKLOAD_DETECTOR_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "genie/core/types.h"
#include "genie/simnet/fabric.h"
#include "genie/workload/device_profile.h"
#include "genie/workload/trace.h"

namespace genie::workload {

class OutOfMemoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ground truths of the frame, moved into the global frame by its pose.
ObjectList DetectObjects(const TraceFrame& frame);

// mean * (1 + u), u ~ U(-jitter, jitter). Throws OutOfMemoryError when the
// model does not fit on the device and ProfileError when it is unknown.
double SampleLatency(const DeviceProfile& profile, const std::string& model,
                     std::mt19937_64& rng);

// Vision detector stub: consumes images, publishes object lists after the
// profiled latency. Output keeps the request header.
class DetectorNode : public simnet::Node {
 public:
  DetectorNode(NodeId self, const Trace* trace, DeviceProfile profile,
               std::string model, uint64_t seed,
               std::string output_topic = "/objects");

  void OnMessage(simnet::Fabric& fabric,
                 const simnet::Delivery& delivery) override;

  const NodeId& self() const { return self_; }
  uint64_t invocations() const { return invocations_; }
  uint64_t failures() const { return failures_; }

 private:
  NodeId self_;
  const Trace* trace_;
  DeviceProfile profile_;
  std::string model_;
  std::string output_topic_;
  std::mt19937_64 rng_;
  uint64_t invocations_ = 0;
  uint64_t failures_ = 0;
};

}  // namespace genie::workload

#endif  // GENIE_WORKLOAD_DETECTOR_H_
