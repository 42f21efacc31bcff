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

#include "genie/workload/detector.h"

#include "genie/core/content_key.h"
#include "genie/core/geometry.h"

namespace genie::workload {

ObjectList DetectObjects(const TraceFrame& frame) {
  ObjectList out;
  out.objects.reserve(frame.truths.size());
  for (const auto& g : frame.truths) {
    DetectedObject o;
    o.label = g.label;
    o.confidence = g.conf;
    o.location = TranslateLocation(g.loc, frame.pose);
    o.extent = g.extent;
    out.objects.push_back(std::move(o));
  }
  return out;
}

double SampleLatency(const DeviceProfile& profile, const std::string& model,
                     std::mt19937_64& rng) {
  const ModelLatency& m = profile.Model(model);
  if (m.oom) {
    throw OutOfMemoryError(model + " does not fit on " + profile.device);
  }
  const double j = profile.jitter_fraction;
  if (j <= 0) return m.mean_ms;
  std::uniform_real_distribution<double> u(-j, j);
  return m.mean_ms * (1.0 + u(rng));
}

DetectorNode::DetectorNode(NodeId self, const Trace* trace,
                           DeviceProfile profile, std::string model,
                           uint64_t seed, std::string output_topic)
    : self_(std::move(self)),
      trace_(trace),
      profile_(std::move(profile)),
      model_(std::move(model)),
      output_topic_(std::move(output_topic)),
      rng_(Fnv1a64(self_.ToString(), seed)) {}

void DetectorNode::OnMessage(simnet::Fabric& fabric,
                             const simnet::Delivery& delivery) {
  const auto* image = std::get_if<ImageRef>(&delivery.message.payload);
  if (image == nullptr) return;
  ++invocations_;
  const TraceFrame* frame = trace_ ? trace_->FindImage(image->id) : nullptr;
  if (frame == nullptr) {
    ++failures_;
    return;
  }
  double latency;
  try {
    latency = SampleLatency(profile_, model_, rng_);
  } catch (const OutOfMemoryError&) {
    ++failures_;
    return;
  }
  Message out;
  out.header = delivery.message.header;
  out.topic = Topic{output_topic_, PayloadKind::kObjects};
  out.payload = DetectObjects(*frame);
  fabric.Publish(self_, std::move(out), delivery.time + latency);
}

}  // namespace genie::workload
