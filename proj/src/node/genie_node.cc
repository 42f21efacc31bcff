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

#include "genie/node/genie_node.h"

namespace genie::node {

void GenieNode::OnMessage(simnet::Fabric& fabric,
                          const simnet::Delivery& delivery) {
  ArrivalResult r = cache_.OnMessageArrival(delivery.message, delivery.from,
                                            delivery.directed, delivery.time);
  branches_.push_back(r.branch);
  for (auto& a : r.actions) {
    fabric.Publish(cache_.self(), std::move(a.message), a.at, a.destination);
  }
  if (r.new_pending) {
    fabric.Schedule(delivery.time + cache_.options().pending_timeout_ms,
                    [this](simnet::Fabric& f) { cache_.ExpirePending(f.now()); });
  }
}

GenieNode& InstallGenie(simnet::Fabric& fabric, const NodeId& id,
                        std::string site, const std::optional<NodeId>& inner,
                        GenieOptions options,
                        const NodeDescription& phantom_surface) {
  NodeDescription desc = inner ? DescribeNode(fabric, *inner) : phantom_surface;
  desc.inner = inner;
  Encapsulation enc = Encapsulate(desc);
  auto& genie =
      fabric.Emplace<GenieNode>(id, std::move(site), id, enc, std::move(options));
  Install(fabric, id, enc);
  return genie;
}

}  // namespace genie::node
