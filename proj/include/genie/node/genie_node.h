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

#ifndef GENIE_NODE_GENIE_NODE_H_
#define GENIE_NODE_GENIE_NODE_H_

#include <optional>
#include <string>
#include <vector>

#include "genie/node/genie_cache.h"
#include "genie/simnet/fabric.h"

namespace genie::node {

// Fabric adapter around GenieCache: executes publish actions and arms the
// pending-expiry timer.
class GenieNode : public simnet::Node {
 public:
  GenieNode(NodeId self, Encapsulation enc, GenieOptions options)
      : cache_(std::move(self), std::move(enc), std::move(options)) {}

  void OnMessage(simnet::Fabric& fabric,
                 const simnet::Delivery& delivery) override;

  GenieCache& cache() { return cache_; }
  const GenieCache& cache() const { return cache_; }
  // Branch taken for every delivery, in order.
  const std::vector<Branch>& branches() const { return branches_; }

 private:
  GenieCache cache_;
  std::vector<Branch> branches_;
};

// Registers a Genie at `id` and encapsulates `inner` (introspected from the
// fabric). For a phantom Genie pass no inner node and the declared topic
// surface instead.
GenieNode& InstallGenie(simnet::Fabric& fabric, const NodeId& id,
                        std::string site, const std::optional<NodeId>& inner,
                        GenieOptions options,
                        const NodeDescription& phantom_surface = {});

}  // namespace genie::node

#endif  // GENIE_NODE_GENIE_NODE_H_
