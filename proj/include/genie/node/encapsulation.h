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

#ifndef GENIE_NODE_ENCAPSULATION_H_
#define GENIE_NODE_ENCAPSULATION_H_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "genie/core/types.h"
#include "genie/simnet/fabric.h"

namespace genie::node {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// What a node subscribes to and publishes. `inner` is empty for phantom
// Genies, which expose the same surface without an encapsulated node.
struct NodeDescription {
  std::optional<NodeId> inner;
  std::vector<Topic> subscribed;
  std::vector<Topic> published;
};

// Reads a registered node's topics off the fabric.
NodeDescription DescribeNode(const simnet::Fabric& fabric, const NodeId& inner);

struct Encapsulation {
  std::optional<NodeId> inner_node;
  std::vector<Topic> subscribed;  // requests into the inner node
  std::vector<Topic> published;   // answers out of the inner node
  std::map<std::string, std::string> rewritten;  // original -> "-local"
  std::set<std::string> exposed_remote;

  const Topic* FindTopic(const std::string& base_name) const;
  bool IsRequestTopic(const std::string& base_name) const;
  bool IsAnswerTopic(const std::string& base_name) const;
};

// Plans the rewrite. Throws ConfigError when a declared topic already
// carries a "-local"/"-remote" suffix or appears on both sides.
Encapsulation Encapsulate(const NodeDescription& description);

// Applies the plan: the inner node is remapped onto "-local" names and
// paired with the Genie; the Genie takes over the original request topics
// and listens on "-local" answers and all "-remote" topics. Genies on the
// edge network listen to "-remote" as edge broadcast.
void Install(simnet::Fabric& fabric, const NodeId& genie,
             const Encapsulation& enc);

}  // namespace genie::node

#endif  // GENIE_NODE_ENCAPSULATION_H_
