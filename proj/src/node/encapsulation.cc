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

#include "genie/node/encapsulation.h"

#include <algorithm>

namespace genie::node {

NodeDescription DescribeNode(const simnet::Fabric& fabric,
                             const NodeId& inner) {
  return {inner, fabric.SubscriptionsOf(inner), fabric.AdvertisementsOf(inner)};
}

const Topic* Encapsulation::FindTopic(const std::string& base) const {
  for (const auto* side : {&subscribed, &published}) {
    for (const auto& t : *side) {
      if (t.name == base) return &t;
    }
  }
  return nullptr;
}

bool Encapsulation::IsRequestTopic(const std::string& base) const {
  return std::any_of(subscribed.begin(), subscribed.end(),
                     [&](const Topic& t) { return t.name == base; });
}

bool Encapsulation::IsAnswerTopic(const std::string& base) const {
  return std::any_of(published.begin(), published.end(),
                     [&](const Topic& t) { return t.name == base; });
}

Encapsulation Encapsulate(const NodeDescription& d) {
  Encapsulation enc;
  enc.inner_node = d.inner;
  auto take = [&](const std::vector<Topic>& in, std::vector<Topic>& out) {
    for (const Topic& t : in) {
      if (t.name.empty()) throw ConfigError("empty topic name");
      if (IsLocalName(t.name) || IsRemoteName(t.name)) {
        throw ConfigError("topic already rewritten: " + t.name);
      }
      if (enc.rewritten.contains(t.name)) {
        throw ConfigError("topic declared twice: " + t.name);
      }
      enc.rewritten[t.name] = LocalName(t.name);
      enc.exposed_remote.insert(RemoteName(t.name));
      out.push_back(t);
    }
  };
  take(d.subscribed, enc.subscribed);
  take(d.published, enc.published);
  return enc;
}

void Install(simnet::Fabric& fabric, const NodeId& genie,
             const Encapsulation& enc) {
  const bool on_edge = genie.network == fabric.options().edge_network;
  const auto remote_scope =
      on_edge ? simnet::Scope::kEdgeBroadcast : simnet::Scope::kIntraNetwork;
  try {
    if (enc.inner_node) {
      for (const auto& [from, to] : enc.rewritten) {
        fabric.Remap(*enc.inner_node, from, to);
      }
      fabric.Pair(genie, *enc.inner_node);
    }
    for (const Topic& t : enc.subscribed) {
      fabric.Subscribe(genie, t);
      fabric.Subscribe(genie, {RemoteName(t.name), t.kind}, remote_scope);
      fabric.Advertise(genie, {RemoteName(t.name), t.kind});
      if (enc.inner_node) fabric.Advertise(genie, {LocalName(t.name), t.kind});
    }
    for (const Topic& t : enc.published) {
      if (enc.inner_node) {
        fabric.Subscribe(genie, {LocalName(t.name), t.kind});
      }
      fabric.Subscribe(genie, {RemoteName(t.name), t.kind}, remote_scope);
      fabric.Advertise(genie, t);
      fabric.Advertise(genie, {RemoteName(t.name), t.kind});
    }
  } catch (const simnet::TopologyError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace genie::node
