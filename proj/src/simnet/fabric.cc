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

#include "genie/simnet/fabric.h"

#include <algorithm>

#include "json.hpp"

namespace genie::simnet {

std::string LogRecord::ToJsonLine() const {
  nlohmann::ordered_json j;
  j["time_ms"] = time_ms;
  j["from"] = from;
  j["to"] = to;
  j["topic"] = topic;
  j["seq"] = seq;
  return j.dump();
}

void WriteLogJsonLines(std::ostream& os, std::span<const LogRecord> records) {
  for (const auto& r : records) os << r.ToJsonLine() << '\n';
}

Fabric::Fabric(FabricOptions options)
    : options_(std::move(options)), rng_(options_.seed) {}

void Fabric::AddNode(const NodeId& id, std::unique_ptr<Node> node,
                     std::string site) {
  if (nodes_.contains(id)) {
    throw TopologyError("node already registered: " + id.ToString());
  }
  NodeEntry entry;
  entry.node = std::move(node);
  entry.site = site.empty() ? id.network : std::move(site);
  nodes_.emplace(id, std::move(entry));
}

Fabric::NodeEntry& Fabric::Entry(const NodeId& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw UnknownNodeError("unknown node: " + id.ToString());
  return it->second;
}

const Fabric::NodeEntry& Fabric::Entry(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw UnknownNodeError("unknown node: " + id.ToString());
  return it->second;
}

Node& Fabric::node(const NodeId& id) { return *Entry(id).node; }

const std::string& Fabric::SiteOf(const NodeId& id) const {
  return Entry(id).site;
}

const Fabric::Subscription* Fabric::FindSubscription(
    const NodeEntry& e, const std::string& name) const {
  for (const auto& s : e.subscriptions) {
    if (s.topic.name == name) return &s;
  }
  return nullptr;
}

void Fabric::Subscribe(const NodeId& id, const Topic& topic, Scope scope) {
  NodeEntry& e = Entry(id);
  if (topic.name.empty()) throw TopologyError("empty topic name");
  if (FindSubscription(e, topic.name) != nullptr) {
    throw TopologyError(id.ToString() + " already subscribes to " + topic.name);
  }
  e.subscriptions.push_back({topic, scope});
  subscribers_[topic.name].push_back(id);
}

void Fabric::Advertise(const NodeId& id, const Topic& topic) {
  NodeEntry& e = Entry(id);
  for (const auto& t : e.advertised) {
    if (t.name == topic.name) return;
  }
  e.advertised.push_back(topic);
}

std::vector<Topic> Fabric::SubscriptionsOf(const NodeId& id) const {
  std::vector<Topic> out;
  for (const auto& s : Entry(id).subscriptions) out.push_back(s.topic);
  return out;
}

std::vector<Topic> Fabric::AdvertisementsOf(const NodeId& id) const {
  const NodeEntry& e = Entry(id);
  std::vector<Topic> out;
  for (Topic t : e.advertised) {
    if (auto it = e.remaps.find(t.name); it != e.remaps.end()) t.name = it->second;
    out.push_back(std::move(t));
  }
  return out;
}

bool Fabric::IsSubscribed(const NodeId& id, const std::string& name) const {
  return FindSubscription(Entry(id), name) != nullptr;
}

void Fabric::Remap(const NodeId& id, const std::string& from,
                   const std::string& to) {
  NodeEntry& e = Entry(id);
  if (e.remaps.contains(from)) {
    throw TopologyError(id.ToString() + ": topic " + from + " already remapped");
  }
  e.remaps[from] = to;
  for (auto& s : e.subscriptions) {
    if (s.topic.name != from) continue;
    if (FindSubscription(e, to) != nullptr) {
      throw TopologyError(id.ToString() + " already subscribes to " + to);
    }
    auto& subs = subscribers_[from];
    subs.erase(std::remove(subs.begin(), subs.end(), id), subs.end());
    s.topic.name = to;
    subscribers_[to].push_back(id);
  }
}

void Fabric::Pair(const NodeId& a, const NodeId& b) {
  NodeEntry& ea = Entry(a);
  NodeEntry& eb = Entry(b);
  if (ea.partner || eb.partner) {
    throw TopologyError("node already paired: " + a.ToString() + " / " +
                        b.ToString());
  }
  ea.partner = b;
  eb.partner = a;
}

void Fabric::SetLink(const Link& link) {
  if (link.latency_ms < 0 || link.jitter_ms < 0) {
    throw TopologyError("link latency and jitter must be non-negative");
  }
  links_[{link.from, link.to}] = link;
}

double Fabric::DelayBetween(const std::string& from_site,
                            const std::string& to_site) {
  double latency = options_.default_link_latency_ms;
  double jitter = options_.default_link_jitter_ms;
  if (from_site == to_site) {
    latency = options_.intra_latency_ms;
    jitter = 0.0;
  }
  auto it = links_.find({from_site, to_site});
  if (it == links_.end()) it = links_.find({to_site, from_site});
  if (it != links_.end()) {
    latency = it->second.latency_ms;
    jitter = it->second.jitter_ms;
  }
  if (jitter > 0.0) {
    latency += std::uniform_real_distribution<double>(0.0, jitter)(rng_);
  }
  return latency;
}

size_t Fabric::Publish(const NodeId& sender, Message message, TimeMs at,
                       const std::optional<NodeId>& destination) {
  NodeEntry& src = Entry(sender);
  if (at < now()) {
    throw CausalityError("publish at " + std::to_string(at) +
                         " before clock " + std::to_string(now()));
  }
  if (auto it = src.remaps.find(message.topic.name); it != src.remaps.end()) {
    message.topic.name = it->second;
  }
  const std::string& name = message.topic.name;

  std::vector<NodeId> targets;
  if (destination) {
    if (IsSubscribed(*destination, name)) targets.push_back(*destination);
  } else if (IsLocalName(name)) {
    if (src.partner && IsSubscribed(*src.partner, name)) {
      targets.push_back(*src.partner);
    }
  } else if (auto it = subscribers_.find(name); it != subscribers_.end()) {
    for (const NodeId& sub : it->second) {
      if (sub == sender) continue;
      const Subscription* s = FindSubscription(Entry(sub), name);
      if (s->scope == Scope::kIntraNetwork) {
        if (sub.network == sender.network) targets.push_back(sub);
      } else if (sender.network == options_.edge_network &&
                 sub.network == options_.edge_network) {
        targets.push_back(sub);
      }
    }
  }

  for (const NodeId& to : targets) {
    const TimeMs due = at + DelayBetween(src.site, Entry(to).site);
    Deliver(sender, to, message, due, destination.has_value());
  }
  return targets.size();
}

void Fabric::Deliver(const NodeId& from, const NodeId& to,
                     const Message& message, TimeMs due, bool directed) {
  queue_.Push(due, [this, from, to, message, due, directed]() {
    LogRecord rec{due, from.ToString(), to.ToString(), message.topic.name,
                  message.header.seq};
    if (options_.keep_log) log_.push_back(rec);
    if (run_sink_ != nullptr) run_sink_->push_back(rec);
    Delivery d{due, from, to, message, directed};
    Entry(to).node->OnMessage(*this, d);
  });
}

void Fabric::Schedule(TimeMs at, std::function<void(Fabric&)> fn) {
  if (at < now()) {
    throw CausalityError("schedule at " + std::to_string(at) +
                         " before clock " + std::to_string(now()));
  }
  queue_.Push(at, [this, fn = std::move(fn)]() { fn(*this); });
}

void Fabric::RunNext(std::vector<LogRecord>* out) {
  run_sink_ = out;
  auto cb = queue_.Pop();
  cb();
  run_sink_ = nullptr;
}

std::vector<LogRecord> Fabric::RunUntil(TimeMs t_end) {
  std::vector<LogRecord> out;
  while (!queue_.empty() && queue_.NextDue() <= t_end) RunNext(&out);
  queue_.AdvanceTo(t_end);
  return out;
}

std::vector<LogRecord> Fabric::RunAll() {
  std::vector<LogRecord> out;
  while (!queue_.empty()) RunNext(&out);
  return out;
}

}  // namespace genie::simnet
