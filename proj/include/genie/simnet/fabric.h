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

#ifndef GENIE_SIMNET_FABRIC_H_
#define GENIE_SIMNET_FABRIC_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "genie/core/types.h"
#include "genie/simnet/event_queue.h"

namespace genie::simnet {

class Fabric;

enum class Scope {
  // Delivered to subscribers in the publisher's own virtual network.
  kIntraNetwork,
  // Delivered to every subscriber on the edge network when the publisher is
  // itself on the edge network.
  kEdgeBroadcast,
};

// Latency between two sites (machines). Jitter is uniform in [0, jitter_ms).
struct Link {
  std::string from;
  std::string to;
  double latency_ms = 0.0;
  double jitter_ms = 0.0;
};

struct Delivery {
  TimeMs time = 0.0;  // arrival time
  NodeId from;
  NodeId to;
  Message message;
  // True for point-to-point sends, false for topic fan-out.
  bool directed = false;
};

// One line of the delivery log.
struct LogRecord {
  TimeMs time_ms = 0.0;
  std::string from;
  std::string to;
  std::string topic;
  uint64_t seq = 0;

  std::string ToJsonLine() const;
  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

void WriteLogJsonLines(std::ostream& os, std::span<const LogRecord> records);

class Node {
 public:
  virtual ~Node() = default;
  // Runs to completion inside the event loop.
  virtual void OnMessage(Fabric& fabric, const Delivery& delivery) = 0;
};

class UnknownNodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CausalityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FabricOptions {
  std::string edge_network = "EDGE";
  double intra_latency_ms = 0.0;
  // Applied between two sites with no explicit Link.
  double default_link_latency_ms = 0.0;
  double default_link_jitter_ms = 0.0;
  uint64_t seed = 42;
  bool keep_log = true;
};

// Deterministic single-threaded pub/sub fabric driven by a discrete event
// queue. Not thread-safe; independent fabrics may run on separate threads.
class Fabric {
 public:
  explicit Fabric(FabricOptions options = {});

  Fabric(const Fabric&) = delete;
  Fabric& operator=(const Fabric&) = delete;

  // Registers a node. `site` is the machine hosting it, which determines
  // link latency; it defaults to the node's network.
  void AddNode(const NodeId& id, std::unique_ptr<Node> node,
               std::string site = {});

  template <typename T, typename... Args>
  T& Emplace(const NodeId& id, std::string site, Args&&... args) {
    auto owned = std::make_unique<T>(std::forward<Args>(args)...);
    T& ref = *owned;
    AddNode(id, std::move(owned), std::move(site));
    return ref;
  }

  bool HasNode(const NodeId& id) const { return nodes_.contains(id); }
  Node& node(const NodeId& id);
  const std::string& SiteOf(const NodeId& id) const;

  // At most one subscription per (node, topic name).
  void Subscribe(const NodeId& id, const Topic& topic,
                 Scope scope = Scope::kIntraNetwork);
  void Advertise(const NodeId& id, const Topic& topic);

  // Topics as currently wired (after remapping).
  std::vector<Topic> SubscriptionsOf(const NodeId& id) const;
  std::vector<Topic> AdvertisementsOf(const NodeId& id) const;
  bool IsSubscribed(const NodeId& id, const std::string& topic_name) const;

  // Renames `from` to `to` for both the node's subscriptions and its
  // publications, without the node's cooperation.
  void Remap(const NodeId& id, const std::string& from, const std::string& to);

  // Binds a Genie to its encapsulated node: "-local" traffic published by
  // either is delivered only to the other.
  void Pair(const NodeId& a, const NodeId& b);

  void SetLink(const Link& link);

  // Schedules delivery of `message` to every matching subscriber (or only
  // to `destination` if given) and returns the number of deliveries.
  // Throws UnknownNodeError for an unregistered sender and CausalityError
  // when `at` lies in the past.
  size_t Publish(const NodeId& sender, Message message, TimeMs at,
                 const std::optional<NodeId>& destination = std::nullopt);

  void Schedule(TimeMs at, std::function<void(Fabric&)> fn);

  // Processes every event due at or before `t_end` and returns the
  // deliveries made. The clock ends at `t_end`.
  std::vector<LogRecord> RunUntil(TimeMs t_end);
  // Runs until the queue drains.
  std::vector<LogRecord> RunAll();

  TimeMs now() const { return queue_.clock(); }
  size_t pending_events() const { return queue_.size(); }
  const std::vector<LogRecord>& log() const { return log_; }
  const FabricOptions& options() const { return options_; }

 private:
  struct Subscription {
    Topic topic;
    Scope scope;
  };
  struct NodeEntry {
    std::unique_ptr<Node> node;
    std::string site;
    std::vector<Subscription> subscriptions;
    std::vector<Topic> advertised;
    std::map<std::string, std::string> remaps;
    std::optional<NodeId> partner;
  };

  NodeEntry& Entry(const NodeId& id);
  const NodeEntry& Entry(const NodeId& id) const;
  const Subscription* FindSubscription(const NodeEntry& e,
                                       const std::string& name) const;
  double DelayBetween(const std::string& from_site, const std::string& to_site);
  void Deliver(const NodeId& from, const NodeId& to, const Message& message,
               TimeMs due, bool directed);
  void RunNext(std::vector<LogRecord>* out);

  FabricOptions options_;
  EventQueue queue_;
  std::mt19937_64 rng_;
  std::map<NodeId, NodeEntry> nodes_;
  // Topic name -> subscribers in subscription order.
  std::map<std::string, std::vector<NodeId>> subscribers_;
  std::map<std::pair<std::string, std::string>, Link> links_;
  std::vector<LogRecord> log_;
  std::vector<LogRecord>* run_sink_ = nullptr;
};

}  // namespace genie::simnet

#endif  // GENIE_SIMNET_FABRIC_H_
