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

#ifndef GENIE_NODE_GENIE_CACHE_H_
#define GENIE_NODE_GENIE_CACHE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "genie/core/content_key.h"
#include "genie/core/types.h"
#include "genie/node/encapsulation.h"
#include "genie/node/topic_cache_db.h"
#include "genie/objectmap/object_map.h"
#include "json.hpp"

namespace genie::node {

enum class GenieRole {
  kLocal,    // on a vehicle, encapsulating its detector
  kRemote,   // on the edge, encapsulating an edge detector
  kPhantom,  // no encapsulated node; forwards and caches only
};

std::string_view ToString(GenieRole role);

struct GenieCounters {
  uint64_t requests = 0;
  uint64_t hits = 0;
  uint64_t misses = 0;
  uint64_t remote_answers = 0;
  uint64_t local_answers = 0;
  uint64_t pending_peak = 0;
  uint64_t duplicates = 0;
  uint64_t coalesced = 0;
  uint64_t cache_only_drops = 0;
  uint64_t expired = 0;
  uint64_t evicted = 0;
  uint64_t dropped = 0;
  uint64_t local_forwards = 0;
  uint64_t remote_forwards = 0;

  double imgrr() const {
    return requests == 0 ? 0.0 : static_cast<double>(hits) / requests;
  }
  nlohmann::json ToJson() const;
};

struct GenieOptions {
  GenieRole role = GenieRole::kLocal;
  // Vehicle-side Genies upload "-remote" traffic to this edge Genie; edge
  // Genies leave it empty and broadcast instead.
  std::optional<NodeId> upstream;
  // Charged on a request before forwarding or answering from cache.
  double lookup_ms = 4.4;
  // Charged before publishing a stored or freshly arrived answer.
  double respond_ms = 4.4;
  // When false every lookup misses; answers are still routed.
  bool caching_enabled = true;
  size_t max_entries = 0;  // per topic, 0 = unbounded
  TimeMs pending_timeout_ms = 5000.0;
  // Apply the confidence threshold to whole payloads returned from the edge
  // to a vehicle, not just to object-map additions.
  bool strict_share_filter = false;
  objectmap::ObjectMapOptions objectmap;
  // Whether a miss is also published on "-remote". `via_broadcast` is true
  // when the request itself came over the edge broadcast. Default: forward
  // everything except broadcast arrivals, which every peer already has.
  std::function<bool(const Message&, bool via_broadcast)> publish_remote;

  // Splits a hit-path overhead evenly between lookup and respond.
  void SetOverhead(double hit_path_ms) {
    lookup_ms = hit_path_ms / 2.0;
    respond_ms = hit_path_ms / 2.0;
  }
};

struct PublishAction {
  Message message;
  TimeMs at = 0.0;
  std::optional<NodeId> destination;  // empty = topic fan-out
};

enum class Branch {
  kAnswer,           // filled a pending entry
  kDuplicateAnswer,  // answer for an already answered request
  kMiss,             // forwarded to -local / -remote
  kCoalesced,        // attached to an in-flight entry
  kHit,              // served from cache
  kCacheOnlyDrop,    // cache-only request that missed
  kDropped,          // malformed or unknown topic
};

std::string_view ToString(Branch b);

struct ArrivalResult {
  Branch branch = Branch::kDropped;
  std::vector<PublishAction> actions;
  std::vector<objectmap::BoostRecord> boosts;
  bool new_pending = false;
};

// Observed on every cache hit, for oracle checks.
struct HitEvent {
  TimeMs time = 0.0;
  Digest digest;
  Message request;
  Message stored;
  ObjectList delivered;  // payload after boost-on-return, if objects
};

// The Genie's caching state machine (message-keyed cache plus object map),
// independent of the fabric. All mutation happens inside
// OnMessageArrival / ExpirePending.
class GenieCache {
 public:
  GenieCache(NodeId self, Encapsulation enc, GenieOptions options);

  // Handles one delivered message. `sender` and `directed` come from the
  // fabric delivery; publish times in the result are absolute.
  ArrivalResult OnMessageArrival(const Message& m, const NodeId& sender,
                                 bool directed, TimeMs now);

  // Returns the number of pending requests that timed out.
  size_t ExpirePending(TimeMs now);

  const NodeId& self() const { return self_; }
  GenieRole role() const { return options_.role; }
  const GenieOptions& options() const { return options_; }
  const Encapsulation& encapsulation() const { return enc_; }
  const TopicCacheDB& db() const { return db_; }
  const objectmap::ObjectMapStore& object_map() const { return map_; }
  const GenieCounters& counters() const { return counters_; }
  const std::vector<objectmap::BoostRecord>& boost_log() const {
    return boost_log_;
  }
  bool on_vehicle() const { return options_.upstream.has_value(); }

  void set_hit_observer(std::function<void(const HitEvent&)> fn) {
    hit_observer_ = std::move(fn);
  }

  // Counters plus object-map statistics.
  nlohmann::json StatsJson() const;

 private:
  ArrivalResult HandleAnswer(const std::string& request_topic,
                             PendingRecord& record, const Message& answer,
                             bool from_local, TimeMs now);
  ArrivalResult HandleRequest(const Message& request, const NodeId& sender,
                              bool via_remote, bool directed, TimeMs now);
  PublishAction Reply(const Requester& to, const Message& result,
                      const Payload& payload, TimeMs at) const;
  Payload ShareWithVehicle(const Payload& payload) const;
  void NotePending();

  NodeId self_;
  Encapsulation enc_;
  GenieOptions options_;
  TopicCacheDB db_;
  objectmap::ObjectMapStore map_;
  GenieCounters counters_;
  std::vector<objectmap::BoostRecord> boost_log_;
  std::function<void(const HitEvent&)> hit_observer_;
};

}  // namespace genie::node

#endif  // GENIE_NODE_GENIE_CACHE_H_
