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

#ifndef GENIE_NODE_TOPIC_CACHE_DB_H_
#define GENIE_NODE_TOPIC_CACHE_DB_H_

#include <list>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "genie/core/content_key.h"
#include "genie/core/types.h"

namespace genie::node {

struct CachedValue {
  std::optional<Message> result;  // empty while the request is in flight
  TimeMs created_at = 0.0;
  TimeMs last_hit = 0.0;
};

// Someone waiting for an answer, and how to reach them.
struct Requester {
  NodeId node;
  Header header;
  // Asked on a "-remote" topic (another Genie) rather than the original.
  bool via_remote = false;
  // Asked point-to-point from a vehicle-side Genie.
  bool from_vehicle = false;
};

// One in-flight (or recently answered) request, keyed by its header.
struct PendingRecord {
  Digest digest;
  std::vector<Requester> requesters;
  TimeMs created_at = 0.0;
  bool answered = false;
};

// Per-topic hashmaps of content digest -> cached result, plus the pending
// index from request headers to digests. Optionally LRU-bounded per topic;
// only filled entries are evicted.
class TopicCacheDB {
 public:
  explicit TopicCacheDB(size_t max_entries_per_topic = 0)
      : max_entries_(max_entries_per_topic) {}

  bool Has(const std::string& topic) const { return maps_.contains(topic); }
  // Creates an empty hashmap for `topic`. Returns false (and changes
  // nothing) when one already exists.
  bool BuildHashMap(const Topic& topic);
  std::optional<PayloadKind> KindOf(const std::string& topic) const;

  CachedValue* Lookup(const std::string& topic, const Digest& d);
  const CachedValue* Lookup(const std::string& topic, const Digest& d) const;
  // Adds `d` with an empty value. Requires that `d` is absent.
  CachedValue& InsertEmpty(const std::string& topic, const Digest& d,
                           TimeMs now);
  // Stores the answer for `d`, evicting the least recently used filled
  // entry if the topic is over its bound. Returns evicted count.
  size_t Fill(const std::string& topic, const Digest& d, Message result);
  void Touch(const std::string& topic, const Digest& d, TimeMs now);
  void Erase(const std::string& topic, const Digest& d);

  // Searches every topic for a pending record with this header.
  std::pair<std::string, PendingRecord*> FindPending(const RequestKey& key);
  PendingRecord* FindPending(const std::string& topic, const RequestKey& key);
  PendingRecord& AddPending(const std::string& topic, const RequestKey& key,
                            const Digest& d, TimeMs now);
  // Keys of the records waiting on `d`.
  std::vector<RequestKey> WaitingOn(const std::string& topic,
                                    const Digest& d) const;
  // Marks every record waiting on `d` answered and returns them in arrival
  // order. The waiting list is cleared.
  std::vector<PendingRecord*> Resolve(const std::string& topic,
                                      const Digest& d);

  // Drops unanswered records older than `timeout` (and their still-empty
  // entries) and answered records past the same horizon. Returns the
  // number of unanswered records that expired.
  size_t Expire(TimeMs now, TimeMs timeout);

  size_t entry_count() const;
  size_t filled_count() const;
  size_t unanswered_count() const { return unanswered_; }
  std::vector<std::string> topics() const;

 private:
  struct Slot {
    CachedValue value;
    std::list<Digest>::iterator lru;  // valid only when filled
    std::vector<RequestKey> waiting;
  };
  struct HashMap {
    PayloadKind kind;
    std::unordered_map<Digest, Slot> entries;
    std::list<Digest> lru;  // front = most recent
    std::unordered_map<RequestKey, PendingRecord> pending;
  };

  HashMap& Map(const std::string& topic);

  size_t max_entries_;
  std::map<std::string, HashMap> maps_;
  size_t unanswered_ = 0;
};

}  // namespace genie::node

#endif  // GENIE_NODE_TOPIC_CACHE_DB_H_
