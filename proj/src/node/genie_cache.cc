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

#include "genie/node/genie_cache.h"

#include <algorithm>

#include "spdlog/spdlog.h"

namespace genie::node {

std::string_view ToString(GenieRole role) {
  switch (role) {
    case GenieRole::kLocal:
      return "local";
    case GenieRole::kRemote:
      return "remote";
    case GenieRole::kPhantom:
      return "phantom";
  }
  return "unknown";
}

std::string_view ToString(Branch b) {
  switch (b) {
    case Branch::kAnswer:
      return "answer";
    case Branch::kDuplicateAnswer:
      return "duplicate_answer";
    case Branch::kMiss:
      return "miss";
    case Branch::kCoalesced:
      return "coalesced";
    case Branch::kHit:
      return "hit";
    case Branch::kCacheOnlyDrop:
      return "cache_only_drop";
    case Branch::kDropped:
      return "dropped";
  }
  return "unknown";
}

nlohmann::json GenieCounters::ToJson() const {
  return {{"requests", requests},
          {"hits", hits},
          {"misses", misses},
          {"remote_answers", remote_answers},
          {"local_answers", local_answers},
          {"pending_peak", pending_peak},
          {"duplicates", duplicates},
          {"coalesced", coalesced},
          {"cache_only_drops", cache_only_drops},
          {"expired", expired},
          {"evicted", evicted},
          {"dropped", dropped},
          {"local_forwards", local_forwards},
          {"remote_forwards", remote_forwards}};
}

GenieCache::GenieCache(NodeId self, Encapsulation enc, GenieOptions options)
    : self_(std::move(self)),
      enc_(std::move(enc)),
      options_(std::move(options)),
      db_(options_.max_entries),
      map_(options_.objectmap) {
  if (options_.role == GenieRole::kPhantom && enc_.inner_node) {
    throw ConfigError("phantom Genie cannot encapsulate a node");
  }
  if (options_.role != GenieRole::kPhantom && !enc_.inner_node) {
    throw ConfigError("non-phantom Genie needs an encapsulated node");
  }
  if (!options_.publish_remote) {
    options_.publish_remote = [](const Message&, bool via_broadcast) {
      return !via_broadcast;
    };
  }
}

void GenieCache::NotePending() {
  counters_.pending_peak =
      std::max<uint64_t>(counters_.pending_peak, db_.unanswered_count());
}

ArrivalResult GenieCache::OnMessageArrival(const Message& m,
                                           const NodeId& sender, bool directed,
                                           TimeMs now) {
  if (!m.WellFormed()) {
    ++counters_.dropped;
    spdlog::warn("{}: dropping message on {} with {} payload", self_.ToString(),
                 m.topic.name, ToString(KindOf(m.payload)));
    return {};
  }
  const std::string base = BaseName(m.topic.name);
  if (enc_.FindTopic(base) == nullptr) {
    ++counters_.dropped;
    spdlog::warn("{}: dropping message on undeclared topic {}",
                 self_.ToString(), m.topic.name);
    return {};
  }
  const bool via_remote = IsRemoteName(m.topic.name);
  Message normalized = m;
  normalized.topic.name = base;

  if (enc_.IsAnswerTopic(base)) {
    auto [request_topic, record] =
        db_.FindPending(RequestKey::Of(m.header));
    if (record != nullptr) {
      return HandleAnswer(request_topic, *record, normalized, !via_remote,
                          now);
    }
  }
  return HandleRequest(normalized, sender, via_remote, directed, now);
}

ArrivalResult GenieCache::HandleAnswer(const std::string& request_topic,
                                       PendingRecord& record,
                                       const Message& answer, bool from_local,
                                       TimeMs now) {
  ArrivalResult out;
  if (from_local) {
    ++counters_.local_answers;
  } else {
    ++counters_.remote_answers;
  }
  const TimeMs at = now + options_.respond_ms;

  CachedValue* entry = db_.Lookup(request_topic, record.digest);
  if (entry != nullptr && !entry->result) {
    out.branch = Branch::kAnswer;
    out.boosts = map_.NewData(answer, now);
    boost_log_.insert(boost_log_.end(), out.boosts.begin(), out.boosts.end());
    const Digest digest = record.digest;
    for (PendingRecord* waiting : db_.Resolve(request_topic, digest)) {
      for (const Requester& r : waiting->requesters) {
        out.actions.push_back(Reply(r, answer, answer.payload, at));
      }
    }
    counters_.evicted += db_.Fill(request_topic, digest, answer);
    return out;
  }

  // Already answered (or evicted): only consumers on the original topic
  // see the late copy, and they deduplicate it.
  out.branch = Branch::kDuplicateAnswer;
  ++counters_.duplicates;
  for (const Requester& r : record.requesters) {
    if (!r.via_remote) out.actions.push_back(Reply(r, answer, answer.payload, at));
  }
  return out;
}

ArrivalResult GenieCache::HandleRequest(const Message& request,
                                        const NodeId& sender, bool via_remote,
                                        bool directed, TimeMs now) {
  ArrivalResult out;
  const std::string& topic = request.topic.name;
  ++counters_.requests;
  db_.BuildHashMap(request.topic);

  const RequestKey key = RequestKey::Of(request.header);
  const Requester requester{sender, request.header, via_remote,
                            via_remote && directed};
  const Digest digest = ContentKey(request);
  CachedValue* entry = db_.Lookup(topic, digest);

  if (entry != nullptr && entry->result && options_.caching_enabled) {
    out.branch = Branch::kHit;
    ++counters_.hits;
    db_.Touch(topic, digest, now);
    const Message& stored = *entry->result;
    Payload payload = stored.payload;
    if (const auto* list = std::get_if<ObjectList>(&stored.payload)) {
      payload = map_.BoostData(*list);
    }
    PublishAction action = Reply(requester, stored, payload,
                                 now + options_.lookup_ms + options_.respond_ms);
    if (hit_observer_) {
      HitEvent ev{now, digest, request, stored, {}};
      if (const auto* l = std::get_if<ObjectList>(&action.message.payload)) {
        ev.delivered = *l;
      }
      hit_observer_(ev);
    }
    out.actions.push_back(std::move(action));
    return out;
  }

  ++counters_.misses;

  if (entry != nullptr && !entry->result) {
    out.branch = Branch::kCoalesced;
    ++counters_.coalesced;
    PendingRecord* rec = db_.FindPending(topic, key);
    if (rec == nullptr) {
      rec = &db_.AddPending(topic, key, digest, now);
      out.new_pending = true;
      NotePending();
    }
    auto& rs = rec->requesters;
    const bool known = std::any_of(rs.begin(), rs.end(), [&](const auto& r) {
      return r.node == sender && r.header.seq == request.header.seq;
    });
    if (!known) rs.push_back(requester);
    return out;
  }

  if (request.cache_only && options_.role != GenieRole::kPhantom) {
    out.branch = Branch::kCacheOnlyDrop;
    ++counters_.cache_only_drops;
    return out;
  }

  // A miss nobody will be asked about can never be answered; keeping a
  // pending entry would only trap later requests behind it.
  const bool forward_local = options_.role != GenieRole::kPhantom;
  const bool via_broadcast = via_remote && !directed;
  const bool forward_remote = options_.publish_remote(request, via_broadcast);
  if (!forward_local && !forward_remote) {
    out.branch = Branch::kCacheOnlyDrop;
    ++counters_.cache_only_drops;
    return out;
  }

  // Forced miss on a filled entry (caching disabled): start over.
  if (entry != nullptr) db_.Erase(topic, digest);
  if (db_.FindPending(topic, key) != nullptr) {
    // Same request seen again after its answer; nothing new to forward.
    out.branch = Branch::kCoalesced;
    ++counters_.coalesced;
    return out;
  }

  out.branch = Branch::kMiss;
  db_.InsertEmpty(topic, digest, now);
  db_.AddPending(topic, key, digest, now).requesters.push_back(requester);
  out.new_pending = true;
  NotePending();

  const TimeMs at = now + options_.lookup_ms;
  if (forward_local) {
    Message fwd = request;
    fwd.topic.name = LocalName(topic);
    fwd.cache_only = false;
    out.actions.push_back({std::move(fwd), at, std::nullopt});
    ++counters_.local_forwards;
  }
  if (forward_remote) {
    Message fwd = request;
    fwd.topic.name = RemoteName(topic);
    fwd.cache_only = request.cache_only || options_.role == GenieRole::kPhantom;
    out.actions.push_back({std::move(fwd), at, options_.upstream});
    ++counters_.remote_forwards;
  }
  return out;
}

PublishAction GenieCache::Reply(const Requester& to, const Message& result,
                                const Payload& payload, TimeMs at) const {
  PublishAction a;
  a.at = at;
  a.message.header = to.header;
  a.message.topic = result.topic;
  a.message.payload = payload;
  if (to.via_remote) {
    a.message.topic.name = RemoteName(result.topic.name);
    a.destination = to.node;
    if (!on_vehicle() && to.from_vehicle) {
      a.message.payload = ShareWithVehicle(payload);
    }
  }
  return a;
}

Payload GenieCache::ShareWithVehicle(const Payload& payload) const {
  const auto* list = std::get_if<ObjectList>(&payload);
  if (list == nullptr) return payload;
  if (options_.strict_share_filter) return map_.ShareFilter(*list);
  ObjectList detected;
  ObjectList additions;
  for (const auto& o : list->objects) {
    (o.boosted ? additions : detected).objects.push_back(o);
  }
  for (auto& o : map_.ShareFilter(additions).objects) {
    detected.objects.push_back(std::move(o));
  }
  return detected;
}

size_t GenieCache::ExpirePending(TimeMs now) {
  const size_t n = db_.Expire(now, options_.pending_timeout_ms);
  counters_.expired += n;
  return n;
}

nlohmann::json GenieCache::StatsJson() const {
  nlohmann::json j = counters_.ToJson();
  j["imgrr"] = counters_.imgrr();
  j["object_requests"] = map_.object_requests();
  j["object_hits"] = map_.object_hits();
  j["objrr"] = map_.object_requests() == 0
                   ? 0.0
                   : static_cast<double>(map_.object_hits()) /
                         map_.object_requests();
  j["objects_stored"] = map_.object_count();
  j["entries"] = db_.entry_count();
  return j;
}

}  // namespace genie::node
