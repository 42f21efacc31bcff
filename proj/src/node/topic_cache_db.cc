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

#include "genie/node/topic_cache_db.h"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace genie::node {

bool TopicCacheDB::BuildHashMap(const Topic& topic) {
  if (maps_.contains(topic.name)) return false;
  maps_.emplace(topic.name, HashMap{topic.kind, {}, {}, {}});
  return true;
}

std::optional<PayloadKind> TopicCacheDB::KindOf(const std::string& topic) const {
  auto it = maps_.find(topic);
  if (it == maps_.end()) return std::nullopt;
  return it->second.kind;
}

TopicCacheDB::HashMap& TopicCacheDB::Map(const std::string& topic) {
  auto it = maps_.find(topic);
  if (it == maps_.end()) throw std::out_of_range("no hashmap for " + topic);
  return it->second;
}

CachedValue* TopicCacheDB::Lookup(const std::string& topic, const Digest& d) {
  auto it = maps_.find(topic);
  if (it == maps_.end()) return nullptr;
  auto e = it->second.entries.find(d);
  return e == it->second.entries.end() ? nullptr : &e->second.value;
}

const CachedValue* TopicCacheDB::Lookup(const std::string& topic,
                                        const Digest& d) const {
  return const_cast<TopicCacheDB*>(this)->Lookup(topic, d);
}

CachedValue& TopicCacheDB::InsertEmpty(const std::string& topic,
                                       const Digest& d, TimeMs now) {
  HashMap& m = Map(topic);
  auto [it, inserted] = m.entries.try_emplace(d);
  assert(inserted);
  (void)inserted;
  it->second.value.created_at = now;
  it->second.value.last_hit = now;
  it->second.lru = m.lru.end();
  return it->second.value;
}

size_t TopicCacheDB::Fill(const std::string& topic, const Digest& d,
                          Message result) {
  HashMap& m = Map(topic);
  Slot& slot = m.entries.at(d);
  if (slot.value.result) return 0;  // never store two values for one digest
  slot.value.result = std::move(result);
  m.lru.push_front(d);
  slot.lru = m.lru.begin();

  size_t evicted = 0;
  while (max_entries_ > 0 && m.lru.size() > max_entries_) {
    const Digest victim = m.lru.back();
    m.lru.pop_back();
    auto v = m.entries.find(victim);
    // A slot can be re-requested while filled only via a hit, so it has no
    // waiters; drop it outright.
    m.entries.erase(v);
    ++evicted;
  }
  return evicted;
}

void TopicCacheDB::Touch(const std::string& topic, const Digest& d,
                         TimeMs now) {
  HashMap& m = Map(topic);
  Slot& slot = m.entries.at(d);
  slot.value.last_hit = now;
  if (slot.lru != m.lru.end()) m.lru.splice(m.lru.begin(), m.lru, slot.lru);
}

void TopicCacheDB::Erase(const std::string& topic, const Digest& d) {
  HashMap& m = Map(topic);
  auto it = m.entries.find(d);
  if (it == m.entries.end()) return;
  if (it->second.lru != m.lru.end()) m.lru.erase(it->second.lru);
  m.entries.erase(it);
}

std::pair<std::string, PendingRecord*> TopicCacheDB::FindPending(
    const RequestKey& key) {
  for (auto& [name, m] : maps_) {
    auto it = m.pending.find(key);
    if (it != m.pending.end()) return {name, &it->second};
  }
  return {{}, nullptr};
}

PendingRecord* TopicCacheDB::FindPending(const std::string& topic,
                                         const RequestKey& key) {
  auto it = maps_.find(topic);
  if (it == maps_.end()) return nullptr;
  auto p = it->second.pending.find(key);
  return p == it->second.pending.end() ? nullptr : &p->second;
}

PendingRecord& TopicCacheDB::AddPending(const std::string& topic,
                                        const RequestKey& key, const Digest& d,
                                        TimeMs now) {
  HashMap& m = Map(topic);
  auto [it, inserted] = m.pending.try_emplace(key);
  assert(inserted);
  (void)inserted;
  it->second.digest = d;
  it->second.created_at = now;
  m.entries.at(d).waiting.push_back(key);
  ++unanswered_;
  return it->second;
}

std::vector<RequestKey> TopicCacheDB::WaitingOn(const std::string& topic,
                                                const Digest& d) const {
  auto it = maps_.find(topic);
  if (it == maps_.end()) return {};
  auto e = it->second.entries.find(d);
  if (e == it->second.entries.end()) return {};
  return e->second.waiting;
}

std::vector<PendingRecord*> TopicCacheDB::Resolve(const std::string& topic,
                                                  const Digest& d) {
  HashMap& m = Map(topic);
  std::vector<PendingRecord*> out;
  auto e = m.entries.find(d);
  if (e == m.entries.end()) return out;
  for (const RequestKey& k : e->second.waiting) {
    auto p = m.pending.find(k);
    if (p == m.pending.end() || p->second.answered) continue;
    p->second.answered = true;
    --unanswered_;
    out.push_back(&p->second);
  }
  e->second.waiting.clear();
  return out;
}

size_t TopicCacheDB::Expire(TimeMs now, TimeMs timeout) {
  size_t expired = 0;
  for (auto& [name, m] : maps_) {
    for (auto it = m.pending.begin(); it != m.pending.end();) {
      PendingRecord& rec = it->second;
      if (rec.created_at + timeout > now) {
        ++it;
        continue;
      }
      if (!rec.answered) {
        ++expired;
        --unanswered_;
        auto e = m.entries.find(rec.digest);
        if (e != m.entries.end()) {
          auto& w = e->second.waiting;
          w.erase(std::remove(w.begin(), w.end(), it->first), w.end());
          if (!e->second.value.result && w.empty()) m.entries.erase(e);
        }
      }
      it = m.pending.erase(it);
    }
  }
  return expired;
}

size_t TopicCacheDB::entry_count() const {
  size_t n = 0;
  for (const auto& [name, m] : maps_) n += m.entries.size();
  return n;
}

size_t TopicCacheDB::filled_count() const {
  size_t n = 0;
  for (const auto& [name, m] : maps_) n += m.lru.size();
  return n;
}

std::vector<std::string> TopicCacheDB::topics() const {
  std::vector<std::string> out;
  for (const auto& [name, m] : maps_) out.push_back(name);
  return out;
}

}  // namespace genie::node
