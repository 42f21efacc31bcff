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

#ifndef GENIE_NODE_DEDUP_FILTER_H_
#define GENIE_NODE_DEDUP_FILTER_H_

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <utility>

#include "genie/core/content_key.h"

namespace genie::node {

// Consumer-side duplicate discard for services replicated on the car and
// the edge. The first copy of a digest passes; further copies arriving
// within `window_ms` of it are dropped.
class DedupFilter {
 public:
  explicit DedupFilter(TimeMs window_ms = 1000.0) : window_ms_(window_ms) {}

  bool Admit(const Digest& digest, TimeMs now);
  bool Admit(const Message& m, TimeMs now) { return Admit(ContentKey(m), now); }

  uint64_t admitted() const { return admitted_; }
  uint64_t discarded() const { return discarded_; }
  TimeMs window_ms() const { return window_ms_; }

 private:
  TimeMs window_ms_;
  std::unordered_map<Digest, TimeMs> first_seen_;
  std::deque<std::pair<TimeMs, Digest>> order_;
  uint64_t admitted_ = 0;
  uint64_t discarded_ = 0;
};

}  // namespace genie::node

#endif  // GENIE_NODE_DEDUP_FILTER_H_
