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

#include "genie/node/dedup_filter.h"

namespace genie::node {

bool DedupFilter::Admit(const Digest& digest, TimeMs now) {
  while (!order_.empty() && now - order_.front().first > window_ms_) {
    auto it = first_seen_.find(order_.front().second);
    if (it != first_seen_.end() && it->second == order_.front().first) {
      first_seen_.erase(it);
    }
    order_.pop_front();
  }

  auto it = first_seen_.find(digest);
  if (it != first_seen_.end() && now - it->second <= window_ms_) {
    ++discarded_;
    return false;
  }
  first_seen_[digest] = now;
  order_.emplace_back(now, digest);
  ++admitted_;
  return true;
}

}  // namespace genie::node
