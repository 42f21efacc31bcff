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

#include "genie/simnet/event_queue.h"

#include <algorithm>
#include <cassert>

namespace genie::simnet {

uint64_t EventQueue::Push(TimeMs due, Callback cb) {
  const uint64_t seq = next_seq_++;
  heap_.push_back(Item{due, seq, std::move(cb)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  return seq;
}

EventQueue::Callback EventQueue::Pop() {
  assert(!heap_.empty());
  std::pop_heap(heap_.begin(), heap_.end(), Later{});
  Item item = std::move(heap_.back());
  heap_.pop_back();
  clock_ = std::max(clock_, item.due);
  return std::move(item.cb);
}

void EventQueue::AdvanceTo(TimeMs t) { clock_ = std::max(clock_, t); }

}  // namespace genie::simnet
