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

#ifndef GENIE_SIMNET_EVENT_QUEUE_H_
#define GENIE_SIMNET_EVENT_QUEUE_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "genie/core/types.h"

namespace genie::simnet {

// Min-heap of timed callbacks. Events pop in (due, insertion sequence)
// order, and the clock only moves forward.
class EventQueue {
 public:
  using Callback = std::function<void()>;

  // Returns the tie-break sequence assigned to the event.
  uint64_t Push(TimeMs due, Callback cb);

  bool empty() const { return heap_.empty(); }
  size_t size() const { return heap_.size(); }
  TimeMs NextDue() const { return heap_.front().due; }
  TimeMs clock() const { return clock_; }

  // Removes the earliest event, advances the clock to its due time and
  // returns its callback. Requires !empty().
  Callback Pop();

  // Moves the clock forward without running anything. Never moves it back.
  void AdvanceTo(TimeMs t);

 private:
  struct Item {
    TimeMs due;
    uint64_t seq;
    Callback cb;
  };
  struct Later {
    bool operator()(const Item& a, const Item& b) const {
      if (a.due != b.due) return a.due > b.due;
      return a.seq > b.seq;
    }
  };

  std::vector<Item> heap_;
  uint64_t next_seq_ = 0;
  TimeMs clock_ = 0.0;
};

}  // namespace genie::simnet

#endif  // GENIE_SIMNET_EVENT_QUEUE_H_
