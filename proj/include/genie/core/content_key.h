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

#ifndef GENIE_CORE_CONTENT_KEY_H_
#define GENIE_CORE_CONTENT_KEY_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "genie/core/types.h"

namespace genie {

// Stable 64-bit content digest. Equal digests mean equal (topic, payload)
// content; headers never participate.
struct Digest {
  uint64_t value = 0;

  std::string ToHex() const;

  friend bool operator==(const Digest&, const Digest&) = default;
  friend auto operator<=>(const Digest&, const Digest&) = default;
};

// Canonical byte encoding of a payload. Object lists are sorted by
// (label, location) first, so element order does not matter. Doubles are
// written as their IEEE-754 bit patterns, little-endian.
std::string SerializePayload(const Payload& payload);

// FNV-1a over arbitrary bytes; exposed for composite keys.
uint64_t Fnv1a64(std::string_view bytes, uint64_t seed = 0xcbf29ce484222325ULL);

Digest ContentKey(std::string_view topic_name, const Payload& payload);
inline Digest ContentKey(const Message& m) {
  return ContentKey(m.topic.name, m.payload);
}

}  // namespace genie

template <>
struct std::hash<genie::Digest> {
  size_t operator()(const genie::Digest& d) const noexcept { return d.value; }
};

#endif  // GENIE_CORE_CONTENT_KEY_H_
