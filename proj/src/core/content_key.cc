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

#include "genie/core/content_key.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <tuple>

namespace genie {
namespace {

void PutU64(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutDouble(std::string& out, double d) {
  // Collapse -0.0 onto 0.0 so equal values encode equally.
  if (d == 0.0) d = 0.0;
  PutU64(out, std::bit_cast<uint64_t>(d));
}

void PutString(std::string& out, std::string_view s) {
  PutU64(out, s.size());
  out.append(s);
}

void PutVec(std::string& out, const Vec3& v) {
  PutDouble(out, v.x);
  PutDouble(out, v.y);
  PutDouble(out, v.z);
}

bool CanonicalLess(const DetectedObject& a, const DetectedObject& b) {
  auto key = [](const DetectedObject& o) {
    return std::tie(o.label, o.location.x, o.location.y, o.location.z,
                    o.confidence, o.extent.x, o.extent.y, o.extent.z,
                    o.boosted);
  };
  return key(a) < key(b);
}

}  // namespace

std::string Digest::ToHex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

uint64_t Fnv1a64(std::string_view bytes, uint64_t seed) {
  uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string SerializePayload(const Payload& payload) {
  std::string out;
  out.push_back(static_cast<char>(KindOf(payload)));
  if (const auto* img = std::get_if<ImageRef>(&payload)) {
    PutString(out, img->id);
    PutU64(out, img->bytes);
  } else if (const auto* pc = std::get_if<PointCloudRef>(&payload)) {
    PutString(out, pc->id);
    PutU64(out, pc->bytes);
  } else {
    std::vector<const DetectedObject*> sorted;
    for (const auto& o : std::get<ObjectList>(payload).objects) sorted.push_back(&o);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return CanonicalLess(*a, *b); });
    PutU64(out, sorted.size());
    for (const auto* o : sorted) {
      PutString(out, o->label);
      PutDouble(out, o->confidence);
      PutVec(out, o->location);
      PutVec(out, o->extent);
      out.push_back(o->boosted ? 1 : 0);
    }
  }
  return out;
}

Digest ContentKey(std::string_view topic_name, const Payload& payload) {
  std::string bytes;
  PutString(bytes, topic_name);
  bytes += SerializePayload(payload);
  return Digest{Fnv1a64(bytes)};
}

}  // namespace genie
