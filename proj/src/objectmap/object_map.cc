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

#include "genie/objectmap/object_map.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

namespace genie::objectmap {

std::string CellKey::ToString() const {
  return std::to_string(ix) + "," + std::to_string(iy) + "," +
         std::to_string(iz);
}

CellKey Quantize(const Vec3& p, double resolution_m) {
  if (!(resolution_m > 0)) throw ValidationError("resolution must be positive");
  return {static_cast<int64_t>(std::floor(p.x / resolution_m)),
          static_cast<int64_t>(std::floor(p.y / resolution_m)),
          static_cast<int64_t>(std::floor(p.z / resolution_m))};
}

std::string_view ToString(UpdateRule rule) {
  switch (rule) {
    case UpdateRule::kVerbatim:
      return "verbatim";
    case UpdateRule::kEma:
      return "ema";
    case UpdateRule::kAscend:
      return "ascend";
  }
  return "unknown";
}

UpdateRule UpdateRuleFromString(std::string_view s) {
  if (s == "verbatim") return UpdateRule::kVerbatim;
  if (s == "ema") return UpdateRule::kEma;
  if (s == "ascend") return UpdateRule::kAscend;
  throw ValidationError("unknown update rule: " + std::string(s));
}

double UpdateConfidence(UpdateRule rule, double stored, double observed,
                        double lambda) {
  double c = stored;
  switch (rule) {
    case UpdateRule::kVerbatim:
      c = stored + lambda * (stored - observed);
      break;
    case UpdateRule::kEma:
      c = stored + lambda * (observed - stored);
      break;
    case UpdateRule::kAscend:
      c = stored + lambda * (1.0 - stored);
      break;
  }
  return std::clamp(c, 0.0, 1.0);
}

void ObjectMapOptions::Validate() const {
  if (!(resolution_m > 0)) throw ValidationError("resolution_m must be > 0");
  if (!(c_threshold >= 0 && c_threshold <= 1)) {
    throw ValidationError("c_threshold must be in [0,1]");
  }
  if (!(lambda > 0 && lambda <= 1)) throw ValidationError("lambda must be in (0,1]");
  if (!(radius_m >= 0)) throw ValidationError("radius_m must be >= 0");
}

ObjectMapStore::ObjectMapStore(ObjectMapOptions options)
    : options_(std::move(options)) {
  options_.Validate();
}

std::vector<BoostRecord> ObjectMapStore::NewData(const Message& m,
                                                 TimeMs now) {
  std::vector<BoostRecord> records;
  const auto* list = std::get_if<ObjectList>(&m.payload);
  if (list == nullptr) return records;

  for (const DetectedObject& obj : list->objects) {
    if (obj.boosted) continue;
    ++object_requests_;
    const CellKey cell = Quantize(obj.location, options_.resolution_m);
    auto& bucket = cells_[cell];
    auto it = std::find_if(bucket.begin(), bucket.end(),
                           [&](const auto& s) { return s.label == obj.label; });
    if (it == bucket.end()) {
      DetectedObject stored = obj;
      stored.confidence = std::clamp(stored.confidence, 0.0, 1.0);
      bucket.push_back(std::move(stored));
      continue;
    }
    ++object_hits_;
    const double before = it->confidence;
    it->confidence = UpdateConfidence(options_.rule, before, obj.confidence,
                                      options_.lambda);
    records.push_back({now, cell, obj.label, it->confidence - before});
  }
  return records;
}

bool ObjectMapStore::CellIntersectsSphere(const CellKey& cell,
                                          const Vec3& c) const {
  const double r = options_.resolution_m;
  auto axis = [r](int64_t i, double v) {
    const double lo = static_cast<double>(i) * r;
    const double hi = lo + r;
    if (v < lo) return lo - v;
    if (v > hi) return v - hi;
    return 0.0;
  };
  const double dx = axis(cell.ix, c.x);
  const double dy = axis(cell.iy, c.y);
  const double dz = axis(cell.iz, c.z);
  return dx * dx + dy * dy + dz * dz <= options_.radius_m * options_.radius_m;
}

ObjectList ObjectMapStore::BoostData(const ObjectList& entry) const {
  ObjectList out = entry;
  std::set<std::pair<CellKey, std::string>> present;
  for (const auto& o : entry.objects) {
    present.emplace(Quantize(o.location, options_.resolution_m), o.label);
  }

  for (const auto& o : entry.objects) {
    const CellKey home = Quantize(o.location, options_.resolution_m);
    for (const auto& [cell, bucket] : cells_) {
      if (cell != home && !CellIntersectsSphere(cell, o.location)) continue;
      for (const auto& stored : bucket) {
        if (!(stored.confidence >= options_.c_threshold)) continue;
        if (!present.emplace(cell, stored.label).second) continue;
        DetectedObject add = stored;
        add.boosted = true;
        out.objects.push_back(std::move(add));
      }
    }
  }
  return out;
}

ObjectList ObjectMapStore::ShareFilter(const ObjectList& objects) const {
  ObjectList out;
  std::copy_if(objects.objects.begin(), objects.objects.end(),
               std::back_inserter(out.objects), [this](const auto& o) {
                 return o.confidence >= options_.c_threshold;
               });
  return out;
}

std::vector<DetectedObject> ObjectMapStore::Lookup(const Vec3& location) const {
  auto it = cells_.find(Quantize(location, options_.resolution_m));
  if (it == cells_.end()) return {};
  return it->second;
}

size_t ObjectMapStore::object_count() const {
  size_t n = 0;
  for (const auto& [cell, bucket] : cells_) n += bucket.size();
  return n;
}

nlohmann::json ObjectMapStore::Snapshot() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [cell, bucket] : cells_) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& o : bucket) {
      arr.push_back({{"label", o.label},
                     {"confidence", o.confidence},
                     {"loc", {o.location.x, o.location.y, o.location.z}},
                     {"extent", {o.extent.x, o.extent.y, o.extent.z}}});
    }
    j[cell.ToString()] = std::move(arr);
  }
  return j;
}

Digest ObjectMapStore::StateDigest() const {
  uint64_t h = Fnv1a64({});
  for (const auto& [cell, bucket] : cells_) {
    h = Fnv1a64(cell.ToString(), h);
    h = Fnv1a64(SerializePayload(ObjectList{bucket}), h);
  }
  return Digest{h};
}

void WriteBoostCsv(std::ostream& os, std::span<const BoostRecord> records) {
  os << "time_ms,cell,label,delta\n";
  char buf[64];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%.6f", r.time);
    os << buf << ",\"" << r.cell.ToString() << "\"," << r.label << ",";
    std::snprintf(buf, sizeof(buf), "%.9g", r.delta);
    os << buf << '\n';
  }
}

}  // namespace genie::objectmap
