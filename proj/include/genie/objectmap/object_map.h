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

#ifndef GENIE_OBJECTMAP_OBJECT_MAP_H_
#define GENIE_OBJECTMAP_OBJECT_MAP_H_

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genie/core/content_key.h"
#include "genie/core/types.h"
#include "json.hpp"

namespace genie::objectmap {

// Integer cell of the location grid: floor(coordinate / resolution) per axis.
struct CellKey {
  int64_t ix = 0;
  int64_t iy = 0;
  int64_t iz = 0;

  std::string ToString() const;
  friend bool operator==(const CellKey&, const CellKey&) = default;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

// Requires resolution_m > 0.
CellKey Quantize(const Vec3& location, double resolution_m);

// How a re-sighted object's stored confidence C moves given an observed
// confidence M:
//   kVerbatim: C + lambda * (C - M)
//   kEma:      C + lambda * (M - C)
//   kAscend:   C + lambda * (1 - C)
// The result is always clamped to [0, 1].
enum class UpdateRule { kVerbatim, kEma, kAscend };

std::string_view ToString(UpdateRule rule);
UpdateRule UpdateRuleFromString(std::string_view s);

double UpdateConfidence(UpdateRule rule, double stored, double observed,
                        double lambda);

struct ObjectMapOptions {
  double resolution_m = 0.5;
  double c_threshold = 0.6;
  double lambda = 0.1;
  UpdateRule rule = UpdateRule::kEma;
  // Cells intersecting a sphere of this radius around a returned object are
  // scanned for high-confidence additions.
  double radius_m = 15.0;

  // Throws ValidationError on out-of-range values.
  void Validate() const;
};

struct BoostRecord {
  TimeMs time = 0.0;
  CellKey cell;
  std::string label;
  double delta = 0.0;  // C_after - C_before
};

// Location-keyed store of detected objects. Identity within a cell is the
// class label. One store per Genie; not shared between threads.
class ObjectMapStore {
 public:
  explicit ObjectMapStore(ObjectMapOptions options = {});

  const ObjectMapOptions& options() const { return options_; }

  // Folds the objects of an `objects` message into the map. Re-sighted
  // objects get a confidence update and a BoostRecord; new ones are
  // inserted at their own cell. Other payload kinds and objects flagged as
  // `boosted` are ignored.
  std::vector<BoostRecord> NewData(const Message& m, TimeMs now);

  // Returns `entry` extended with every stored object of confidence
  // >= C_T found in the cells around its objects, skipping (label, cell)
  // pairs already present. Appended copies carry `boosted = true`. Never
  // mutates the store.
  ObjectList BoostData(const ObjectList& entry) const;

  // Objects with confidence >= C_T, in input order.
  ObjectList ShareFilter(const ObjectList& objects) const;

  // Everything stored in the cell of `location`, regardless of confidence.
  std::vector<DetectedObject> Lookup(const Vec3& location) const;

  size_t object_count() const;
  size_t cell_count() const { return cells_.size(); }
  uint64_t object_requests() const { return object_requests_; }
  uint64_t object_hits() const { return object_hits_; }

  // {cell -> [objects]} keyed by "ix,iy,iz".
  nlohmann::json Snapshot() const;
  // Digest of the full store contents; equal digests mean equal stores.
  Digest StateDigest() const;

  const std::map<CellKey, std::vector<DetectedObject>>& cells() const {
    return cells_;
  }

 private:
  bool CellIntersectsSphere(const CellKey& cell, const Vec3& center) const;

  ObjectMapOptions options_;
  std::map<CellKey, std::vector<DetectedObject>> cells_;
  uint64_t object_requests_ = 0;
  uint64_t object_hits_ = 0;
};

// One row per record: time_ms,cell,label,delta.
void WriteBoostCsv(std::ostream& os, std::span<const BoostRecord> records);

}  // namespace genie::objectmap

#endif  // GENIE_OBJECTMAP_OBJECT_MAP_H_
