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

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "genie/core/geometry.h"
#include "genie/objectmap/object_map.h"

namespace genie::objectmap {
namespace {

DetectedObject Obj(std::string label, double conf, Vec3 loc) {
  DetectedObject o;
  o.label = std::move(label);
  o.confidence = conf;
  o.location = loc;
  return o;
}

Message Objects(std::vector<DetectedObject> objs) {
  Message m;
  m.topic = {"/objects", PayloadKind::kObjects};
  m.payload = ObjectList{std::move(objs)};
  return m;
}

TEST(Quantize, FloorPerAxis) {
  EXPECT_EQ(Quantize({0.1, 0.6, -0.1}, 0.5), (CellKey{0, 1, -1}));
  EXPECT_EQ(Quantize({1.0, -1.0, 0.0}, 0.5), (CellKey{2, -2, 0}));
  EXPECT_EQ(Quantize({1.0, 0, 0}, 0.5).ToString(), "2,0,0");
  EXPECT_THROW(Quantize({}, 0.0), ValidationError);
}

// The cell a point maps to always contains it.
TEST(Quantize, CellContainsPointProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-500, 500);
  std::uniform_real_distribution<double> res(0.05, 4);
  for (int i = 0; i < 10000; ++i) {
    const double r = res(rng);
    const Vec3 p{u(rng), u(rng), u(rng)};
    const CellKey c = Quantize(p, r);
    ASSERT_LE(c.ix * r, p.x + 1e-9);
    ASSERT_GT((c.ix + 1) * r, p.x - 1e-9);
    ASSERT_LE(c.iy * r, p.y + 1e-9);
    ASSERT_GT((c.iy + 1) * r, p.y - 1e-9);
    ASSERT_LE(c.iz * r, p.z + 1e-9);
    ASSERT_GT((c.iz + 1) * r, p.z - 1e-9);
  }
}

// One static object seen from two poses lands in one cell.
TEST(Quantize, TranslationConsistency) {
  const Vec3 landmark{12.25, -3.75, 0.25};
  const Pose a({0, 0, 0}, 0.3), b({20, 5, 0}, -2.0);
  const Vec3 seen_a = TranslateLocation(InverseTranslateLocation(landmark, a), a);
  const Vec3 seen_b = TranslateLocation(InverseTranslateLocation(landmark, b), b);
  EXPECT_EQ(Quantize(seen_a, 0.5), Quantize(seen_b, 0.5));
}

TEST(UpdateConfidence, PinnedArithmetic) {
  EXPECT_NEAR(UpdateConfidence(UpdateRule::kVerbatim, 0.5, 0.3, 0.1), 0.52, 1e-12);
  EXPECT_NEAR(UpdateConfidence(UpdateRule::kEma, 0.5, 0.9, 0.1), 0.54, 1e-12);
  EXPECT_NEAR(UpdateConfidence(UpdateRule::kAscend, 0.5, 0.0, 0.1), 0.55, 1e-12);
}

TEST(UpdateConfidence, ClampedIntoUnitInterval) {
  EXPECT_DOUBLE_EQ(UpdateConfidence(UpdateRule::kVerbatim, 0.99, 0.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(UpdateConfidence(UpdateRule::kVerbatim, 0.01, 1.0, 1.0), 0.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (auto rule : {UpdateRule::kVerbatim, UpdateRule::kEma, UpdateRule::kAscend}) {
    for (int i = 0; i < 5000; ++i) {
      const double c = UpdateConfidence(rule, u(rng), u(rng), u(rng));
      ASSERT_GE(c, 0.0);
      ASSERT_LE(c, 1.0);
    }
  }
}

TEST(UpdateRule, ParsesNames) {
  EXPECT_EQ(UpdateRuleFromString("ema"), UpdateRule::kEma);
  EXPECT_EQ(UpdateRuleFromString(ToString(UpdateRule::kAscend)), UpdateRule::kAscend);
  EXPECT_THROW(UpdateRuleFromString("median"), ValidationError);
}

TEST(ObjectMapOptions, Validates) {
  ObjectMapOptions o;
  EXPECT_NO_THROW(o.Validate());
  o.c_threshold = 1.5;
  EXPECT_THROW(o.Validate(), ValidationError);
  o = {};
  o.lambda = 0;
  EXPECT_THROW(o.Validate(), ValidationError);
  o = {};
  o.resolution_m = -1;
  EXPECT_THROW(ObjectMapStore{o}, ValidationError);
}

TEST(NewData, InsertsThenUpdatesWithRecords) {
  ObjectMapStore map;
  EXPECT_TRUE(map.NewData(Objects({Obj("car", 0.5, {1.1, 1.1, 0})}), 10).empty());
  EXPECT_EQ(map.object_count(), 1u);
  auto recs = map.NewData(Objects({Obj("car", 0.9, {1.2, 1.3, 0.1})}), 20);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_NEAR(recs[0].delta, 0.04, 1e-12);
  EXPECT_DOUBLE_EQ(recs[0].time, 20);
  EXPECT_EQ(recs[0].cell, (CellKey{2, 2, 0}));
  EXPECT_NEAR(map.Lookup({1.0, 1.0, 0.0}).at(0).confidence, 0.54, 1e-12);
  EXPECT_EQ(map.object_requests(), 2u);
  EXPECT_EQ(map.object_hits(), 1u);
}

TEST(NewData, LabelIsIdentityWithinCell) {
  ObjectMapStore map;
  map.NewData(Objects({Obj("car", 0.5, {0.1, 0.1, 0}), Obj("pedestrian", 0.7, {0.2, 0.2, 0})}), 0);
  EXPECT_EQ(map.cell_count(), 1u);
  EXPECT_EQ(map.object_count(), 2u);
}

TEST(NewData, IgnoresBoostedAndNonObjectPayloads) {
  ObjectMapStore map;
  DetectedObject b = Obj("car", 0.9, {});
  b.boosted = true;
  map.NewData(Objects({b}), 0);
  Message img;
  img.topic = {"/image", PayloadKind::kImage};
  img.payload = ImageRef{"x", 1};
  map.NewData(img, 0);
  EXPECT_EQ(map.object_count(), 0u);
  EXPECT_EQ(map.object_requests(), 0u);
}

TEST(BoostData, AppendsHighConfidenceNeighboursOnly) {
  ObjectMapStore map;
  map.NewData(Objects({Obj("car", 0.8, {5, 0, 0}), Obj("truck", 0.4, {6, 0, 0}),
                       Obj("sign", 0.9, {40, 0, 0}), Obj("cyclist", 0.6, {0, 10, 0})}),
              0);
  ObjectList entry{{Obj("pedestrian", 0.3, {0, 0, 0})}};
  ObjectList out = map.BoostData(entry);
  ASSERT_EQ(out.objects.size(), 3u);
  EXPECT_EQ(out.objects[0], entry.objects[0]);
  std::set<std::string> added;
  for (size_t i = 1; i < out.objects.size(); ++i) {
    EXPECT_TRUE(out.objects[i].boosted);
    added.insert(out.objects[i].label);
  }
  // Boundary C = C_T is included; far and weak objects are not.
  EXPECT_EQ(added, (std::set<std::string>{"car", "cyclist"}));
}

TEST(BoostData, SkipsObjectsAlreadyPresent) {
  ObjectMapStore map;
  map.NewData(Objects({Obj("car", 0.9, {1, 1, 0})}), 0);
  ObjectList entry{{Obj("car", 0.2, {1.1, 1.1, 0})}};
  EXPECT_EQ(map.BoostData(entry).objects.size(), 1u);
}

TEST(BoostData, NeverMutatesStore) {
  ObjectMapStore map;
  map.NewData(Objects({Obj("car", 0.9, {1, 1, 0})}), 0);
  const Digest before = map.StateDigest();
  map.BoostData(ObjectList{{Obj("sign", 0.2, {2, 2, 0})}});
  EXPECT_EQ(map.StateDigest(), before);
}

// Brute-force oracle for the radius scan: a cell qualifies when its box
// comes within the radius of the entry object.
TEST(BoostData, RadiusScanMatchesBruteForce) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-30, 30);
  std::uniform_real_distribution<double> c(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    ObjectMapStore map;
    std::vector<DetectedObject> objs;
    for (int i = 0; i < 40; ++i) objs.push_back(Obj("o" + std::to_string(i), c(rng), {u(rng), u(rng), 0}));
    map.NewData(Objects(objs), 0);
    const Vec3 q{u(rng), u(rng), 0};
    ObjectList out = map.BoostData(ObjectList{{Obj("query", 0.1, q)}});
    std::set<std::string> expect;
    for (const auto& [cell, bucket] : map.cells()) {
      double d2 = 0;
      const double coords[3] = {q.x, q.y, q.z};
      const int64_t idx[3] = {cell.ix, cell.iy, cell.iz};
      for (int a = 0; a < 3; ++a) {
        const double lo = idx[a] * 0.5, hi = lo + 0.5;
        const double d = coords[a] < lo ? lo - coords[a] : coords[a] > hi ? coords[a] - hi : 0;
        d2 += d * d;
      }
      for (const auto& s : bucket) {
        if (d2 <= 15.0 * 15.0 && s.confidence >= 0.6) expect.insert(s.label);
      }
    }
    std::set<std::string> got;
    for (size_t i = 1; i < out.objects.size(); ++i) got.insert(out.objects[i].label);
    ASSERT_EQ(got, expect);
  }
}

// Over random map states every object leaving through ShareFilter or
// BoostData additions meets the threshold.
TEST(HighConfidence, PropertyOverRandomStates) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-20, 20);
  std::uniform_real_distribution<double> conf(0, 1);
  std::uniform_int_distribution<int> count(0, 12);
  const char* labels[] = {"car", "pedestrian", "cyclist"};
  for (int state = 0; state < 10000; ++state) {
    ObjectMapOptions o;
    o.c_threshold = std::round(conf(rng) * 20) / 20;  // lands on exact grid values
    ObjectMapStore map(o);
    std::vector<DetectedObject> objs;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      double c = conf(rng);
      if (i % 4 == 0) c = o.c_threshold;  // boundary
      objs.push_back(Obj(labels[i % 3], c, {u(rng), u(rng), 0}));
    }
    map.NewData(Objects(objs), 0);
    ObjectList entry{{Obj("query", 0.0, {u(rng), u(rng), 0})}};
    const ObjectList boosted = map.BoostData(entry);
    for (size_t i = 1; i < boosted.objects.size(); ++i) {
      ASSERT_GE(boosted.objects[i].confidence, o.c_threshold);
    }
    const ObjectList shared = map.ShareFilter(ObjectList{objs});
    for (const auto& s : shared.objects) ASSERT_GE(s.confidence, o.c_threshold);
    size_t expect = 0;
    for (const auto& ob : objs) expect += ob.confidence >= o.c_threshold;
    ASSERT_EQ(shared.objects.size(), expect);
  }
}

TEST(Snapshot, KeyedByCell) {
  ObjectMapStore map;
  map.NewData(Objects({Obj("car", 0.5, {0.6, 0.1, 0})}), 0);
  const auto j = map.Snapshot();
  ASSERT_TRUE(j.contains("1,0,0"));
  EXPECT_EQ(j["1,0,0"][0]["label"], "car");
}

TEST(BoostCsv, HeaderAndRows) {
  std::vector<BoostRecord> recs = {{12.5, {1, 2, 3}, "car", 0.04}};
  std::ostringstream os;
  WriteBoostCsv(os, recs);
  EXPECT_EQ(os.str(), "time_ms,cell,label,delta\n12.500000,\"1,2,3\",car,0.04\n");
}

}  // namespace
}  // namespace genie::objectmap
