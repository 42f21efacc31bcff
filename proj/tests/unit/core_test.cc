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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "genie/core/content_key.h"
#include "genie/core/geometry.h"
#include "genie/core/types.h"

namespace genie {
namespace {

DetectedObject Obj(std::string label, double conf, Vec3 loc) {
  DetectedObject o;
  o.label = std::move(label);
  o.confidence = conf;
  o.location = loc;
  return o;
}

TEST(TopicNames, SuffixHandling) {
  EXPECT_TRUE(IsLocalName("/image-local"));
  EXPECT_TRUE(IsRemoteName("/image-remote"));
  EXPECT_FALSE(IsLocalName("/image"));
  EXPECT_EQ(BaseName("/objects-local"), "/objects");
  EXPECT_EQ(BaseName("/objects-remote"), "/objects");
  EXPECT_EQ(BaseName("/objects"), "/objects");
  EXPECT_EQ(LocalName("/image"), "/image-local");
  EXPECT_EQ(RemoteName("/image"), "/image-remote");
}

TEST(Yaw, NormalizedIntoHalfOpenRange) {
  EXPECT_DOUBLE_EQ(NormalizeYaw(0.25), 0.25);
  EXPECT_DOUBLE_EQ(NormalizeYaw(std::numbers::pi), -std::numbers::pi);
  EXPECT_NEAR(NormalizeYaw(3 * std::numbers::pi / 2), -std::numbers::pi / 2, 1e-12);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 1000; ++i) {
    const double y = NormalizeYaw(u(rng));
    EXPECT_GE(y, -std::numbers::pi);
    EXPECT_LT(y, std::numbers::pi);
  }
}

TEST(PayloadKind, RoundTripsThroughString) {
  for (auto k : {PayloadKind::kImage, PayloadKind::kPointCloud, PayloadKind::kObjects}) {
    EXPECT_EQ(PayloadKindFromString(ToString(k)), k);
  }
  EXPECT_THROW(PayloadKindFromString("video"), ValidationError);
}

TEST(Message, WellFormedChecksKind) {
  Message m;
  m.topic = {"/image", PayloadKind::kImage};
  m.payload = ImageRef{"a", 1};
  EXPECT_TRUE(m.WellFormed());
  m.payload = ObjectList{};
  EXPECT_FALSE(m.WellFormed());
}

TEST(ValidateObject, RejectsOutOfRange) {
  EXPECT_NO_THROW(ValidateObject(Obj("car", 1.0, {})));
  EXPECT_NO_THROW(ValidateObject(Obj("car", 0.0, {})));
  EXPECT_THROW(ValidateObject(Obj("car", 1.3, {})), ValidationError);
  EXPECT_THROW(ValidateObject(Obj("car", -0.1, {})), ValidationError);
  DetectedObject flat = Obj("car", 0.5, {});
  flat.extent.z = 0;
  EXPECT_THROW(ValidateObject(flat), ValidationError);
}

TEST(ContentKey, EqualContentEqualDigest) {
  const Payload a = ImageRef{"frame-7", 100};
  const Payload b = ImageRef{"frame-7", 100};
  EXPECT_EQ(ContentKey("/image", a), ContentKey("/image", b));
  EXPECT_NE(ContentKey("/image", a), ContentKey("/image", ImageRef{"frame-8", 100}));
  EXPECT_NE(ContentKey("/image", a), ContentKey("/camera", a));
}

TEST(ContentKey, IndependentOfTransportSuffixFreeHeader) {
  Message m1, m2;
  m1.topic = m2.topic = {"/image", PayloadKind::kImage};
  m1.payload = m2.payload = ImageRef{"x", 5};
  m1.header.seq = 1;
  m2.header.seq = 99;
  m2.header.origin = {"VN2", "camera"};
  EXPECT_EQ(ContentKey(m1), ContentKey(m2));
}

TEST(ContentKey, NegativeZeroEqualsZero) {
  ObjectList a{{Obj("car", 0.5, {0.0, 1.0, 2.0})}};
  ObjectList b{{Obj("car", 0.5, {-0.0, 1.0, 2.0})}};
  EXPECT_EQ(ContentKey("/objects", a), ContentKey("/objects", b));
}

// Every ordering of the same objects hashes to one digest; a brute-force
// walk over all permutations of a small list.
TEST(ContentKey, PermutationInvariantBruteForce) {
  std::vector<DetectedObject> objs = {
      Obj("car", 0.7, {1, 2, 0}), Obj("car", 0.7, {1, 2.5, 0}),
      Obj("pedestrian", 0.4, {3, 1, 0}), Obj("cyclist", 0.9, {-2, 0, 0}),
      Obj("truck", 0.61, {10, 10, 0})};
  std::sort(objs.begin(), objs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.label, a.location) < std::tie(b.label, b.location);
  });
  const Digest ref = ContentKey("/objects", ObjectList{objs});
  std::set<uint64_t> seen;
  int perms = 0;
  do {
    seen.insert(ContentKey("/objects", ObjectList{objs}).value);
    ++perms;
  } while (std::next_permutation(objs.begin(), objs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.label, a.location) < std::tie(b.label, b.location);
  }));
  EXPECT_EQ(perms, 120);
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_EQ(*seen.begin(), ref.value);
}

TEST(ContentKey, DistinguishesConfidenceAndBoostFlag) {
  ObjectList a{{Obj("car", 0.5, {})}};
  ObjectList b{{Obj("car", 0.5000001, {})}};
  EXPECT_NE(ContentKey("/objects", a), ContentKey("/objects", b));
  ObjectList c = a;
  c.objects[0].boosted = true;
  EXPECT_NE(ContentKey("/objects", a), ContentKey("/objects", c));
}

TEST(Fnv1a64, KnownVectors) {
  // Reference values of 64-bit FNV-1a.
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(Fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Geometry, TranslateKnownCase) {
  const Pose pose({10, 5, 0}, std::numbers::pi / 2);
  const Vec3 abs = TranslateLocation({2, 0, 1}, pose);
  EXPECT_NEAR(abs.x, 10, 1e-12);
  EXPECT_NEAR(abs.y, 7, 1e-12);
  EXPECT_NEAR(abs.z, 1, 1e-12);
}

TEST(Geometry, RoundTripProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-1000, 1000);
  std::uniform_real_distribution<double> off(-50, 50);
  std::uniform_real_distribution<double> yaw(-10, 10);
  for (int i = 0; i < 10000; ++i) {
    const Pose p({pos(rng), pos(rng), off(rng)}, yaw(rng));
    const Vec3 local{off(rng), off(rng), off(rng)};
    const Vec3 back = InverseTranslateLocation(TranslateLocation(local, p), p);
    ASSERT_NEAR(back.x, local.x, 1e-9);
    ASSERT_NEAR(back.y, local.y, 1e-9);
    ASSERT_NEAR(back.z, local.z, 1e-9);
    // Rigid motion keeps distances.
    ASSERT_NEAR((TranslateLocation(local, p) - p.position).Norm(), local.Norm(), 1e-9);
  }
}

}  // namespace
}  // namespace genie
