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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "genie/node/dedup_filter.h"
#include "genie/node/encapsulation.h"
#include "genie/node/genie_cache.h"
#include "genie/node/genie_node.h"
#include "genie/node/topic_cache_db.h"
#include "genie/simnet/fabric.h"

namespace genie::node {
namespace {

const Topic kImage{"/image", PayloadKind::kImage};
const Topic kObjects{"/objects", PayloadKind::kObjects};

DetectedObject Obj(std::string label, double conf, Vec3 loc) {
  DetectedObject o;
  o.label = std::move(label);
  o.confidence = conf;
  o.location = loc;
  return o;
}

// Answers each image from a fixed table after a fixed delay; silent for
// unknown ids.
class TableDetector : public simnet::Node {
 public:
  TableDetector(NodeId self, double latency, std::map<std::string, ObjectList> table)
      : self_(std::move(self)), latency_(latency), table_(std::move(table)) {}
  void OnMessage(simnet::Fabric& f, const simnet::Delivery& d) override {
    const auto* img = std::get_if<ImageRef>(&d.message.payload);
    if (img == nullptr) return;
    ++invocations;
    auto it = table_.find(img->id);
    if (it == table_.end()) return;
    Message out;
    out.header = d.message.header;
    out.topic = kObjects;
    out.payload = it->second;
    f.Publish(self_, out, d.time + latency_);
  }
  int invocations = 0;

 private:
  NodeId self_;
  double latency_;
  std::map<std::string, ObjectList> table_;
};

class Recorder : public simnet::Node {
 public:
  void OnMessage(simnet::Fabric&, const simnet::Delivery& d) override { got.push_back(d); }
  std::vector<simnet::Delivery> got;
};

Message Frame(const NodeId& origin, uint64_t seq, TimeMs t, const std::string& id) {
  Message m;
  m.header.origin = origin;
  m.header.seq = seq;
  m.header.stamp = t;
  m.topic = kImage;
  m.payload = ImageRef{id, 10};
  return m;
}

std::map<std::string, ObjectList> Table() {
  return {{"a", ObjectList{{Obj("car", 0.9, {0.1, 0.1, 0})}}},
          {"b", ObjectList{{Obj("sign", 0.3, {1.1, 0.1, 0})}}},
          {"c", ObjectList{{Obj("truck", 0.8, {200, 0, 0})}}}};
}

// One vehicle: camera -> local Genie -> detector, consumer on /objects.
struct Car {
  simnet::Fabric fabric;
  NodeId cam{"VN1", "camera"};
  NodeId det{"VN1", "detector"};
  NodeId gid{"VN1", "genie"};
  TableDetector* detector = nullptr;
  Recorder* consumer = nullptr;
  GenieNode* genie = nullptr;

  explicit Car(GenieOptions o = Isolated(), double det_ms = 100) {
    fabric.Emplace<Recorder>(cam, "car");
    detector = &fabric.Emplace<TableDetector>(det, "car", det, det_ms, Table());
    fabric.Subscribe(det, kImage);
    fabric.Advertise(det, kObjects);
    consumer = &fabric.Emplace<Recorder>({"VN1", "consumer"}, "car");
    fabric.Subscribe({"VN1", "consumer"}, kObjects);
    genie = &InstallGenie(fabric, gid, "car", det, o);
  }
  static GenieOptions Isolated() {
    GenieOptions o;
    o.publish_remote = [](const Message&, bool) { return false; };
    return o;
  }
  void Send(uint64_t seq, TimeMs t, const std::string& id) {
    fabric.Schedule(t, [this, seq, t, id](simnet::Fabric& f) {
      f.Publish(cam, Frame(cam, seq, t, id), t);
    });
  }
};

TEST(Encapsulate, RejectsBadSurfaces) {
  EXPECT_THROW(Encapsulate({std::nullopt, {{"/image-local", PayloadKind::kImage}}, {}}), ConfigError);
  EXPECT_THROW(Encapsulate({std::nullopt, {{"/x-remote", PayloadKind::kImage}}, {}}), ConfigError);
  EXPECT_THROW(Encapsulate({std::nullopt, {kImage}, {kImage}}), ConfigError);
  EXPECT_THROW(Encapsulate({std::nullopt, {{"", PayloadKind::kImage}}, {}}), ConfigError);
  const Encapsulation e = Encapsulate({std::nullopt, {kImage}, {kObjects}});
  EXPECT_EQ(e.rewritten.at("/image"), "/image-local");
  EXPECT_TRUE(e.exposed_remote.contains("/objects-remote"));
  EXPECT_TRUE(e.IsRequestTopic("/image"));
  EXPECT_TRUE(e.IsAnswerTopic("/objects"));
  EXPECT_EQ(e.FindTopic("/lidar"), nullptr);
}

TEST(Install, RewiresInnerNodeAndGenie) {
  Car car;
  auto& f = car.fabric;
  EXPECT_TRUE(f.IsSubscribed(car.det, "/image-local"));
  EXPECT_FALSE(f.IsSubscribed(car.det, "/image"));
  EXPECT_EQ(f.AdvertisementsOf(car.det).at(0).name, "/objects-local");
  for (const char* t : {"/image", "/image-remote", "/objects-local", "/objects-remote"}) {
    EXPECT_TRUE(f.IsSubscribed(car.gid, t)) << t;
  }
}

TEST(Install, DoubleEncapsulationIsConfigError) {
  Car car;
  EXPECT_THROW(InstallGenie(car.fabric, {"VN1", "genie2"}, "car", car.det, Car::Isolated()),
               ConfigError);
}

TEST(GenieCache, RoleMustMatchInnerNode) {
  const Encapsulation with = Encapsulate({NodeId{"VN1", "d"}, {kImage}, {kObjects}});
  const Encapsulation without = Encapsulate({std::nullopt, {kImage}, {kObjects}});
  GenieOptions o;
  o.role = GenieRole::kPhantom;
  EXPECT_THROW(GenieCache({"VN1", "g"}, with, o), ConfigError);
  EXPECT_NO_THROW(GenieCache({"VN1", "g"}, without, o));
  o.role = GenieRole::kLocal;
  EXPECT_THROW(GenieCache({"VN1", "g"}, without, o), ConfigError);
}

TEST(TopicCacheDB, EntriesAndPending) {
  TopicCacheDB db;
  EXPECT_TRUE(db.BuildHashMap(kImage));
  EXPECT_FALSE(db.BuildHashMap(kImage));
  EXPECT_EQ(db.KindOf("/image"), PayloadKind::kImage);
  const Digest d{42};
  EXPECT_EQ(db.Lookup("/image", d), nullptr);
  db.InsertEmpty("/image", d, 1.0);
  ASSERT_NE(db.Lookup("/image", d), nullptr);
  EXPECT_FALSE(db.Lookup("/image", d)->result.has_value());
  const RequestKey k{"VN1/camera", 3};
  db.AddPending("/image", k, d, 1.0);
  EXPECT_EQ(db.unanswered_count(), 1u);
  EXPECT_EQ(db.FindPending(k).first, "/image");
  EXPECT_EQ(db.WaitingOn("/image", d), std::vector<RequestKey>{k});
  auto resolved = db.Resolve("/image", d);
  ASSERT_EQ(resolved.size(), 1u);
  EXPECT_TRUE(resolved[0]->answered);
  EXPECT_EQ(db.unanswered_count(), 0u);
  Message m;
  m.topic = kObjects;
  m.payload = ObjectList{};
  db.Fill("/image", d, m);
  EXPECT_EQ(db.filled_count(), 1u);
}

TEST(TopicCacheDB, LruEvictsFilledEntriesOnly) {
  TopicCacheDB db(2);
  db.BuildHashMap(kImage);
  Message m;
  m.topic = kObjects;
  m.payload = ObjectList{};
  for (uint64_t i = 1; i <= 3; ++i) db.InsertEmpty("/image", Digest{i}, 0);
  EXPECT_EQ(db.Fill("/image", Digest{1}, m), 0u);
  EXPECT_EQ(db.Fill("/image", Digest{2}, m), 0u);
  db.Touch("/image", Digest{1}, 5);
  EXPECT_EQ(db.Fill("/image", Digest{3}, m), 1u);
  EXPECT_NE(db.Lookup("/image", Digest{1}), nullptr);
  EXPECT_EQ(db.Lookup("/image", Digest{2}), nullptr);
  EXPECT_NE(db.Lookup("/image", Digest{3}), nullptr);
}

TEST(TopicCacheDB, ExpireDropsStaleUnanswered) {
  TopicCacheDB db;
  db.BuildHashMap(kImage);
  db.InsertEmpty("/image", Digest{1}, 0);
  db.AddPending("/image", {"o", 1}, Digest{1}, 0);
  EXPECT_EQ(db.Expire(4000, 5000), 0u);
  EXPECT_EQ(db.Expire(5001, 5000), 1u);
  EXPECT_EQ(db.unanswered_count(), 0u);
  EXPECT_EQ(db.Lookup("/image", Digest{1}), nullptr);
}

TEST(DedupFilter, WindowBoundary) {
  DedupFilter f(1000);
  const Digest d{9};
  EXPECT_TRUE(f.Admit(d, 100));
  EXPECT_FALSE(f.Admit(d, 1100));  // exactly at the window edge
  EXPECT_TRUE(f.Admit(d, 1101));
  EXPECT_TRUE(f.Admit(Digest{10}, 1101));
  EXPECT_EQ(f.admitted(), 3u);
  EXPECT_EQ(f.discarded(), 1u);
}

TEST(DedupFilter, WindowRestartsFromLastAdmission) {
  DedupFilter f(1000);
  EXPECT_TRUE(f.Admit(Digest{1}, 0));
  EXPECT_TRUE(f.Admit(Digest{1}, 2000));
  EXPECT_FALSE(f.Admit(Digest{1}, 2500));
}

TEST(GenieFlow, MissThenHit) {
  Car car;
  car.Send(0, 0, "a");
  car.Send(1, 500, "a");
  car.fabric.RunAll();
  ASSERT_EQ(car.consumer->got.size(), 2u);
  EXPECT_NEAR(car.consumer->got[0].time, 4.4 + 100 + 4.4, 1e-9);
  EXPECT_NEAR(car.consumer->got[1].time - 500, 8.8, 1e-9);
  // The hit carries the second request's header.
  EXPECT_EQ(car.consumer->got[1].message.header.seq, 1u);
  EXPECT_DOUBLE_EQ(car.consumer->got[1].message.header.stamp, 500);
  const auto& c = car.genie->cache().counters();
  EXPECT_EQ(c.requests, 2u);
  EXPECT_EQ(c.hits, 1u);
  EXPECT_EQ(c.misses, 1u);
  EXPECT_EQ(c.hits + c.misses, c.requests);
  EXPECT_EQ(car.detector->invocations, 1);
  EXPECT_EQ(car.genie->branches(),
            (std::vector<Branch>{Branch::kMiss, Branch::kAnswer, Branch::kHit}));
}

TEST(GenieFlow, InFlightRequestsCoalesce) {
  Car car;
  car.Send(0, 0, "a");
  car.Send(1, 50, "a");
  car.fabric.RunAll();
  EXPECT_EQ(car.detector->invocations, 1);
  ASSERT_EQ(car.consumer->got.size(), 2u);
  EXPECT_EQ(car.consumer->got[0].message.header.seq, 0u);
  EXPECT_EQ(car.consumer->got[1].message.header.seq, 1u);
  EXPECT_EQ(car.genie->cache().counters().coalesced, 1u);
}

TEST(GenieFlow, CachingDisabledAlwaysComputes) {
  GenieOptions o = Car::Isolated();
  o.caching_enabled = false;
  Car car(o);
  car.Send(0, 0, "a");
  car.Send(1, 500, "a");
  car.fabric.RunAll();
  EXPECT_EQ(car.detector->invocations, 2);
  EXPECT_EQ(car.genie->cache().counters().hits, 0u);
  EXPECT_EQ(car.consumer->got.size(), 2u);
}

TEST(GenieFlow, MalformedMessagesDropped) {
  Car car;
  Message bad = Frame(car.cam, 0, 0, "a");
  bad.payload = ObjectList{};
  car.fabric.Publish(car.cam, bad, 0);
  car.fabric.RunAll();
  EXPECT_EQ(car.genie->cache().counters().dropped, 1u);
  EXPECT_EQ(car.detector->invocations, 0);
}

TEST(GenieFlow, UnansweredPendingExpires) {
  Car car;
  car.Send(0, 0, "unknown-image");
  car.fabric.RunAll();
  const auto& c = car.genie->cache();
  EXPECT_EQ(c.counters().expired, 1u);
  EXPECT_EQ(c.db().unanswered_count(), 0u);
  EXPECT_TRUE(car.consumer->got.empty());
}

TEST(GenieFlow, LruBoundCountsEvictions) {
  GenieOptions o = Car::Isolated();
  o.max_entries = 1;
  Car car(o);
  car.Send(0, 0, "a");
  car.Send(1, 300, "b");
  car.Send(2, 600, "a");
  car.fabric.RunAll();
  EXPECT_EQ(car.genie->cache().counters().evicted, 2u);
  EXPECT_EQ(car.genie->cache().counters().hits, 0u);
  EXPECT_EQ(car.detector->invocations, 3);
}

TEST(GenieFlow, HitAppendsBoostedNeighbours) {
  Car car;
  std::vector<HitEvent> hits;
  car.genie->cache().set_hit_observer([&](const HitEvent& e) { hits.push_back(e); });
  car.Send(0, 0, "a");
  car.Send(1, 200, "b");
  car.Send(2, 400, "b");
  car.fabric.RunAll();
  ASSERT_EQ(hits.size(), 1u);
  const ObjectList& out = hits[0].delivered;
  ASSERT_EQ(out.objects.size(), 2u);
  EXPECT_EQ(out.objects[0].label, "sign");
  EXPECT_FALSE(out.objects[0].boosted);
  EXPECT_EQ(out.objects[1].label, "car");
  EXPECT_TRUE(out.objects[1].boosted);
  // The stored entry is the detector output, untouched.
  EXPECT_EQ(std::get<ObjectList>(hits[0].stored.payload), Table().at("b"));
}

// Vehicle plus one edge Genie, both with detectors.
struct CarAndEdge {
  simnet::Fabric fabric;
  NodeId cam{"VN1", "camera"};
  NodeId remote{"EDGE", "remote1"};
  TableDetector* car_det = nullptr;
  TableDetector* edge_det = nullptr;
  Recorder* consumer = nullptr;
  GenieNode* local = nullptr;
  GenieNode* edge = nullptr;

  CarAndEdge(bool phantom_car, GenieOptions base = {}) : fabric(Options()) {
    fabric.SetLink({"car", "EDGE", 5, 0});
    NodeId edet{"EDGE", "detector1"};
    edge_det = &fabric.Emplace<TableDetector>(edet, "EDGE", edet, 30, Table());
    fabric.Subscribe(edet, kImage);
    fabric.Advertise(edet, kObjects);
    GenieOptions eo = base;
    eo.role = GenieRole::kRemote;
    edge = &InstallGenie(fabric, remote, "EDGE", edet, eo);

    fabric.Emplace<Recorder>(cam, "car");
    consumer = &fabric.Emplace<Recorder>({"VN1", "consumer"}, "car");
    fabric.Subscribe({"VN1", "consumer"}, kObjects);
    GenieOptions lo = base;
    lo.upstream = remote;
    std::optional<NodeId> inner;
    if (phantom_car) {
      lo.role = GenieRole::kPhantom;
    } else {
      NodeId cdet{"VN1", "detector"};
      car_det = &fabric.Emplace<TableDetector>(cdet, "car", cdet, 300, Table());
      fabric.Subscribe(cdet, kImage);
      fabric.Advertise(cdet, kObjects);
      inner = cdet;
    }
    local = &InstallGenie(fabric, {"VN1", "genie"}, "car", inner, lo,
                          {std::nullopt, {kImage}, {kObjects}});
  }
  static simnet::FabricOptions Options() {
    simnet::FabricOptions o;
    o.default_link_latency_ms = 5;
    return o;
  }
  void Send(uint64_t seq, TimeMs t, const std::string& id) {
    fabric.Schedule(t, [this, seq, t, id](simnet::Fabric& f) {
      f.Publish(cam, Frame(cam, seq, t, id), t);
    });
  }
};

TEST(GenieFlow, RemoteAnswerWinsAndLocalDuplicateIsForwarded) {
  CarAndEdge s(false);
  s.Send(0, 0, "a");
  s.fabric.RunAll();
  ASSERT_EQ(s.consumer->got.size(), 2u);
  // Remote path: lookup, link, lookup, detector, respond, link, respond.
  EXPECT_NEAR(s.consumer->got[0].time, 4.4 + 5 + 4.4 + 30 + 4.4 + 5 + 4.4, 1e-9);
  EXPECT_NEAR(s.consumer->got[1].time, 4.4 + 300 + 4.4, 1e-9);
  EXPECT_EQ(ContentKey(s.consumer->got[0].message), ContentKey(s.consumer->got[1].message));
  EXPECT_EQ(s.local->cache().counters().duplicates, 1u);
  EXPECT_EQ(s.local->cache().counters().remote_answers, 1u);
  EXPECT_EQ(s.local->cache().counters().local_answers, 1u);
  DedupFilter dedup(1000);
  int admitted = 0;
  for (const auto& d : s.consumer->got) admitted += dedup.Admit(d.message, d.time);
  EXPECT_EQ(admitted, 1);
}

TEST(GenieFlow, PhantomServedFromWarmEdgeCache) {
  CarAndEdge s(true);
  // Warm the edge cache through a second vehicle's upload.
  Message warm = Frame({"VN9", "camera"}, 0, 0, "a");
  warm.topic.name = "/image-remote";
  s.fabric.Emplace<Recorder>({"VN9", "genie"}, "car9");
  s.fabric.Subscribe({"VN9", "genie"}, {"/objects-remote", PayloadKind::kObjects});
  s.fabric.Publish({"VN9", "genie"}, warm, 0, s.remote);
  s.Send(0, 1000, "a");
  s.Send(1, 1100, "b");  // never computed for the phantom
  s.fabric.RunAll();
  ASSERT_EQ(s.consumer->got.size(), 1u);
  EXPECT_NEAR(s.consumer->got[0].time - 1000, 4.4 + 5 + 8.8 + 5 + 4.4, 1e-9);
  EXPECT_EQ(s.edge_det->invocations, 1);
  EXPECT_EQ(s.edge->cache().counters().cache_only_drops, 1u);
  EXPECT_EQ(s.local->cache().counters().local_forwards, 0u);
}

TEST(GenieFlow, PhantomRequestAttachesToInFlightComputation) {
  CarAndEdge s(true);
  Message warm = Frame({"VN9", "camera"}, 0, 0, "a");
  warm.topic.name = "/image-remote";
  s.fabric.Emplace<Recorder>({"VN9", "genie"}, "car9");
  s.fabric.Subscribe({"VN9", "genie"}, {"/objects-remote", PayloadKind::kObjects});
  s.fabric.Publish({"VN9", "genie"}, warm, 0, s.remote);
  s.Send(0, 10, "a");
  s.fabric.RunAll();
  ASSERT_EQ(s.consumer->got.size(), 1u);
  EXPECT_EQ(s.edge_det->invocations, 1);
  EXPECT_EQ(s.edge->cache().counters().coalesced, 1u);
}

TEST(GenieFlow, ShareFilterOnlyTrimsBoostAdditionsByDefault) {
  for (bool strict : {false, true}) {
    GenieOptions base;
    base.strict_share_filter = strict;
    CarAndEdge s(true, base);
    s.fabric.Emplace<Recorder>({"VN9", "genie"}, "car9");
    s.fabric.Subscribe({"VN9", "genie"}, {"/objects-remote", PayloadKind::kObjects});
    Message warm = Frame({"VN9", "camera"}, 0, 0, "b");  // low-confidence sign
    warm.topic.name = "/image-remote";
    s.fabric.Publish({"VN9", "genie"}, warm, 0, s.remote);
    s.Send(0, 1000, "b");
    s.fabric.RunAll();
    ASSERT_EQ(s.consumer->got.size(), 1u);
    const auto& objs = std::get<ObjectList>(s.consumer->got[0].message.payload).objects;
    EXPECT_EQ(objs.size(), strict ? 0u : 1u);
  }
}

}  // namespace
}  // namespace genie::node
