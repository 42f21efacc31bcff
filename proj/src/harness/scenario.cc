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

#include "genie/harness/scenario.h"

#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <memory>
#include <set>

#include "genie/node/dedup_filter.h"
#include "genie/node/genie_node.h"
#include "genie/simnet/fabric.h"
#include "genie/workload/detector.h"

namespace genie::harness {

namespace {

const Topic kImageTopic{"/image", PayloadKind::kImage};
const Topic kObjectsTopic{"/objects", PayloadKind::kObjects};
constexpr const char* kEdgeSite = "EDGE";

// Publishes camera frames; receives nothing.
class CameraNode : public simnet::Node {
 public:
  void OnMessage(simnet::Fabric&, const simnet::Delivery&) override {}
};

// End of the car's pipeline: records the first object list per frame and
// runs the duplicate filter.
class ConsumerNode : public simnet::Node {
 public:
  explicit ConsumerNode(TimeMs dedup_window_ms) : dedup_(dedup_window_ms) {}

  void OnMessage(simnet::Fabric&, const simnet::Delivery& d) override {
    const auto* list = std::get_if<ObjectList>(&d.message.payload);
    if (list == nullptr) return;
    ++deliveries_;
    dedup_.Admit(d.message, d.time);
    const uint64_t seq = d.message.header.seq;
    if (first_.contains(seq)) return;
    ObjectList detected;
    for (const auto& o : list->objects) {
      if (!o.boosted) detected.objects.push_back(o);
    }
    first_[seq] = {d.time - d.message.header.stamp,
                   ContentKey(d.message.topic.name, detected)};
  }

  struct First {
    double latency_ms;
    Digest detected;
  };
  const std::map<uint64_t, First>& first() const { return first_; }
  uint64_t deliveries() const { return deliveries_; }
  const node::DedupFilter& dedup() const { return dedup_; }

 private:
  node::DedupFilter dedup_;
  std::map<uint64_t, First> first_;
  uint64_t deliveries_ = 0;
};

struct CarNodes {
  std::string car;
  NodeId camera;
  ConsumerNode* consumer = nullptr;
};

struct Built {
  std::vector<CarNodes> cars;
  std::vector<std::pair<NodeId, workload::DetectorNode*>> detectors;
  std::vector<node::GenieNode*> genies;
};

node::NodeDescription DetectorSurface() {
  return {std::nullopt, {kImageTopic}, {kObjectsTopic}};
}

workload::DetectorNode& AddDetector(simnet::Fabric& fabric, Built& b,
                                    const NodeId& id, const std::string& site,
                                    const workload::Trace& trace,
                                    const workload::DeviceProfile& profile,
                                    const ScenarioConfig& cfg) {
  auto& det = fabric.Emplace<workload::DetectorNode>(
      id, site, id, &trace, profile, cfg.model, cfg.seed);
  fabric.Subscribe(id, kImageTopic);
  fabric.Advertise(id, kObjectsTopic);
  b.detectors.emplace_back(id, &det);
  return det;
}

node::GenieOptions BaseGenieOptions(const ScenarioConfig& cfg) {
  node::GenieOptions o;
  o.SetOverhead(cfg.cache_overhead_ms);
  o.caching_enabled = cfg.caching_enabled;
  o.max_entries = cfg.max_entries;
  o.pending_timeout_ms = cfg.pending_timeout_ms;
  o.strict_share_filter = cfg.strict_share_filter;
  o.objectmap = cfg.objectmap;
  return o;
}

Built BuildTopology(simnet::Fabric& fabric, const ScenarioConfig& cfg,
                    const std::vector<std::string>& cars,
                    const workload::Trace& trace,
                    const workload::ProfileTable& profiles,
                    const ScenarioHooks& hooks) {
  Built b;
  const std::set<std::string> phantoms(cfg.phantom_cars.begin(),
                                       cfg.phantom_cars.end());
  const size_t n_edge = cfg.edge_devices.size();
  auto edge_of = [&](size_t car_index) { return car_index % n_edge; };

  for (const auto& car : cars) {
    fabric.SetLink({car, kEdgeSite, cfg.links.edge_ms, cfg.links.edge_jitter_ms});
  }

  // Remote Genies first so vehicles can name them as upstream.
  std::vector<NodeId> remotes;
  if (cfg.mode == Mode::kGenie) {
    for (size_t j = 0; j < n_edge; ++j) {
      bool all_phantom = true;
      for (size_t k = 0; k < cars.size(); ++k) {
        if (edge_of(k) == j && !phantoms.contains(cars[k])) all_phantom = false;
      }
      const NodeId id{kEdgeSite, "remote" + std::to_string(j + 1)};
      node::GenieOptions o = BaseGenieOptions(cfg);
      std::optional<NodeId> inner;
      if (all_phantom) {
        o.role = node::GenieRole::kPhantom;
      } else {
        o.role = node::GenieRole::kRemote;
        inner = NodeId{kEdgeSite, "detector" + std::to_string(j + 1)};
        AddDetector(fabric, b, *inner, kEdgeSite, trace,
                    profiles.Device(cfg.edge_devices[j]), cfg);
      }
      auto& g = node::InstallGenie(fabric, id, kEdgeSite, inner, o,
                                   DetectorSurface());
      b.genies.push_back(&g);
      remotes.push_back(id);
    }
  }

  for (size_t k = 0; k < cars.size(); ++k) {
    const std::string& car = cars[k];
    const std::string vn = "VN" + std::to_string(k + 1);
    CarNodes cn;
    cn.car = car;
    cn.camera = {vn, "camera"};
    fabric.Emplace<CameraNode>(cn.camera, car);
    fabric.Advertise(cn.camera, kImageTopic);
    const NodeId consumer_id{vn, "consumer"};
    cn.consumer =
        &fabric.Emplace<ConsumerNode>(consumer_id, car, cfg.dedup_window_ms);
    fabric.Subscribe(consumer_id, kObjectsTopic);

    const NodeId det_id{vn, "detector"};
    switch (cfg.mode) {
      case Mode::kLocal:
        AddDetector(fabric, b, det_id, car, trace,
                    profiles.Device(cfg.car_device), cfg);
        break;
      case Mode::kRemote:
        AddDetector(fabric, b, det_id, kEdgeSite, trace,
                    profiles.Device(cfg.edge_devices[edge_of(k)]), cfg);
        break;
      case Mode::kGenie: {
        node::GenieOptions o = BaseGenieOptions(cfg);
        o.upstream = remotes[edge_of(k)];
        std::optional<NodeId> inner;
        if (phantoms.contains(car)) {
          o.role = node::GenieRole::kPhantom;
        } else {
          o.role = node::GenieRole::kLocal;
          inner = det_id;
          AddDetector(fabric, b, det_id, car, trace,
                      profiles.Device(cfg.car_device), cfg);
        }
        auto& g = node::InstallGenie(fabric, {vn, "genie"}, car, inner, o,
                                     DetectorSurface());
        b.genies.push_back(&g);
        break;
      }
    }
    b.cars.push_back(std::move(cn));
  }

  if (hooks.on_hit) {
    for (auto* g : b.genies) {
      const NodeId id = g->cache().self();
      g->cache().set_hit_observer(
          [id, fn = hooks.on_hit](const node::HitEvent& e) { fn(id, e); });
    }
  }
  return b;
}

void ScheduleFrames(simnet::Fabric& fabric, const ScenarioConfig& cfg,
                    const std::vector<CarNodes>& cars,
                    const workload::Trace& trace, uint64_t& frames_sent) {
  for (const auto& cn : cars) {
    uint64_t seq = 0;
    for (size_t i : trace.FramesOf(cn.car)) {
      const workload::TraceFrame& f = trace.frames()[i];
      Message m;
      m.header.origin = cn.camera;
      m.header.seq = seq++;
      m.header.stamp = static_cast<TimeMs>(f.t_ms);
      m.header.frame_pose = f.pose;
      m.topic = kImageTopic;
      m.payload = ImageRef{f.image_id, cfg.image_bytes};
      const NodeId camera = cn.camera;
      const TimeMs at = m.header.stamp;
      fabric.Schedule(at, [camera, m = std::move(m), at](simnet::Fabric& fab) {
        fab.Publish(camera, m, at);
      });
      ++frames_sent;
    }
  }
}

BoostGroup CollectBoosts(const std::string& name,
                         const std::vector<const node::GenieCache*>& members) {
  BoostGroup g;
  g.name = name;
  for (const auto* c : members) {
    g.events.insert(g.events.end(), c->boost_log().begin(), c->boost_log().end());
    g.objects_stored += c->object_map().object_count();
  }
  std::stable_sort(g.events.begin(), g.events.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  return g;
}

}  // namespace

MetricsReport RunScenario(const ScenarioConfig& config,
                          const ScenarioHooks& hooks) {
  const workload::ProfileTable profiles = config.LoadProfiles();
  config.ValidateAgainst(profiles);
  const workload::Trace trace = config.LoadTrace();
  return RunScenario(config, trace, profiles, hooks);
}

MetricsReport RunScenario(const ScenarioConfig& config,
                          const workload::Trace& trace,
                          const workload::ProfileTable& profiles,
                          const ScenarioHooks& hooks) {
  config.ValidateAgainst(profiles);
  const std::vector<std::string> cars = SimulatedCars(trace, config.n_cars);
  if (static_cast<int>(cars.size()) < config.n_cars) {
    throw ConfigError("trace has fewer cars than n_cars");
  }

  simnet::FabricOptions fo;
  fo.intra_latency_ms = config.links.intra_ms;
  fo.default_link_latency_ms = config.links.edge_ms;
  fo.default_link_jitter_ms = config.links.edge_jitter_ms;
  fo.seed = config.seed;
  fo.keep_log = hooks.keep_log;
  simnet::Fabric fabric(fo);

  Built b;
  try {
    b = BuildTopology(fabric, config, cars, trace, profiles, hooks);
  } catch (const node::ConfigError& e) {
    throw ConfigError(e.what());
  }

  MetricsReport r;
  r.mode = std::string(ToString(config.mode));
  r.seed = config.seed;
  r.n_cars = config.n_cars;
  r.deadline_ms = config.deadline_ms;
  ScheduleFrames(fabric, config, b.cars, trace, r.frames_sent);
  fabric.RunAll();

  for (const auto& cn : b.cars) {
    auto& stream = r.payloads[cn.car];
    for (const auto& [seq, first] : cn.consumer->first()) {
      r.samples.push_back({cn.car, seq, first.latency_ms});
      stream[seq] = first.detected;
    }
    r.consumer_deliveries += cn.consumer->deliveries();
    r.consumer_discarded += cn.consumer->dedup().discarded();
  }

  std::vector<const node::GenieCache*> local_group;
  std::vector<const node::GenieCache*> remote_group;
  for (const auto* g : b.genies) {
    const node::GenieCache& c = g->cache();
    GenieStats s;
    s.name = c.self().ToString();
    s.role = std::string(node::ToString(c.role()));
    s.counters = c.counters();
    s.object_requests = c.object_map().object_requests();
    s.object_hits = c.object_map().object_hits();
    s.objects_stored = c.object_map().object_count();
    r.genies.push_back(std::move(s));
    (c.on_vehicle() ? local_group : remote_group).push_back(&c);
  }
  if (config.mode == Mode::kGenie) {
    r.boosts.push_back(CollectBoosts("local", local_group));
    r.boosts.push_back(CollectBoosts("remote", remote_group));
  }
  for (const auto& [id, det] : b.detectors) {
    r.detector_invocations[id.ToString()] = det->invocations();
    r.detector_failures[id.ToString()] = det->failures();
  }
  if (hooks.keep_log) r.log = fabric.log();
  return r;
}

nlohmann::ordered_json Comparison::ToJson() const {
  nlohmann::ordered_json j;
  const double l = local.MeanLatency();
  const double rm = remote.MeanLatency();
  const double dg = genie.MeanLatency();
  j["mean_latency_ms"] = {{"L", l}, {"R", rm}, {"DG", dg}};
  j["improvement_percent"] = {{"DG_vs_L", ImprovementPercent(l, dg)},
                              {"DG_vs_R", ImprovementPercent(rm, dg)}};
  j["L"] = local.Summary();
  j["R"] = remote.Summary();
  j["DG"] = genie.Summary();
  return j;
}

Comparison CompareBaselines(const ScenarioConfig& config) {
  const workload::ProfileTable profiles = config.LoadProfiles();
  ScenarioConfig base = config;
  base.phantom_cars.clear();
  ScenarioConfig cl = base, cr = base, cg = config;
  cl.mode = Mode::kLocal;
  cr.mode = Mode::kRemote;
  cg.mode = Mode::kGenie;
  // Fail fast on the calling thread.
  cl.ValidateAgainst(profiles);
  cr.ValidateAgainst(profiles);
  cg.ValidateAgainst(profiles);
  const workload::Trace trace = config.LoadTrace();

  auto run = [&](const ScenarioConfig& c) {
    return std::async(std::launch::async,
                      [&trace, &profiles, c] { return RunScenario(c, trace, profiles); });
  };
  auto fl = run(cl);
  auto fr = run(cr);
  auto fg = run(cg);
  return {fl.get(), fr.get(), fg.get()};
}

void EmitComparison(const Comparison& c, const std::string& out_dir) {
  EmitReport(c.local, out_dir + "/L");
  EmitReport(c.remote, out_dir + "/R");
  EmitReport(c.genie, out_dir + "/DG");
  std::ofstream out(out_dir + "/comparison.json");
  if (!out) throw std::runtime_error("cannot write " + out_dir + "/comparison.json");
  out << c.ToJson().dump(2) << '\n';
}

}  // namespace genie::harness
