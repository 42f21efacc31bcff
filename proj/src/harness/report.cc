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

#include "genie/harness/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

namespace genie::harness {

namespace {

std::string Fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

bool RoleMatches(const GenieStats& g, const std::string& role) {
  return role.empty() || g.role == role;
}

void WriteFile(const std::filesystem::path& path,
               void (*writer)(std::ostream&, const MetricsReport&),
               const MetricsReport& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  writer(out, r);
}

}  // namespace

std::vector<double> BoostGroup::CumulativeAverage() const {
  std::vector<double> out;
  out.reserve(events.size());
  double sum = 0.0;
  for (const auto& e : events) {
    sum += e.delta;
    out.push_back(objects_stored == 0 ? 0.0 : sum / objects_stored);
  }
  return out;
}

double Percentile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const double rank = std::ceil(p * sorted.size());
  const size_t idx = rank < 1 ? 0 : static_cast<size_t>(rank) - 1;
  return sorted[std::min(idx, sorted.size() - 1)];
}

double Mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
}

double ImprovementPercent(double baseline_mean, double candidate_mean) {
  if (baseline_mean <= 0) return 0.0;
  return 100.0 * (baseline_mean - candidate_mean) / baseline_mean;
}

std::vector<double> MetricsReport::Latencies() const {
  std::vector<double> v;
  v.reserve(samples.size());
  for (const auto& s : samples) v.push_back(s.latency_ms);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> MetricsReport::LatenciesOf(const std::string& car) const {
  std::vector<double> v;
  for (const auto& s : samples) {
    if (s.car == car) v.push_back(s.latency_ms);
  }
  std::sort(v.begin(), v.end());
  return v;
}

double MetricsReport::MeanLatency() const { return Mean(Latencies()); }

double MetricsReport::DeadlineMissFraction() const {
  if (samples.empty()) return 0.0;
  const auto misses = std::count_if(samples.begin(), samples.end(), [&](const auto& s) {
    return s.latency_ms > deadline_ms;
  });
  return static_cast<double>(misses) / samples.size();
}

double MetricsReport::Imgrr(const std::string& role) const {
  uint64_t hits = 0, requests = 0;
  for (const auto& g : genies) {
    if (!RoleMatches(g, role)) continue;
    hits += g.counters.hits;
    requests += g.counters.requests;
  }
  return requests == 0 ? 0.0 : static_cast<double>(hits) / requests;
}

double MetricsReport::Objrr(const std::string& role) const {
  uint64_t hits = 0, requests = 0;
  for (const auto& g : genies) {
    if (!RoleMatches(g, role)) continue;
    hits += g.object_hits;
    requests += g.object_requests;
  }
  return requests == 0 ? 0.0 : static_cast<double>(hits) / requests;
}

const GenieStats* MetricsReport::FindGenie(const std::string& name) const {
  for (const auto& g : genies) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

const BoostGroup* MetricsReport::FindBoostGroup(const std::string& name) const {
  for (const auto& g : boosts) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

nlohmann::ordered_json MetricsReport::Summary() const {
  const std::vector<double> lat = Latencies();
  nlohmann::ordered_json j;
  j["mode"] = mode;
  j["seed"] = seed;
  j["n_cars"] = n_cars;
  j["frames_sent"] = frames_sent;
  j["completed"] = samples.size();
  nlohmann::ordered_json l;
  l["mean"] = Mean(lat);
  l["min"] = lat.empty() ? 0.0 : lat.front();
  l["p50"] = Percentile(lat, 0.50);
  l["p95"] = Percentile(lat, 0.95);
  l["p99"] = Percentile(lat, 0.99);
  l["max"] = lat.empty() ? 0.0 : lat.back();
  j["latency_ms"] = std::move(l);
  j["deadline_ms"] = deadline_ms;
  j["deadline_miss_fraction"] = DeadlineMissFraction();
  j["imgrr"] = Imgrr();
  j["objrr"] = Objrr();

  nlohmann::ordered_json per_car = nlohmann::ordered_json::object();
  for (const auto& [car, _] : payloads) {
    const std::vector<double> v = LatenciesOf(car);
    per_car[car] = {{"completed", v.size()},
                    {"mean", Mean(v)},
                    {"p99", Percentile(v, 0.99)}};
  }
  j["cars"] = std::move(per_car);

  nlohmann::ordered_json gs = nlohmann::ordered_json::array();
  for (const auto& g : genies) {
    nlohmann::ordered_json e;
    e["name"] = g.name;
    e["role"] = g.role;
    e["imgrr"] = g.imgrr();
    e["objrr"] = g.objrr();
    e["object_requests"] = g.object_requests;
    e["object_hits"] = g.object_hits;
    e["objects_stored"] = g.objects_stored;
    e["counters"] = nlohmann::ordered_json::parse(g.counters.ToJson().dump());
    gs.push_back(std::move(e));
  }
  j["genies"] = std::move(gs);

  nlohmann::ordered_json bs = nlohmann::ordered_json::object();
  for (const auto& b : boosts) {
    const auto cum = b.CumulativeAverage();
    bs[b.name] = {{"events", b.events.size()},
                  {"objects_stored", b.objects_stored},
                  {"final_cumulative_average", cum.empty() ? 0.0 : cum.back()}};
  }
  j["boost"] = std::move(bs);

  nlohmann::ordered_json det = nlohmann::ordered_json::object();
  for (const auto& [name, n] : detector_invocations) {
    det[name] = {{"invocations", n}, {"failures", detector_failures.at(name)}};
  }
  j["detectors"] = std::move(det);
  j["consumer"] = {{"deliveries", consumer_deliveries},
                   {"duplicates_discarded", consumer_discarded}};
  return j;
}

void WriteLatencyCdf(std::ostream& os, const MetricsReport& r) {
  os << "latency_ms,cdf\n";
  const std::vector<double> v = r.Latencies();
  for (size_t i = 0; i < v.size(); ++i) {
    os << Fixed(v[i]) << ',' << Fixed(static_cast<double>(i + 1) / v.size())
       << '\n';
  }
}

void WriteReuse(std::ostream& os, const MetricsReport& r) {
  os << "genie,role,requests,hits,imgrr,object_requests,object_hits,objrr\n";
  for (const auto& g : r.genies) {
    os << g.name << ',' << g.role << ',' << g.counters.requests << ','
       << g.counters.hits << ',' << Fixed(g.imgrr()) << ',' << g.object_requests
       << ',' << g.object_hits << ',' << Fixed(g.objrr()) << '\n';
  }
  if (r.genies.empty()) return;
  std::vector<double> img, obj;
  for (const auto& g : r.genies) {
    img.push_back(g.imgrr());
    obj.push_back(g.objrr());
  }
  auto row = [&](const char* name, double a, double b) {
    os << name << ",,,," << Fixed(a) << ",,," << Fixed(b) << '\n';
  };
  row("min", *std::min_element(img.begin(), img.end()),
      *std::min_element(obj.begin(), obj.end()));
  row("mean", Mean(img), Mean(obj));
  row("max", *std::max_element(img.begin(), img.end()),
      *std::max_element(obj.begin(), obj.end()));
}

void WriteBoost(std::ostream& os, const MetricsReport& r) {
  os << "group,event,time_ms,delta,cumulative_average\n";
  for (const auto& b : r.boosts) {
    const auto cum = b.CumulativeAverage();
    for (size_t i = 0; i < b.events.size(); ++i) {
      os << b.name << ',' << i << ',' << Fixed(b.events[i].time) << ','
         << Fixed(b.events[i].delta, 9) << ',' << Fixed(cum[i], 9) << '\n';
    }
  }
}

void WriteSummary(std::ostream& os, const MetricsReport& r) {
  os << r.Summary().dump(2) << '\n';
}

void EmitReport(const MetricsReport& r, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  WriteFile(dir / "latency_cdf.csv", WriteLatencyCdf, r);
  WriteFile(dir / "reuse.csv", WriteReuse, r);
  WriteFile(dir / "boost.csv", WriteBoost, r);
  WriteFile(dir / "summary.json", WriteSummary, r);
}

void PrintSummary(std::ostream& os, const nlohmann::json& s) {
  auto num = [](const nlohmann::json& j, const char* key) {
    return j.contains(key) && j.at(key).is_number() ? j.at(key).get<double>() : 0.0;
  };
  os << "mode " << s.value("mode", std::string("?")) << ", seed "
     << s.value("seed", uint64_t{0}) << ", cars " << s.value("n_cars", 0) << '\n';
  os << "frames " << s.value("frames_sent", uint64_t{0}) << ", completed "
     << s.value("completed", uint64_t{0}) << '\n';
  if (s.contains("latency_ms")) {
    const auto& l = s.at("latency_ms");
    os << "latency ms: mean " << Fixed(num(l, "mean"), 2) << "  p50 "
       << Fixed(num(l, "p50"), 2) << "  p95 " << Fixed(num(l, "p95"), 2)
       << "  p99 " << Fixed(num(l, "p99"), 2) << "  max "
       << Fixed(num(l, "max"), 2) << '\n';
  }
  os << "deadline " << Fixed(num(s, "deadline_ms"), 1) << " ms missed by "
     << Fixed(100.0 * num(s, "deadline_miss_fraction"), 1) << "% of frames\n";
  os << "IMGRR " << Fixed(num(s, "imgrr"), 4) << "  OBJRR "
     << Fixed(num(s, "objrr"), 4) << '\n';
  if (s.contains("genies") && !s.at("genies").empty()) {
    os << "genies:\n";
    for (const auto& g : s.at("genies")) {
      os << "  " << g.value("name", std::string()) << " ("
         << g.value("role", std::string()) << ")  IMGRR "
         << Fixed(num(g, "imgrr"), 4) << "  OBJRR " << Fixed(num(g, "objrr"), 4)
         << "  stored " << g.value("objects_stored", uint64_t{0}) << '\n';
    }
  }
  if (s.contains("boost")) {
    for (const auto& [name, b] : s.at("boost").items()) {
      os << "boost " << name << ": " << b.value("events", uint64_t{0})
         << " events, final cumulative average "
         << Fixed(num(b, "final_cumulative_average"), 6) << '\n';
    }
  }
  if (s.contains("detectors")) {
    for (const auto& [name, d] : s.at("detectors").items()) {
      os << "detector " << name << ": " << d.value("invocations", uint64_t{0})
         << " invocations\n";
    }
  }
}

}  // namespace genie::harness
