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

#ifndef GENIE_HARNESS_REPORT_H_
#define GENIE_HARNESS_REPORT_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "genie/core/content_key.h"
#include "genie/node/genie_cache.h"
#include "genie/objectmap/object_map.h"
#include "genie/simnet/fabric.h"
#include "json.hpp"

namespace genie::harness {

// Frame emission on /image to first object list at the car's consumer.
struct LatencySample {
  std::string car;
  uint64_t seq = 0;
  double latency_ms = 0.0;
};

struct GenieStats {
  std::string name;  // "net/name"
  std::string role;
  node::GenieCounters counters;
  uint64_t object_requests = 0;
  uint64_t object_hits = 0;
  size_t objects_stored = 0;

  double imgrr() const { return counters.imgrr(); }
  double objrr() const {
    return object_requests == 0
               ? 0.0
               : static_cast<double>(object_hits) / object_requests;
  }
};

// Confidence updates of one set of object maps, in time order.
struct BoostGroup {
  std::string name;
  std::vector<objectmap::BoostRecord> events;
  size_t objects_stored = 0;

  // Running sum of deltas divided by objects_stored, one value per event.
  std::vector<double> CumulativeAverage() const;
};

struct MetricsReport {
  std::string mode;
  uint64_t seed = 0;
  int n_cars = 0;
  double deadline_ms = 33.0;
  uint64_t frames_sent = 0;
  std::vector<LatencySample> samples;  // by car, then seq
  std::vector<GenieStats> genies;
  std::vector<BoostGroup> boosts;
  std::map<std::string, uint64_t> detector_invocations;
  std::map<std::string, uint64_t> detector_failures;
  // car -> seq -> digest of the first delivered payload, boosted objects
  // removed.
  std::map<std::string, std::map<uint64_t, Digest>> payloads;
  uint64_t consumer_deliveries = 0;
  uint64_t consumer_discarded = 0;
  std::vector<simnet::LogRecord> log;

  std::vector<double> Latencies() const;  // sorted ascending
  std::vector<double> LatenciesOf(const std::string& car) const;
  double MeanLatency() const;
  double DeadlineMissFraction() const;
  // Sum of hits over sum of requests across Genies with the given role
  // ("local", "remote", "phantom"), or all Genies when role is empty.
  double Imgrr(const std::string& role = {}) const;
  double Objrr(const std::string& role = {}) const;
  const GenieStats* FindGenie(const std::string& name) const;
  const BoostGroup* FindBoostGroup(const std::string& name) const;

  nlohmann::ordered_json Summary() const;
};

// Nearest-rank percentile of ascending values; 0 when empty.
double Percentile(const std::vector<double>& sorted, double p);
double Mean(const std::vector<double>& values);

// Improvement of the candidate mean over the baseline mean, in percent.
double ImprovementPercent(double baseline_mean, double candidate_mean);

void WriteLatencyCdf(std::ostream& os, const MetricsReport& r);
void WriteReuse(std::ostream& os, const MetricsReport& r);
void WriteBoost(std::ostream& os, const MetricsReport& r);
void WriteSummary(std::ostream& os, const MetricsReport& r);

// latency_cdf.csv, reuse.csv, boost.csv and summary.json under out_dir,
// which is created if needed.
void EmitReport(const MetricsReport& r, const std::string& out_dir);

// Human-readable rendering of a summary.json document.
void PrintSummary(std::ostream& os, const nlohmann::json& summary);

}  // namespace genie::harness

#endif  // GENIE_HARNESS_REPORT_H_
