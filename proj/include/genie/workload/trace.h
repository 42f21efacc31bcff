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

#ifndef GENIE_WORKLOAD_TRACE_H_
#define GENIE_WORKLOAD_TRACE_H_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "genie/core/types.h"
#include "json.hpp"

namespace genie::workload {

// Malformed trace line; carries the 1-based line number.
class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// One detection the frame's camera can see, relative to the vehicle.
struct GroundTruth {
  std::string label;
  double conf = 0.0;
  Vec3 loc;
  Vec3 extent{1.0, 1.0, 1.0};
  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct TraceFrame {
  std::string car;
  int64_t t_ms = 0;
  Pose pose;
  std::string image_id;
  std::vector<GroundTruth> truths;
  friend bool operator==(const TraceFrame&, const TraceFrame&) = default;
};

// Immutable once built; safe for concurrent reads.
class Trace {
 public:
  Trace() = default;
  // Validates and sorts. Throws ValidationError when confidences leave
  // [0,1], extents are non-positive, a car's timestamps do not strictly
  // increase, or one image_id is recorded with two different contents.
  explicit Trace(std::vector<TraceFrame> frames,
                 nlohmann::json metadata = nullptr);

  const std::vector<TraceFrame>& frames() const { return frames_; }
  std::vector<std::string> cars() const;
  // Indices into frames(), in time order.
  const std::vector<size_t>& FramesOf(const std::string& car) const;
  const TraceFrame* FindImage(const std::string& image_id) const;
  const nlohmann::json& metadata() const { return metadata_; }
  size_t size() const { return frames_.size(); }

  friend bool operator==(const Trace& a, const Trace& b) {
    return a.frames_ == b.frames_;
  }

 private:
  std::vector<TraceFrame> frames_;
  std::map<std::string, std::vector<size_t>> by_car_;
  std::map<std::string, size_t> images_;
  nlohmann::json metadata_;
};

nlohmann::json FrameToJson(const TraceFrame& f);
TraceFrame FrameFromJson(const nlohmann::json& j);

// JSON-lines, one frame per line. Blank lines are skipped.
Trace ParseTrace(std::istream& in);
Trace LoadTrace(const std::string& path);
void SaveTrace(std::ostream& out, const Trace& trace);
void SaveTrace(const std::string& path, const Trace& trace);

}  // namespace genie::workload

#endif  // GENIE_WORKLOAD_TRACE_H_
