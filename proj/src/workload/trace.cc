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

#include "genie/workload/trace.h"

#include <algorithm>
#include <fstream>
#include <numeric>

namespace genie::workload {

namespace {

using nlohmann::json;

Vec3 Vec3FromJson(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 3) {
    throw ValidationError(std::string(field) + " must be an array of 3 numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string Where(const TraceFrame& f) {
  return "frame " + f.image_id + " (car " + f.car + ", t_ms " +
         std::to_string(f.t_ms) + ")";
}

void ValidateFrame(const TraceFrame& f) {
  if (f.car.empty()) throw ValidationError("frame with empty car id");
  if (f.image_id.empty()) throw ValidationError(Where(f) + ": empty image_id");
  for (const auto& g : f.truths) {
    if (!(g.conf >= 0.0 && g.conf <= 1.0)) {
      throw ValidationError(Where(f) + ": truth '" + g.label + "' conf " +
                            std::to_string(g.conf) + " outside [0,1]");
    }
    if (!(g.extent.x > 0 && g.extent.y > 0 && g.extent.z > 0)) {
      throw ValidationError(Where(f) + ": truth '" + g.label +
                            "' extent must be positive");
    }
  }
}

bool SameContent(const TraceFrame& a, const TraceFrame& b) {
  return a.pose == b.pose && a.truths == b.truths;
}

}  // namespace

Trace::Trace(std::vector<TraceFrame> frames, nlohmann::json metadata)
    : metadata_(std::move(metadata)) {
  for (const auto& f : frames) ValidateFrame(f);

  std::vector<size_t> order(frames.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (frames[a].t_ms != frames[b].t_ms) return frames[a].t_ms < frames[b].t_ms;
    return frames[a].car < frames[b].car;
  });
  frames_.reserve(frames.size());
  for (size_t i : order) frames_.push_back(std::move(frames[i]));

  for (size_t i = 0; i < frames_.size(); ++i) {
    const TraceFrame& f = frames_[i];
    auto& idx = by_car_[f.car];
    if (!idx.empty() && frames_[idx.back()].t_ms >= f.t_ms) {
      throw ValidationError(Where(f) + ": timestamps must strictly increase per car");
    }
    idx.push_back(i);
    auto [it, fresh] = images_.emplace(f.image_id, i);
    if (!fresh && !SameContent(frames_[it->second], f)) {
      throw ValidationError(Where(f) + ": image_id reused with different content");
    }
  }
}

std::vector<std::string> Trace::cars() const {
  std::vector<std::string> out;
  for (const auto& [car, _] : by_car_) out.push_back(car);
  return out;
}

const std::vector<size_t>& Trace::FramesOf(const std::string& car) const {
  static const std::vector<size_t> kEmpty;
  auto it = by_car_.find(car);
  return it == by_car_.end() ? kEmpty : it->second;
}

const TraceFrame* Trace::FindImage(const std::string& image_id) const {
  auto it = images_.find(image_id);
  return it == images_.end() ? nullptr : &frames_[it->second];
}

namespace {
std::string FrameLine(const TraceFrame& f) {
  nlohmann::ordered_json truths = nlohmann::ordered_json::array();
  for (const auto& g : f.truths) {
    nlohmann::ordered_json t;
    t["label"] = g.label;
    t["conf"] = g.conf;
    t["loc"] = {g.loc.x, g.loc.y, g.loc.z};
    t["extent"] = {g.extent.x, g.extent.y, g.extent.z};
    truths.push_back(std::move(t));
  }
  nlohmann::ordered_json j;
  j["car"] = f.car;
  j["t_ms"] = f.t_ms;
  j["pose"] = {{"x", f.pose.position.x},
               {"y", f.pose.position.y},
               {"z", f.pose.position.z},
               {"yaw", f.pose.yaw}};
  j["image_id"] = f.image_id;
  j["truths"] = std::move(truths);
  return j.dump();
}
}  // namespace

nlohmann::json FrameToJson(const TraceFrame& f) {
  return json::parse(FrameLine(f));
}

TraceFrame FrameFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("frame must be a JSON object");
  TraceFrame f;
  f.car = j.at("car").get<std::string>();
  f.t_ms = j.at("t_ms").get<int64_t>();
  const json& p = j.at("pose");
  f.pose = Pose({p.at("x").get<double>(), p.at("y").get<double>(),
                 p.value("z", 0.0)},
                p.at("yaw").get<double>());
  f.image_id = j.at("image_id").get<std::string>();
  for (const json& t : j.value("truths", json::array())) {
    GroundTruth g;
    g.label = t.at("label").get<std::string>();
    g.conf = t.at("conf").get<double>();
    g.loc = Vec3FromJson(t.at("loc"), "loc");
    if (t.contains("extent")) g.extent = Vec3FromJson(t.at("extent"), "extent");
    f.truths.push_back(std::move(g));
  }
  return f;
}

Trace ParseTrace(std::istream& in) {
  std::vector<TraceFrame> frames;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      TraceFrame f = FrameFromJson(json::parse(line));
      ValidateFrame(f);
      frames.push_back(std::move(f));
    } catch (const json::exception& e) {
      throw TraceParseError(lineno, e.what());
    } catch (const ValidationError& e) {
      throw TraceParseError(lineno, e.what());
    }
  }
  return Trace(std::move(frames));
}

Trace LoadTrace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path);
  return ParseTrace(in);
}

void SaveTrace(std::ostream& out, const Trace& trace) {
  for (const auto& f : trace.frames()) out << FrameLine(f) << '\n';
}

void SaveTrace(const std::string& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file " + path);
  SaveTrace(out, trace);
}

}  // namespace genie::workload
