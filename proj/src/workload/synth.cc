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

#include "genie/workload/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "genie/core/content_key.h"
#include "genie/core/geometry.h"

namespace genie::workload {

namespace {

constexpr const char* kLabels[] = {"car", "pedestrian", "cyclist", "truck",
                                   "traffic_sign"};
constexpr double kCell = 0.5;

// Centre of the 0.5 m cell containing v.
Vec3 SnapToCell(const Vec3& v) {
  auto c = [](double x) { return std::floor(x / kCell) * kCell + kCell / 2; };
  return {c(v.x), c(v.y), c(v.z)};
}

struct Landmark {
  std::string label;
  Vec3 location;
};

class BetaSampler {
 public:
  BetaSampler(double a, double b) : ga_(a, 1.0), gb_(b, 1.0) {}
  double operator()(std::mt19937_64& rng) {
    double x = ga_(rng);
    double y = gb_(rng);
    return x + y > 0 ? x / (x + y) : 0.5;
  }

 private:
  std::gamma_distribution<double> ga_;
  std::gamma_distribution<double> gb_;
};

// Builds one frame. Confidences depend only on (seed, image_id, landmark).
TraceFrame MakeFrame(const SynthParams& p, const std::string& car,
                     int64_t t_ms, const Pose& pose,
                     const std::string& image_id,
                     const std::vector<Landmark>& visible) {
  TraceFrame f;
  f.car = car;
  f.t_ms = t_ms;
  f.pose = pose;
  f.image_id = image_id;
  std::mt19937_64 rng(Fnv1a64(image_id, p.seed ^ 0x9e3779b97f4a7c15ULL));
  BetaSampler beta(p.beta_a, p.beta_b);
  for (const Landmark& lm : visible) {
    GroundTruth g;
    g.label = lm.label;
    g.conf = beta(rng);
    g.loc = InverseTranslateLocation(lm.location, pose);
    f.truths.push_back(std::move(g));
  }
  return f;
}

std::string CarName(int k) { return "car" + std::to_string(k); }

void AddLoop(const SynthParams& p, int k, std::vector<TraceFrame>& out) {
  const int n = p.n_frames;
  const int u = std::max(1, n - static_cast<int>(std::lround(p.overlap * n)));
  const double radius =
      std::max(u * p.spacing_m / (2 * std::numbers::pi), 20.0);
  const Vec3 centre{(k - 1) * 10000.0, 0.0, 0.0};
  auto angle = [&](int j) { return 2 * std::numbers::pi * (j % u) / u; };

  const int per_frame = std::min(p.objects_per_frame, u);
  for (int i = 0; i < n; ++i) {
    const int j = i % u;
    const double th = angle(j);
    Pose pose(centre + Vec3{radius * std::cos(th), radius * std::sin(th), 0.0},
              th + std::numbers::pi / 2);
    std::vector<Landmark> visible;
    for (int m = 0; m < per_frame; ++m) {
      const int l = (j + m) % u;
      const double tl = angle(l);
      visible.push_back(
          {kLabels[l % 5],
           SnapToCell(centre + Vec3{(radius + 4) * std::cos(tl),
                                    (radius + 4) * std::sin(tl), 0.0})});
    }
    out.push_back(MakeFrame(p, CarName(k), i * p.frame_period_ms, pose,
                            "loop-c" + std::to_string(k) + "-p" +
                                std::to_string(j),
                            visible));
  }
}

void AddCorridor(const SynthParams& p, int k, const std::vector<bool>& shared,
                 std::vector<TraceFrame>& out) {
  for (int i = 0; i < p.n_frames; ++i) {
    const bool common = shared[i];
    const double lane_y = common ? 0.0 : -1.75 * k;
    Pose pose(Vec3{i * p.spacing_m, lane_y, 0.0}, 0.0);
    std::vector<Landmark> visible;
    for (int m = 0; m < p.objects_per_frame; ++m) {
      const int l = i + m;
      visible.push_back(
          {kLabels[l % 5], SnapToCell(Vec3{l * p.spacing_m, 5.0, 0.0})});
    }
    std::string id = common ? "corr-p" + std::to_string(i)
                            : "corr-c" + std::to_string(k) + "-p" +
                                  std::to_string(i);
    out.push_back(MakeFrame(p, CarName(k),
                            (k - 1) * p.stagger_ms + i * p.frame_period_ms,
                            pose, id, visible));
  }
}

void AddDisjoint(const SynthParams& p, int k, std::vector<TraceFrame>& out) {
  const double road_y = (k - 1) * 100000.0;
  for (int i = 0; i < p.n_frames; ++i) {
    Pose pose(Vec3{i * p.spacing_m, road_y, 0.0}, 0.0);
    // A column of landmarks beside this frame only, one metre apart.
    std::vector<Landmark> visible;
    for (int m = 0; m < p.objects_per_frame; ++m) {
      visible.push_back(
          {kLabels[m % 5],
           SnapToCell(Vec3{i * p.spacing_m, road_y + 3.0 + m, 0.0})});
    }
    out.push_back(MakeFrame(
        p, CarName(k), i * p.frame_period_ms, pose,
        "disj-c" + std::to_string(k) + "-p" + std::to_string(i), visible));
  }
}

}  // namespace

std::string_view ToString(Route route) {
  switch (route) {
    case Route::kLoop:
      return "loop";
    case Route::kSharedCorridor:
      return "shared-corridor";
    case Route::kDisjoint:
      return "disjoint";
  }
  return "loop";
}

Route RouteFromString(std::string_view s) {
  if (s == "loop") return Route::kLoop;
  if (s == "shared-corridor" || s == "corridor") return Route::kSharedCorridor;
  if (s == "disjoint") return Route::kDisjoint;
  throw ValidationError("unknown route: " + std::string(s));
}

void SynthParams::Validate() const {
  if (n_cars < 1) throw ValidationError("n_cars must be >= 1");
  if (n_frames < 1) throw ValidationError("n_frames must be >= 1");
  if (objects_per_frame < 0) {
    throw ValidationError("objects_per_frame must be >= 0");
  }
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw ValidationError("overlap must be in [0,1]");
  }
  if (frame_period_ms <= 0) throw ValidationError("frame_period_ms must be > 0");
  if (stagger_ms < 0) throw ValidationError("stagger_ms must be >= 0");
  if (!(spacing_m > 0)) throw ValidationError("spacing_m must be > 0");
  if (!(beta_a > 0 && beta_b > 0)) {
    throw ValidationError("beta parameters must be > 0");
  }
}

Trace SynthTrace(const SynthParams& p) {
  p.Validate();
  std::vector<TraceFrame> frames;
  std::vector<bool> shared;
  if (p.route == Route::kSharedCorridor) {
    const int s = static_cast<int>(std::lround(p.overlap * p.n_frames));
    std::vector<int> idx(p.n_frames);
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(p.seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    shared.assign(p.n_frames, false);
    for (int i = 0; i < s; ++i) shared[idx[i]] = true;
  }
  for (int k = 1; k <= p.n_cars; ++k) {
    switch (p.route) {
      case Route::kLoop:
        AddLoop(p, k, frames);
        break;
      case Route::kSharedCorridor:
        AddCorridor(p, k, shared, frames);
        break;
      case Route::kDisjoint:
        AddDisjoint(p, k, frames);
        break;
    }
  }
  nlohmann::json meta = {{"route", std::string(ToString(p.route))},
                         {"n_cars", p.n_cars},
                         {"n_frames", p.n_frames},
                         {"objects_per_frame", p.objects_per_frame},
                         {"overlap", p.overlap},
                         {"seed", p.seed}};
  return Trace(std::move(frames), std::move(meta));
}

size_t CountRepeatsWithinCars(const Trace& trace) {
  size_t repeats = 0;
  for (const auto& car : trace.cars()) {
    std::set<std::string> seen;
    for (size_t i : trace.FramesOf(car)) {
      if (!seen.insert(trace.frames()[i].image_id).second) ++repeats;
    }
  }
  return repeats;
}

size_t CountRepeatsGlobal(const Trace& trace) {
  size_t repeats = 0;
  std::set<std::string> seen;
  for (const auto& f : trace.frames()) {
    if (!seen.insert(f.image_id).second) ++repeats;
  }
  return repeats;
}

}  // namespace genie::workload
