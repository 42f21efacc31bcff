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

#ifndef GENIE_WORKLOAD_SYNTH_H_
#define GENIE_WORKLOAD_SYNTH_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "genie/workload/trace.h"

namespace genie::workload {

enum class Route { kLoop, kSharedCorridor, kDisjoint };

std::string_view ToString(Route route);
// Accepts "loop", "shared-corridor" and "disjoint".
Route RouteFromString(std::string_view s);

struct SynthParams {
  int n_cars = 1;
  Route route = Route::kLoop;
  int n_frames = 100;
  int objects_per_frame = 5;
  double overlap = 0.5;
  uint64_t seed = 42;
  int64_t frame_period_ms = 100;
  // Start offset between consecutive cars on the shared corridor.
  int64_t stagger_ms = 1000;
  // Distance travelled between frames.
  double spacing_m = 2.0;
  // Per-sighting confidence ~ Beta(a, b).
  double beta_a = 5.0;
  double beta_b = 3.0;

  // Throws ValidationError.
  void Validate() const;
};

// Builds a deterministic trace.
//
// loop: each car circles its own block. With U = n_frames - round(overlap *
// n_frames) places, frame i shows place i mod U, so exactly n_frames - U
// frames repeat an earlier image.
//
// shared-corridor: all cars drive one road, car k starting (k-1)*stagger_ms
// late. round(overlap * n_frames) frame indices, picked from the seed alone,
// show a lane image common to every car; the rest come from a car-specific
// lane that sees the same roadside landmarks. Car k's frames do not depend
// on n_cars.
//
// disjoint: cars drive roads far apart, never revisit a place and never see
// a landmark twice; overlap has no effect.
//
// Landmarks sit at 0.5 m cell centres and confidences are a pure function of
// (seed, image, landmark), so a repeated image_id carries identical truths.
Trace SynthTrace(const SynthParams& params);

// Number of frames whose image_id already appeared earlier in the same
// car's stream, and across the whole trace.
size_t CountRepeatsWithinCars(const Trace& trace);
size_t CountRepeatsGlobal(const Trace& trace);

}  // namespace genie::workload

#endif  // GENIE_WORKLOAD_SYNTH_H_
