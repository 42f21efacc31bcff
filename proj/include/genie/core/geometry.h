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

#ifndef GENIE_CORE_GEOMETRY_H_
#define GENIE_CORE_GEOMETRY_H_

#include "genie/core/types.h"

namespace genie {

// Maps a vehicle-relative offset into the global frame: rotate by the pose
// yaw about z, then translate by the pose position.
Vec3 TranslateLocation(const Vec3& local_offset, const Pose& vehicle_pose);

// Inverse of TranslateLocation for the same pose.
Vec3 InverseTranslateLocation(const Vec3& absolute, const Pose& vehicle_pose);

}  // namespace genie

#endif  // GENIE_CORE_GEOMETRY_H_
