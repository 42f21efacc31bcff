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

#include "genie/core/geometry.h"

#include <cmath>

namespace genie {

Vec3 TranslateLocation(const Vec3& v, const Pose& pose) {
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  return {c * v.x - s * v.y + pose.position.x,
          s * v.x + c * v.y + pose.position.y, v.z + pose.position.z};
}

Vec3 InverseTranslateLocation(const Vec3& a, const Pose& pose) {
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  const Vec3 d = a - pose.position;
  return {c * d.x + s * d.y, -s * d.x + c * d.y, d.z};
}

}  // namespace genie
