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

#include "genie/core/types.h"

#include <numbers>

namespace genie {

double NormalizeYaw(double yaw) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  if (yaw >= -std::numbers::pi && yaw < std::numbers::pi) return yaw;
  double r = std::fmod(yaw + std::numbers::pi, kTwoPi);
  if (r < 0) r += kTwoPi;
  r -= std::numbers::pi;
  // fmod rounding can land exactly on +pi.
  if (r >= std::numbers::pi) r -= kTwoPi;
  return r;
}

std::string_view ToString(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::kImage:
      return "image";
    case PayloadKind::kPointCloud:
      return "point_cloud";
    case PayloadKind::kObjects:
      return "objects";
  }
  return "unknown";
}

PayloadKind PayloadKindFromString(std::string_view s) {
  if (s == "image") return PayloadKind::kImage;
  if (s == "point_cloud") return PayloadKind::kPointCloud;
  if (s == "objects") return PayloadKind::kObjects;
  throw ValidationError("unknown payload kind: " + std::string(s));
}

namespace {
bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}
}  // namespace

bool IsLocalName(std::string_view name) { return EndsWith(name, kLocalSuffix); }
bool IsRemoteName(std::string_view name) {
  return EndsWith(name, kRemoteSuffix);
}

std::string BaseName(std::string_view name) {
  if (IsLocalName(name)) name.remove_suffix(kLocalSuffix.size());
  else if (IsRemoteName(name)) name.remove_suffix(kRemoteSuffix.size());
  return std::string(name);
}

PayloadKind KindOf(const Payload& payload) {
  switch (payload.index()) {
    case 0:
      return PayloadKind::kImage;
    case 1:
      return PayloadKind::kPointCloud;
    default:
      return PayloadKind::kObjects;
  }
}

void ValidateObject(const DetectedObject& obj) {
  if (!(obj.confidence >= 0.0 && obj.confidence <= 1.0)) {
    throw ValidationError("object '" + obj.label + "' confidence " +
                          std::to_string(obj.confidence) +
                          " outside [0,1]");
  }
  if (!(obj.extent.x > 0 && obj.extent.y > 0 && obj.extent.z > 0)) {
    throw ValidationError("object '" + obj.label +
                          "' extent must be positive");
  }
}

}  // namespace genie
