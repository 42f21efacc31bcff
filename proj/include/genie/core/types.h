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

#ifndef GENIE_CORE_TYPES_H_
#define GENIE_CORE_TYPES_H_

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace genie {

// Simulation time in milliseconds.
using TimeMs = double;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
  friend auto operator<=>(const Vec3&, const Vec3&) = default;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double Norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// Wraps an angle into [-pi, pi).
double NormalizeYaw(double yaw);

// Ground pose of a vehicle. Pitch and roll are not modelled; traces are
// assumed gravity-aligned.
struct Pose {
  Vec3 position;
  double yaw = 0.0;  // radians, in [-pi, pi)

  Pose() = default;
  Pose(Vec3 p, double yaw_rad) : position(p), yaw(NormalizeYaw(yaw_rad)) {}

  friend bool operator==(const Pose&, const Pose&) = default;
};

// A node on the pub/sub fabric: the virtual network it belongs to and its
// name inside that network.
struct NodeId {
  std::string network;
  std::string name;

  std::string ToString() const { return network + "/" + name; }

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

struct Header {
  NodeId origin;
  uint64_t seq = 0;
  TimeMs stamp = 0.0;
  std::optional<Pose> frame_pose;
};

// Identity of an in-flight request: (origin, seq) is globally unique.
struct RequestKey {
  std::string origin;
  uint64_t seq = 0;

  static RequestKey Of(const Header& h) { return {h.origin.ToString(), h.seq}; }

  friend bool operator==(const RequestKey&, const RequestKey&) = default;
  friend auto operator<=>(const RequestKey&, const RequestKey&) = default;
};

enum class PayloadKind { kImage, kPointCloud, kObjects };

std::string_view ToString(PayloadKind kind);
PayloadKind PayloadKindFromString(std::string_view s);

struct Topic {
  std::string name;
  PayloadKind kind = PayloadKind::kImage;

  friend bool operator==(const Topic&, const Topic&) = default;
};

inline constexpr std::string_view kLocalSuffix = "-local";
inline constexpr std::string_view kRemoteSuffix = "-remote";

bool IsLocalName(std::string_view name);
bool IsRemoteName(std::string_view name);
// Strips a trailing "-local" or "-remote" if present.
std::string BaseName(std::string_view name);
inline std::string LocalName(std::string_view name) {
  return std::string(name) + std::string(kLocalSuffix);
}
inline std::string RemoteName(std::string_view name) {
  return std::string(name) + std::string(kRemoteSuffix);
}

struct ImageRef {
  std::string id;
  uint64_t bytes = 0;
  friend bool operator==(const ImageRef&, const ImageRef&) = default;
};

struct PointCloudRef {
  std::string id;
  uint64_t bytes = 0;
  friend bool operator==(const PointCloudRef&, const PointCloudRef&) = default;
};

struct DetectedObject {
  std::string label;
  double confidence = 0.0;
  Vec3 location;  // absolute, meters
  Vec3 extent{1.0, 1.0, 1.0};
  // Set on objects appended from an object map on the return path rather
  // than produced by a detector for this request.
  bool boosted = false;

  friend bool operator==(const DetectedObject&, const DetectedObject&) = default;
};

struct ObjectList {
  std::vector<DetectedObject> objects;
  friend bool operator==(const ObjectList&, const ObjectList&) = default;
};

using Payload = std::variant<ImageRef, PointCloudRef, ObjectList>;

PayloadKind KindOf(const Payload& payload);

struct Message {
  Header header;
  Topic topic;
  Payload payload;
  // Requests from Genies without an encapsulated detector: peers may serve
  // them from cache but never compute for them.
  bool cache_only = false;

  bool WellFormed() const { return KindOf(payload) == topic.kind; }
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ValidationError when a DetectedObject breaks its invariants.
void ValidateObject(const DetectedObject& obj);

}  // namespace genie

template <>
struct std::hash<genie::RequestKey> {
  size_t operator()(const genie::RequestKey& k) const noexcept {
    return std::hash<std::string>{}(k.origin) ^ (std::hash<uint64_t>{}(k.seq) * 0x9e3779b97f4a7c15ULL);
  }
};

#endif  // GENIE_CORE_TYPES_H_
