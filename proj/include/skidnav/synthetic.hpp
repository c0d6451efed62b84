/*
 Copyright 2026 The skidnav Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef SKIDNAV_SYNTHETIC_HPP
#define SKIDNAV_SYNTHETIC_HPP

#include "skidnav/geometry.hpp"
#include "skidnav/lidar_odometry.hpp"

#include <cstdint>
#include <random>

namespace skidnav::synthetic {

/// Deterministic uniform double in [0, 1) from a 64-bit engine. Avoids
/// std::uniform_real_distribution, whose output is implementation-defined.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Features sampled at random on four separated planar patches and four
/// line segments, all within 3 m of the origin. About 30% edges.
lidar::FeatureSet feature_scene(std::uint64_t seed, std::size_t n_points);

/// Ordered scan of the same kind of room: serpentine rows of equally
/// spaced points on two walls and a tilted surface, with pole points standing in
/// front of each surface. Rows yield planar features, pole points edges.
/// Serpentine scan over two walls and a tilted patch with pole features.
/// Exactly `n_points` points; small requests truncate the last surface.
PointCloud ordered_scan(std::uint64_t seed, std::size_t n_points);

/// Random rigid offset with translation norm <= max_translation and a
/// rotation of at most max_rotation radians about a random axis.
Transform3D random_offset(std::mt19937_64& rng, double max_translation, double max_rotation);

}  // namespace skidnav::synthetic

#endif  // SKIDNAV_SYNTHETIC_HPP
