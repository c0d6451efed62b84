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
#include "skidnav/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace skidnav::synthetic {

namespace {

struct Patch {
  Vec3 center;
  Vec3 u;
  Vec3 v;
  double half_u;
  double half_v;
};

struct Segment {
  Vec3 a;
  Vec3 b;
};

std::array<Patch, 4> patches() {
  const Vec3 tilt_u = Vec3(1, -1, 0).normalized();
  const Vec3 tilt_v = Vec3(1, 1, 2).normalized();
  return {{
      {{0.8, 0.0, -1.2}, Vec3::UnitX(), Vec3::UnitY(), 0.8, 0.9},
      {{2.4, -0.6, 0.3}, Vec3::UnitY(), Vec3::UnitZ(), 0.8, 0.7},
      {{-0.4, 2.4, 0.3}, Vec3::UnitX(), Vec3::UnitZ(), 0.8, 0.7},
      {{-1.6, -1.4, 0.2}, tilt_u, tilt_v, 0.7, 0.7},
  }};
}

std::array<Segment, 4> segments() {
  return {{
      {{1.2, -2.0, -0.8}, {1.2, -2.0, 1.2}},
      {{-1.6, 1.0, -0.8}, {-1.6, 1.0, 1.2}},
      {{-0.8, 0.6, 1.8}, {1.0, 0.6, 1.8}},
      {{0.2, -1.0, 1.6}, {1.6, 0.4, 0.6}},
  }};
}

Vec3 random_unit(std::mt19937_64& rng) {
  // Uniform on the sphere via z and azimuth.
  const double z = 2.0 * unit_uniform(rng) - 1.0;
  const double phi = 2.0 * 3.14159265358979323846 * unit_uniform(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

}  // namespace

lidar::FeatureSet feature_scene(std::uint64_t seed, std::size_t n_points) {
  std::mt19937_64 rng(seed);
  const std::size_t n_edges = std::max<std::size_t>(8, (3 * n_points) / 10);
  const std::size_t n_planar = n_points > n_edges ? n_points - n_edges : 12;

  lidar::FeatureSet out;
  out.edge_points.frame = Frame::Body;
  out.planar_points.frame = Frame::Body;
  const auto segs = segments();
  for (std::size_t i = 0; i < n_edges; ++i) {
    const Segment& s = segs[i % segs.size()];
    out.edge_points.points.push_back(s.a + unit_uniform(rng) * (s.b - s.a));
    out.edge_indices.push_back(i);
  }
  const auto pats = patches();
  for (std::size_t i = 0; i < n_planar; ++i) {
    const Patch& p = pats[i % pats.size()];
    const double a = (2.0 * unit_uniform(rng) - 1.0) * p.half_u;
    const double b = (2.0 * unit_uniform(rng) - 1.0) * p.half_v;
    out.planar_points.points.push_back(p.center + a * p.u + b * p.v);
    out.planar_indices.push_back(n_edges + i);
  }
  return out;
}

PointCloud ordered_scan(std::uint64_t seed, std::size_t n_points) {
  std::mt19937_64 rng(seed);
  const auto pats = patches();
  // Two walls and the tilted patch; poles sit 0.4 m in front of each surface.
  const std::array<std::size_t, 3> surfaces{1, 2, 3};
  // Fewer rows for small scans; each row keeps at least 24 points.
  const std::size_t rows = std::clamp<std::size_t>(n_points / (surfaces.size() * 24), 2, 8);
  const std::size_t per_row =
      std::max<std::size_t>(24, (n_points + surfaces.size() * rows - 1) / (surfaces.size() * rows));

  PointCloud scan;
  scan.frame = Frame::Sensor;
  for (std::size_t s : surfaces) {
    const Patch& p = pats[s];
    Vec3 normal = p.u.cross(p.v).normalized();
    if (normal.dot(p.center) > 0.0) normal = -normal;  // toward the sensor
    const double pole_a = (0.3 + 0.4 * unit_uniform(rng)) * p.half_u;
    const double pole_b = -(0.3 + 0.4 * unit_uniform(rng)) * p.half_u;
    const double step = 2.0 * p.half_u / static_cast<double>(per_row - 1);
    for (std::size_t row = 0; row < rows; ++row) {
      // Rows 8 cm apart keep the serpentine turns well below the edge threshold.
      const double b = (static_cast<double>(row) - 0.5 * static_cast<double>(rows - 1)) * 0.08;
      for (std::size_t k = 0; k < per_row; ++k) {
        // Serpentine so consecutive rows join without a long jump.
        const std::size_t col = row % 2 == 0 ? k : per_row - 1 - k;
        const double a = -p.half_u + step * static_cast<double>(col);
        Vec3 point = p.center + a * p.u + b * p.v;
        const bool pole = std::abs(a - pole_a) < 0.5 * step || std::abs(a - pole_b) < 0.5 * step;
        if (pole) {
          const double pa = std::abs(a - pole_a) < 0.5 * step ? pole_a : pole_b;
          point = p.center + pa * p.u + b * p.v + 0.4 * normal;
        }
        scan.points.push_back(point);
      }
    }
  }
  if (scan.points.size() > n_points) scan.points.resize(n_points);
  return scan;
}

Transform3D random_offset(std::mt19937_64& rng, double max_translation, double max_rotation) {
  const Vec3 t = random_unit(rng) * (max_translation * unit_uniform(rng));
  const Vec3 axis = random_unit(rng);
  const double angle = max_rotation * unit_uniform(rng);
  return Transform3D(Eigen::AngleAxisd(angle, axis).toRotationMatrix(), t);
}

}  // namespace skidnav::synthetic
