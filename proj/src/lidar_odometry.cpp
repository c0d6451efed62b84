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
#include "skidnav/lidar_odometry.hpp"

#include "skidnav/error.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace skidnav::lidar {

namespace {

constexpr double kDegenerate = 1e-12;

std::array<std::int64_t, 3> cell_of(const Vec3& p, double voxel_size) {
  return {static_cast<std::int64_t>(std::floor(p.x() / voxel_size)),
          static_cast<std::int64_t>(std::floor(p.y() / voxel_size)),
          static_cast<std::int64_t>(std::floor(p.z() / voxel_size))};
}

void insert_dedup(const PointCloud& world, double voxel_size, PointCloud& store,
                  std::set<std::array<std::int64_t, 3>>& cells) {
  for (const Vec3& p : world.points) {
    if (cells.insert(cell_of(p, voxel_size)).second) store.points.push_back(p);
  }
}

}  // namespace

void SmoothnessParams::validate() const {
  if (neighborhood_half_width == 0)
    fail(ErrorCode::InvalidArgument, "neighborhood_half_width must be positive");
  if (!(planar_threshold >= 0.0) || !(edge_threshold > planar_threshold))
    fail(ErrorCode::InvalidArgument, "need edge_threshold > planar_threshold >= 0");
}

VoxelFeatureMap::VoxelFeatureMap(double voxel_size) : voxel_size_(voxel_size) {
  if (!(voxel_size > 0.0) || !std::isfinite(voxel_size))
    fail(ErrorCode::InvalidArgument, "voxel_size must be positive");
  edge_map_.frame = Frame::World;
  planar_map_.frame = Frame::World;
}

void VoxelFeatureMap::insert_edges(const PointCloud& world_points) {
  insert_dedup(world_points, voxel_size_, edge_map_, edge_cells_);
}

void VoxelFeatureMap::insert_planar(const PointCloud& world_points) {
  insert_dedup(world_points, voxel_size_, planar_map_, planar_cells_);
}

void VoxelFeatureMap::finalize() {
  edge_index_ = KdTree(edge_map_.points);
  planar_index_ = KdTree(planar_map_.points);
}

double smoothness(std::span<const Vec3> scan, std::size_t k, const SmoothnessParams& params) {
  const std::size_t hw = params.neighborhood_half_width;
  if (hw == 0 || k < hw || k + hw >= scan.size())
    fail(ErrorCode::IndexOutOfNeighborhood,
         "index " + std::to_string(k) + " lacks a full neighborhood of half-width " +
             std::to_string(hw));
  const Vec3& pk = scan[k];
  const double range = pk.norm();
  if (!(range > 0.0)) fail(ErrorCode::DegeneratePoint, "point at the sensor origin");

  Vec3 sum = Vec3::Zero();
  for (std::size_t u = k - hw; u <= k + hw; ++u) {
    if (u != k) sum += pk - scan[u];
  }
  return sum.norm() / (static_cast<double>(2 * hw) * range);
}

FeatureSet extract_features(std::span<const Vec3> scan, const SmoothnessParams& params,
                            int frame_index) {
  params.validate();
  const std::size_t hw = params.neighborhood_half_width;
  if (scan.size() <= 2 * hw)
    fail(ErrorCode::EmptyScan, "scan of " + std::to_string(scan.size()) +
                                   " points is too short for half-width " + std::to_string(hw));

  struct Scored {
    std::size_t index;
    double c;
  };
  std::vector<Scored> edges;
  std::vector<Scored> planar;
  for (std::size_t k = hw; k + hw < scan.size(); ++k) {
    if (!(scan[k].norm() > 0.0)) continue;
    const double c = smoothness(scan, k, params);
    if (c > params.edge_threshold) edges.push_back({k, c});
    else if (c < params.planar_threshold) planar.push_back({k, c});
  }
  std::sort(edges.begin(), edges.end(), [](const Scored& a, const Scored& b) {
    return a.c != b.c ? a.c > b.c : a.index < b.index;
  });
  std::sort(planar.begin(), planar.end(), [](const Scored& a, const Scored& b) {
    return a.c != b.c ? a.c < b.c : a.index < b.index;
  });
  const std::size_t cap = params.max_features_per_class;
  if (cap > 0) {
    if (edges.size() > cap) edges.resize(cap);
    if (planar.size() > cap) planar.resize(cap);
  }

  FeatureSet out;
  out.frame_index = frame_index;
  out.edge_points.frame = Frame::Body;
  out.planar_points.frame = Frame::Body;
  for (const Scored& s : edges) {
    out.edge_points.points.push_back(scan[s.index]);
    out.edge_indices.push_back(s.index);
  }
  for (const Scored& s : planar) {
    out.planar_points.points.push_back(scan[s.index]);
    out.planar_indices.push_back(s.index);
  }
  return out;
}

VoxelFeatureMap build_voxel_map(std::span<const Keyframe> keyframes, std::size_t n,
                                double voxel_size) {
  if (keyframes.empty()) fail(ErrorCode::NoKeyframes, "no keyframes to build a map from");
  if (n == 0 || n > keyframes.size())
    fail(ErrorCode::InvalidArgument, "window n=" + std::to_string(n) + " must be in [1, " +
                                         std::to_string(keyframes.size()) + "]");

  std::vector<const Keyframe*> recent;
  recent.reserve(keyframes.size());
  for (const Keyframe& kf : keyframes) recent.push_back(&kf);
  std::stable_sort(recent.begin(), recent.end(),
                   [](const Keyframe* a, const Keyframe* b) { return a->index > b->index; });
  recent.resize(n);
  // Oldest first, so the earliest observation of a cell is the one kept.
  std::reverse(recent.begin(), recent.end());

  VoxelFeatureMap map(voxel_size);
  map.set_keyframe_window(n);
  for (const Keyframe* kf : recent) {
    map.insert_edges(transform_cloud(kf->pose, kf->features.edge_points));
    map.insert_planar(transform_cloud(kf->pose, kf->features.planar_points));
  }
  map.finalize();
  return map;
}

double point_to_line_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const double base = (a - b).norm();
  if (base < kDegenerate) fail(ErrorCode::DegenerateLine, "line endpoints coincide");
  return (p - a).cross(p - b).norm() / base;
}

double point_to_plane_distance(const Vec3& p, const Vec3& u, const Vec3& v, const Vec3& w) {
  const Vec3 normal = (u - v).cross(u - w);
  const double area = normal.norm();
  if (area < kDegenerate) fail(ErrorCode::DegeneratePlane, "plane points are collinear");
  return std::abs((p - u).dot(normal)) / area;
}

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

struct EdgeMatch {
  Vec3 p;  // body frame
  Vec3 a;
  Vec3 b;
};

struct PlaneMatch {
  Vec3 p;  // body frame
  Vec3 u;
  Vec3 unit_normal;
};

struct Correspondences {
  std::vector<EdgeMatch> edges;
  std::vector<PlaneMatch> planes;

  std::size_t count() const { return edges.size() + planes.size(); }
};

Correspondences find_correspondences(const FeatureSet& features, const VoxelFeatureMap& map,
                                     const Transform3D& pose, const ScanMatchOptions& opts) {
  Correspondences out;
  const double gate_sq = opts.max_correspondence_distance * opts.max_correspondence_distance;
  const auto& edge_pts = map.edge_index().points();
  const auto& plane_pts = map.planar_index().points();

  for (const Vec3& p : features.edge_points.points) {
    const auto nn = map.edge_index().knn(pose.apply(p), 2);
    if (nn.size() < 2 || nn.back().distance_sq > gate_sq) continue;
    const Vec3& a = edge_pts[nn[0].index];
    const Vec3& b = edge_pts[nn[1].index];
    if ((a - b).norm() < kDegenerate) continue;
    out.edges.push_back({p, a, b});
  }
  for (const Vec3& p : features.planar_points.points) {
    const auto nn = map.planar_index().knn(pose.apply(p), 3);
    if (nn.size() < 3 || nn.back().distance_sq > gate_sq) continue;
    const Vec3& u = plane_pts[nn[0].index];
    const Vec3 normal = (u - plane_pts[nn[1].index]).cross(u - plane_pts[nn[2].index]);
    const double area = normal.norm();
    if (area < kDegenerate) continue;
    out.planes.push_back({p, u, normal / area});
  }
  return out;
}

// Sum of point-to-line and point-to-plane distances with correspondences
// searched at `pose`.
double objective(const FeatureSet& features, const VoxelFeatureMap& map, const Transform3D& pose,
                 const ScanMatchOptions& opts, std::size_t* count = nullptr) {
  const Correspondences c = find_correspondences(features, map, pose, opts);
  double total = 0.0;
  for (const EdgeMatch& m : c.edges) total += point_to_line_distance(pose.apply(m.p), m.a, m.b);
  for (const PlaneMatch& m : c.planes) total += std::abs((pose.apply(m.p) - m.u).dot(m.unit_normal));
  if (count) *count = c.count();
  return total;
}

Transform3D perturb(const Transform3D& pose, const Vec6& xi) {
  return compose(pose, Transform3D::from_euler({xi[0], xi[1], xi[2], xi[3], xi[4], xi[5]}));
}

// Stacked residuals: a 3-vector per edge (its norm is the line distance)
// and the signed plane distance per planar match.
Eigen::VectorXd residuals(const Correspondences& c, const Transform3D& pose) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(3 * c.edges.size() + c.planes.size()));
  Eigen::Index row = 0;
  for (const EdgeMatch& m : c.edges) {
    const Vec3 q = pose.apply(m.p);
    r.segment<3>(row) = (q - m.a).cross(q - m.b) / (m.a - m.b).norm();
    row += 3;
  }
  for (const PlaneMatch& m : c.planes) r[row++] = (pose.apply(m.p) - m.u).dot(m.unit_normal);
  return r;
}

}  // namespace

ScanMatchResult scan_match(const FeatureSet& features, const VoxelFeatureMap& map,
                           const Transform3D& initial, const ScanMatchOptions& opts) {
  if (map.empty())
    fail(ErrorCode::InsufficientCorrespondences, "map contains no features");

  ScanMatchResult result;
  Transform3D pose = initial;
  std::size_t count = 0;
  double current = objective(features, map, pose, opts, &count);
  if (count < opts.min_residuals)
    fail(ErrorCode::InsufficientCorrespondences,
         std::to_string(count) + " correspondences, need " + std::to_string(opts.min_residuals));
  result.objective_history.push_back(current);

  const double h = opts.jacobian_step;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    result.iterations = iter + 1;
    const Correspondences corr = find_correspondences(features, map, pose, opts);
    if (corr.count() < opts.min_residuals) break;

    const Eigen::VectorXd r0 = residuals(corr, pose);
    Eigen::MatrixXd jac(r0.size(), 6);
    for (int j = 0; j < 6; ++j) {
      Vec6 step = Vec6::Zero();
      step[j] = h;
      jac.col(j) = (residuals(corr, perturb(pose, step)) - residuals(corr, perturb(pose, -step))) /
                   (2.0 * h);
    }
    const Mat6 normal = jac.transpose() * jac;
    const Vec6 delta = normal.ldlt().solve(-jac.transpose() * r0);
    if (!delta.allFinite()) break;

    // Step halving keeps the objective non-increasing.
    double scale = 1.0;
    bool accepted = false;
    for (int k = 0; k <= opts.max_step_halvings; ++k, scale *= 0.5) {
      const Transform3D candidate = perturb(pose, scale * delta);
      const double value = objective(features, map, candidate, opts);
      if (value <= current) {
        pose = candidate;
        current = value;
        accepted = true;
        break;
      }
    }
    const double step_norm = scale * delta.norm();
    if (!accepted) {
      // No descent along the Gauss-Newton direction: converged if the
      // direction itself has vanished, stalled otherwise.
      result.converged = delta.norm() < opts.step_tolerance * 1e3;
      break;
    }
    result.objective_history.push_back(current);
    if (step_norm < opts.step_tolerance) {
      result.converged = true;
      break;
    }
  }

  const Correspondences final_corr = find_correspondences(features, map, pose, opts);
  result.edge_residuals = final_corr.edges.size();
  result.planar_residuals = final_corr.planes.size();
  result.transform = pose;
  return result;
}

bool admits_keyframe(const Transform3D& last, const Transform3D& current,
                     const KeyframeThresholds& thresholds) {
  const Transform3D delta = relative_transform(last, current);
  const double yaw = std::abs(delta.to_euler().yaw);
  return delta.translation().norm() >= thresholds.translation || yaw >= thresholds.yaw;
}

std::vector<LoopClosureCandidate> loop_closure_candidates(std::span<const Keyframe> keyframes,
                                                          const Keyframe& current, double radius,
                                                          int min_index_gap,
                                                          int window_half_width) {
  if (!(radius > 0.0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
  if (window_half_width < 0) fail(ErrorCode::InvalidArgument, "window half-width is negative");

  std::vector<int> prior_indices;
  for (const Keyframe& kf : keyframes) {
    if (kf.index < current.index) prior_indices.push_back(kf.index);
  }
  std::sort(prior_indices.begin(), prior_indices.end());
  prior_indices.erase(std::unique(prior_indices.begin(), prior_indices.end()),
                      prior_indices.end());

  std::vector<LoopClosureCandidate> out;
  for (const Keyframe& kf : keyframes) {
    if (current.index - kf.index < min_index_gap) continue;
    const double d = (kf.pose.translation() - current.pose.translation()).norm();
    if (d > radius) continue;
    LoopClosureCandidate c;
    c.candidate_index = kf.index;
    c.distance = d;
    for (int idx : prior_indices) {
      if (idx >= kf.index - window_half_width && idx <= kf.index + window_half_width)
        c.window.push_back(idx);
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const LoopClosureCandidate& a, const LoopClosureCandidate& b) {
    return a.candidate_index < b.candidate_index;
  });
  return out;
}

}  // namespace skidnav::lidar
