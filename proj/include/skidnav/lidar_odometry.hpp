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
#ifndef SKIDNAV_LIDAR_ODOMETRY_HPP
#define SKIDNAV_LIDAR_ODOMETRY_HPP

#include "skidnav/geometry.hpp"
#include "skidnav/kdtree.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace skidnav::lidar {

struct SmoothnessParams {
  std::size_t neighborhood_half_width = 5;
  double edge_threshold = 0.1;
  double planar_threshold = 0.01;
  /// Per-class cap; 0 disables the cap.
  std::size_t max_features_per_class = 64;

  void validate() const;
};

/// Edge and planar features of one scan, in the scan's body frame. The
/// index vectors hold the position of each feature in the source scan.
struct FeatureSet {
  PointCloud edge_points;
  PointCloud planar_points;
  std::vector<std::size_t> edge_indices;
  std::vector<std::size_t> planar_indices;
  int frame_index = 0;

  std::size_t size() const { return edge_points.size() + planar_points.size(); }
};

struct Keyframe {
  FeatureSet features;
  Transform3D pose;
  int index = 0;
};

/// Local map of world-frame features with at most one point per voxel cell
/// and class. The kD-tree indices are built once on construction.
class VoxelFeatureMap {
public:
  explicit VoxelFeatureMap(double voxel_size);

  /// Inserts world-frame points; a point whose cell is already occupied is
  /// dropped (first inserted wins).
  void insert_edges(const PointCloud& world_points);
  void insert_planar(const PointCloud& world_points);

  /// Builds the search indices. Called by build_voxel_map.
  void finalize();

  double voxel_size() const { return voxel_size_; }
  std::size_t keyframe_window() const { return keyframe_window_; }
  void set_keyframe_window(std::size_t n) { keyframe_window_ = n; }

  const PointCloud& edge_map() const { return edge_map_; }
  const PointCloud& planar_map() const { return planar_map_; }
  const KdTree& edge_index() const { return edge_index_; }
  const KdTree& planar_index() const { return planar_index_; }
  bool empty() const { return edge_map_.empty() && planar_map_.empty(); }

private:
  double voxel_size_;
  std::size_t keyframe_window_ = 0;
  PointCloud edge_map_;
  PointCloud planar_map_;
  std::set<std::array<std::int64_t, 3>> edge_cells_;
  std::set<std::array<std::int64_t, 3>> planar_cells_;
  KdTree edge_index_;
  KdTree planar_index_;
};

/// Local surface smoothness of scan[k]: norm of the summed differences to
/// its 2*half_width neighbors, normalised by neighbor count and range.
double smoothness(std::span<const Vec3> scan, std::size_t k, const SmoothnessParams& params);

FeatureSet extract_features(std::span<const Vec3> scan, const SmoothnessParams& params,
                            int frame_index = 0);

/// Merges the `n` most recent keyframes (by index) into a voxel map.
VoxelFeatureMap build_voxel_map(std::span<const Keyframe> keyframes, std::size_t n,
                                double voxel_size);

double point_to_line_distance(const Vec3& p, const Vec3& a, const Vec3& b);
double point_to_plane_distance(const Vec3& p, const Vec3& u, const Vec3& v, const Vec3& w);

struct ScanMatchOptions {
  int max_iterations = 50;
  /// Convergence threshold on the norm of the accepted 6-vector step.
  double step_tolerance = 1e-7;
  double max_correspondence_distance = 1.0;
  double jacobian_step = 1e-6;
  int max_step_halvings = 12;
  std::size_t min_residuals = 6;
};

struct ScanMatchResult {
  Transform3D transform;
  bool converged = false;
  int iterations = 0;
  /// Sum of edge and planar distances after each accepted iteration;
  /// element 0 is the objective at the initial guess.
  std::vector<double> objective_history;
  std::size_t edge_residuals = 0;
  std::size_t planar_residuals = 0;
};

/// Gauss-Newton alignment of body-frame `features` against `map`. Returns
/// T such that T * features lands on the map. Throws
/// InsufficientCorrespondences when fewer than `min_residuals` survive at
/// the initial guess; a run that exhausts its iterations is returned with
/// converged == false.
ScanMatchResult scan_match(const FeatureSet& features, const VoxelFeatureMap& map,
                           const Transform3D& initial, const ScanMatchOptions& opts = {});

struct KeyframeThresholds {
  double translation = 1.0;        // meters
  double yaw = 10.0 * 3.14159265358979323846 / 180.0;  // radians
};

/// True when the motion from `last` to `current` is large enough for the
/// current frame to become a keyframe.
bool admits_keyframe(const Transform3D& last, const Transform3D& current,
                     const KeyframeThresholds& thresholds = {});

struct LoopClosureCandidate {
  int candidate_index = 0;
  double distance = 0.0;
  /// Prior keyframe indices in [candidate - m, candidate + m] that exist.
  std::vector<int> window;
};

/// Radius search over prior keyframes. Sorted by candidate index, so the
/// result does not depend on the order of `keyframes`.
std::vector<LoopClosureCandidate> loop_closure_candidates(std::span<const Keyframe> keyframes,
                                                          const Keyframe& current, double radius,
                                                          int min_index_gap = 20,
                                                          int window_half_width = 2);

}  // namespace skidnav::lidar

#endif  // SKIDNAV_LIDAR_ODOMETRY_HPP
