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
#ifndef SKIDNAV_KDTREE_HPP
#define SKIDNAV_KDTREE_HPP

#include "skidnav/geometry.hpp"

#include <cstddef>
#include <vector>

namespace skidnav {

/// Static 3-D kD-tree. Immutable after construction, so concurrent queries
/// are safe. Ties in distance are broken by point index, which keeps query
/// results deterministic.
class KdTree {
public:
  struct Neighbor {
    std::size_t index;
    double distance_sq;
  };

  KdTree() = default;
  explicit KdTree(std::vector<Vec3> points);

  /// Up to `k` nearest points, closest first.
  std::vector<Neighbor> knn(const Vec3& query, std::size_t k) const;

  /// All points within `radius` (inclusive), closest first.
  std::vector<Neighbor> radius_search(const Vec3& query, double radius) const;

  const std::vector<Vec3>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

private:
  struct Node {
    std::size_t point;
    int axis;
    int left;
    int right;
  };

  int build(std::vector<std::size_t>& order, std::size_t lo, std::size_t hi);

  std::vector<Vec3> points_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace skidnav

#endif  // SKIDNAV_KDTREE_HPP
