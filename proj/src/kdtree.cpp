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
#include "skidnav/kdtree.hpp"

#include <algorithm>
#include <numeric>

namespace skidnav {

namespace {

bool closer(const KdTree::Neighbor& a, const KdTree::Neighbor& b) {
  if (a.distance_sq != b.distance_sq) return a.distance_sq < b.distance_sq;
  return a.index < b.index;
}

}  // namespace

KdTree::KdTree(std::vector<Vec3> points) : points_(std::move(points)) {
  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  nodes_.reserve(points_.size());
  root_ = build(order, 0, order.size());
}

int KdTree::build(std::vector<std::size_t>& order, std::size_t lo, std::size_t hi) {
  if (lo >= hi) return -1;

  Vec3 lower = points_[order[lo]];
  Vec3 upper = lower;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    lower = lower.cwiseMin(points_[order[i]]);
    upper = upper.cwiseMax(points_[order[i]]);
  }
  int axis = 0;
  (upper - lower).maxCoeff(&axis);

  const std::size_t mid = lo + (hi - lo) / 2;
  std::nth_element(order.begin() + static_cast<std::ptrdiff_t>(lo),
                   order.begin() + static_cast<std::ptrdiff_t>(mid),
                   order.begin() + static_cast<std::ptrdiff_t>(hi),
                   [&](std::size_t a, std::size_t b) {
                     const double ca = points_[a][axis];
                     const double cb = points_[b][axis];
                     return ca != cb ? ca < cb : a < b;
                   });

  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({order[mid], axis, -1, -1});
  const int left = build(order, lo, mid);
  const int right = build(order, mid + 1, hi);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

std::vector<KdTree::Neighbor> KdTree::knn(const Vec3& query, std::size_t k) const {
  std::vector<Neighbor> best;  // max-heap on `closer`
  if (k == 0 || root_ < 0) return best;
  best.reserve(k + 1);

  auto visit = [&](auto&& self, int node_id) -> void {
    if (node_id < 0) return;
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    const Vec3& p = points_[node.point];
    const Neighbor candidate{node.point, (p - query).squaredNorm()};
    if (best.size() < k) {
      best.push_back(candidate);
      std::push_heap(best.begin(), best.end(), closer);
    } else if (closer(candidate, best.front())) {
      std::pop_heap(best.begin(), best.end(), closer);
      best.back() = candidate;
      std::push_heap(best.begin(), best.end(), closer);
    }

    const double diff = query[node.axis] - p[node.axis];
    const int near = diff <= 0.0 ? node.left : node.right;
    const int far = diff <= 0.0 ? node.right : node.left;
    self(self, near);
    if (best.size() < k || diff * diff <= best.front().distance_sq) self(self, far);
  };
  visit(visit, root_);

  std::sort_heap(best.begin(), best.end(), closer);
  return best;
}

std::vector<KdTree::Neighbor> KdTree::radius_search(const Vec3& query, double radius) const {
  std::vector<Neighbor> found;
  if (root_ < 0 || radius < 0.0) return found;
  const double r2 = radius * radius;

  auto visit = [&](auto&& self, int node_id) -> void {
    if (node_id < 0) return;
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    const Vec3& p = points_[node.point];
    const double d2 = (p - query).squaredNorm();
    if (d2 <= r2) found.push_back({node.point, d2});
    const double diff = query[node.axis] - p[node.axis];
    const int near = diff <= 0.0 ? node.left : node.right;
    const int far = diff <= 0.0 ? node.right : node.left;
    self(self, near);
    if (diff * diff <= r2) self(self, far);
  };
  visit(visit, root_);

  std::sort(found.begin(), found.end(), closer);
  return found;
}

}  // namespace skidnav
