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
#include "skidnav/synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace skidnav;

namespace {

std::vector<KdTree::Neighbor> brute_knn(const std::vector<Vec3>& pts, const Vec3& q, std::size_t k) {
  std::vector<KdTree::Neighbor> all;
  for (std::size_t i = 0; i < pts.size(); ++i) all.push_back({i, (pts[i] - q).squaredNorm()});
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.distance_sq != b.distance_sq ? a.distance_sq < b.distance_sq : a.index < b.index;
  });
  all.resize(std::min(k, all.size()));
  return all;
}

}  // namespace

TEST_SUITE("kdtree") {
  TEST_CASE("knn matches brute force") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Vec3> pts;
      const std::size_t n = 1 + static_cast<std::size_t>(synthetic::unit_uniform(rng) * 400);
      for (std::size_t i = 0; i < n; ++i) {
        // Coarse grid so ties occur.
        pts.emplace_back(std::floor(synthetic::unit_uniform(rng) * 6), std::floor(synthetic::unit_uniform(rng) * 6),
                         std::floor(synthetic::unit_uniform(rng) * 6));
      }
      const KdTree tree(pts);
      for (int q = 0; q < 30; ++q) {
        const Vec3 query(synthetic::unit_uniform(rng) * 6, synthetic::unit_uniform(rng) * 6, synthetic::unit_uniform(rng) * 6);
        for (std::size_t k : {1u, 2u, 3u, 7u}) {
          const auto got = tree.knn(query, k);
          const auto want = brute_knn(pts, query, k);
          REQUIRE(got.size() == want.size());
          for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].index == want[i].index);
            CHECK(got[i].distance_sq == want[i].distance_sq);
          }
        }
      }
    }
  }

  TEST_CASE("radius search matches brute force") {
    std::mt19937_64 rng(4);
    std::vector<Vec3> pts;
    for (int i = 0; i < 300; ++i)
      pts.emplace_back(synthetic::unit_uniform(rng), synthetic::unit_uniform(rng), synthetic::unit_uniform(rng));
    const KdTree tree(pts);
    const Vec3 q(0.5, 0.5, 0.5);
    const auto got = tree.radius_search(q, 0.2);
    std::size_t expected = 0;
    for (const Vec3& p : pts) expected += (p - q).norm() <= 0.2 ? 1 : 0;
    CHECK(got.size() == expected);
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1].distance_sq <= got[i].distance_sq);
  }

  TEST_CASE("empty tree") {
    const KdTree tree;
    CHECK(tree.empty());
    CHECK(tree.knn(Vec3::Zero(), 3).empty());
    CHECK(tree.radius_search(Vec3::Zero(), 1.0).empty());
  }
}
