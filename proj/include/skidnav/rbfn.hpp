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
#ifndef SKIDNAV_RBFN_HPP
#define SKIDNAV_RBFN_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace skidnav::rbfn {

/// Gaussian radial basis network over a scalar input (side velocity).
class RbfNetwork {
public:
  RbfNetwork(std::vector<double> centers, std::vector<double> widths);
  RbfNetwork(std::vector<double> centers, double width);

  const std::vector<double>& centers() const { return centers_; }
  const std::vector<double>& widths() const { return widths_; }
  std::size_t size() const { return centers_.size(); }

private:
  std::vector<double> centers_;
  std::vector<double> widths_;
};

struct RbfOutput {
  std::vector<double> phi;
  double norm = 0.0;
  double norm_sq = 0.0;
};

/// phi_k = exp(-(v - alpha_k)^2 / gamma_k^2).
RbfOutput activate(const RbfNetwork& net, double v);

/// Centers 2u - 1, one independent draw per neuron, from a seeded mt19937_64.
RbfNetwork init_stochastic(std::size_t n, std::uint64_t seed, double width);

}  // namespace skidnav::rbfn

#endif  // SKIDNAV_RBFN_HPP
