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
#include "skidnav/rbfn.hpp"

#include "skidnav/error.hpp"
#include "skidnav/synthetic.hpp"

#include <cmath>
#include <random>

namespace skidnav::rbfn {

RbfNetwork::RbfNetwork(std::vector<double> centers, std::vector<double> widths)
    : centers_(std::move(centers)), widths_(std::move(widths)) {
  if (centers_.empty()) fail(ErrorCode::InvalidArgument, "network needs at least one neuron");
  if (widths_.size() != centers_.size())
    fail(ErrorCode::InvalidArgument, "one width per center required");
  for (double c : centers_)
    if (!std::isfinite(c)) fail(ErrorCode::InvalidArgument, "center is not finite");
  for (double w : widths_)
    if (!(w > 0.0) || !std::isfinite(w)) fail(ErrorCode::InvalidArgument, "width must be > 0");
}

RbfNetwork::RbfNetwork(std::vector<double> centers, double width)
    : RbfNetwork(centers, std::vector<double>(centers.size(), width)) {}

RbfOutput activate(const RbfNetwork& net, double v) {
  if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "activation input is not finite");
  RbfOutput out;
  out.phi.resize(net.size());
  for (std::size_t k = 0; k < net.size(); ++k) {
    const double d = (v - net.centers()[k]) / net.widths()[k];
    out.phi[k] = std::exp(-d * d);
    out.norm_sq += out.phi[k] * out.phi[k];
  }
  out.norm = std::sqrt(out.norm_sq);
  return out;
}

RbfNetwork init_stochastic(std::size_t n, std::uint64_t seed, double width) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "network needs at least one neuron");
  std::mt19937_64 rng(seed);
  std::vector<double> centers(n);
  for (double& c : centers) c = 2.0 * synthetic::unit_uniform(rng) - 1.0;
  return RbfNetwork(std::move(centers), width);
}

}  // namespace skidnav::rbfn
