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
#include "skidnav/error.hpp"
#include "skidnav/rbfn.hpp"

#include <doctest.h>

#include <cmath>

using namespace skidnav;
using namespace skidnav::rbfn;

TEST_SUITE("rbfn") {
  TEST_CASE("activation examples") {
    const RbfNetwork net({0.2, -0.4}, 0.13);
    auto out = activate(net, 0.2);
    CHECK(out.phi[0] == 1.0);
    out = activate(net, 0.2 + 0.13);
    CHECK(out.phi[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(out.phi[0] == doctest::Approx(0.367879).epsilon(1e-6));
    CHECK(out.norm_sq == doctest::Approx(out.phi[0] * out.phi[0] + out.phi[1] * out.phi[1]));
  }

  TEST_CASE("all centers at the input give norm 3") {
    const RbfNetwork net(std::vector<double>(9, 0.3), 0.13);
    const auto out = activate(net, 0.3);
    CHECK(out.norm == doctest::Approx(3.0));
    CHECK(out.norm_sq == doctest::Approx(9.0));
  }

  TEST_CASE("stochastic init") {
    const auto a = init_stochastic(9, 42, 0.13);
    const auto b = init_stochastic(9, 42, 0.13);
    CHECK(a.centers() == b.centers());
    CHECK(a.size() == 9);
    for (double w : a.widths()) CHECK(w == 0.13);
    CHECK(init_stochastic(9, 43, 0.13).centers() != a.centers());
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const RbfNetwork net = init_stochastic(9, seed, 0.13);
      for (double c : net.centers()) {
        CHECK(c >= -1.0);
        CHECK(c <= 1.0);
      }
    }
  }

  TEST_CASE("invalid networks") {
    CHECK_THROWS_AS(RbfNetwork({}, 0.1), Error);
    CHECK_THROWS_AS(RbfNetwork({0.0}, 0.0), Error);
    CHECK_THROWS_AS(RbfNetwork({0.0, 1.0}, std::vector<double>{0.1}), Error);
  }
}
