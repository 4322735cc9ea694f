// SPDX-License-Identifier: Apache-2.0
//
// semota - multi-sensor remote state estimation over MIMO fading channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "semota/baselines.hpp"
#include "semota/error.hpp"
#include "semota/rng.hpp"

using namespace semota;

namespace {

BaselineConfig aloha_cfg(double sigma1, double p = 1.0) {
  return {BaselineKind::kAloha, sigma1, 1.0, p};
}

BaselineConfig tdma_cfg(double sigma2) { return {BaselineKind::kTdma, 1.0, sigma2, 1.0}; }

std::vector<Vector> measurements(std::initializer_list<double> norms) {
  std::vector<Vector> z;
  for (double n : norms) z.push_back(Vector::Constant(1, n));
  return z;
}

}  // namespace

TEST_CASE("slotted ALOHA") {
  RngStream rng(1, "policy");
  SECTION("nobody eligible") {
    const auto z = measurements({0.1, 0.5, 0.9});
    const AlohaOutcome r = aloha_schedule(z, aloha_cfg(1.0), rng);
    CHECK_FALSE(r.delta.any());
    CHECK_FALSE(r.transmitters.any());
    CHECK_FALSE(r.collided);
  }
  SECTION("a lone eligible sensor gets through") {
    const auto z = measurements({0.1, 2.0, 0.9});
    const AlohaOutcome r = aloha_schedule(z, aloha_cfg(1.0), rng);
    CHECK(r.delta.str() == "0,1,0");
    CHECK(r.transmitters == r.delta);
    CHECK_FALSE(r.collided);
  }
  SECTION("two eligible sensors collide and both pay") {
    const auto z = measurements({3.0, 2.0, 0.9});
    const AlohaOutcome r = aloha_schedule(z, aloha_cfg(1.0), rng);
    CHECK(r.collided);
    CHECK_FALSE(r.delta.any());
    CHECK(r.transmitters.str() == "1,1,0");
  }
  SECTION("threshold is inclusive") {
    const auto z = measurements({1.0});
    CHECK(aloha_schedule(z, aloha_cfg(1.0), rng).delta.str() == "1");
  }
  SECTION("one uniform draw per sensor per slot") {
    RngStream a(2, "policy");
    RngStream b(2, "policy");
    aloha_schedule(measurements({0.0, 5.0, 0.0, 5.0}), aloha_cfg(1.0, 0.5), a);
    for (int i = 0; i < 4; ++i) b.uniform();
    CHECK(a.next_u64() == b.next_u64());
  }
  SECTION("the estimator never sees more than one sensor") {
    RngStream r(3, "policy");
    for (int i = 0; i < 2000; ++i) {
      std::vector<Vector> z;
      for (int m = 0; m < 6; ++m) z.push_back(r.normal_vector(2) * 2.0);
      const AlohaOutcome o = aloha_schedule(z, aloha_cfg(2.0, 0.3), r);
      CHECK(o.delta.active_count() <= 1);
      CHECK(o.collided == (o.transmitters.active_count() >= 2));
      for (std::size_t m = 0; m < 6; ++m) {
        if (o.transmitters[m]) CHECK(z[m].norm() >= 2.0);
      }
    }
  }
}

TEST_CASE("covariance-triggered TDMA") {
  RngStream rng(4, "policy");
  SECTION("below the threshold nobody transmits") {
    CHECK_FALSE(tdma_schedule(Matrix::Identity(3, 3) * 0.5, tdma_cfg(1.0), 4, rng).any());
  }
  SECTION("at or above the threshold exactly one transmits") {
    CHECK(tdma_schedule(Matrix::Identity(3, 3), tdma_cfg(1.0), 4, rng).active_count() == 1);
    CHECK(tdma_schedule(Matrix::Identity(3, 3) * 7, tdma_cfg(1.0), 4, rng).active_count() == 1);
  }
  SECTION("uses the spectral norm") {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 0) = 0.9;
    s(1, 1) = 0.9;
    // Frobenius norm 1.27 would trigger, the spectral norm 0.9 does not.
    CHECK_FALSE(tdma_schedule(s, tdma_cfg(1.0), 3, rng).any());
  }
  SECTION("selection is uniform") {
    const std::size_t m = 5;
    const int n = 100000;
    std::vector<int> counts(m, 0);
    for (int i = 0; i < n; ++i) {
      const ScheduleDecision d = tdma_schedule(Matrix::Identity(2, 2) * 3, tdma_cfg(1.0), m, rng);
      for (std::size_t j = 0; j < m; ++j) counts[j] += d[j];
    }
    const double p = 1.0 / m;
    for (int c : counts) CHECK(std::abs(c - n * p) <= 4 * std::sqrt(n * p * (1 - p)));
  }
}

TEST_CASE("over-the-air aggregation baseline") {
  CHECK(ota_schedule(3).str() == "1,1,1");
  CHECK(ota_schedule(0).size() == 0);
}

TEST_CASE("baseline configuration validation") {
  CHECK_NOTHROW(aloha_cfg(0.0).validate());
  CHECK_THROWS_AS(aloha_cfg(-1.0).validate(), ConfigError);
  CHECK_THROWS_AS(tdma_cfg(-0.5).validate(), ConfigError);
  CHECK_THROWS_AS(aloha_cfg(1.0, 0.0).validate(), ConfigError);
  CHECK_THROWS_AS(aloha_cfg(1.0, 1.5).validate(), ConfigError);
}

TEST_CASE("threshold grid search") {
  SECTION("grid has 19 points on [1, 10] step 0.5") {
    const auto g = threshold_grid(1.0, 10.0, 0.5);
    REQUIRE(g.size() == 19);
    CHECK(g.front() == 1.0);
    CHECK(g.back() == 10.0);
    int calls = 0;
    grid_search_threshold(BaselineKind::kTdma, 1.0, 10.0, 0.5, [&](double) {
      ++calls;
      return 1.0;
    });
    CHECK(calls == 19);
  }
  SECTION("constant objective picks the lower end") {
    const auto r = grid_search_threshold(BaselineKind::kAloha, 1.0, 10.0, 0.5,
                                         [](double) { return 2.0; });
    CHECK(r.best_threshold == 1.0);
  }
  SECTION("quadratic objective") {
    const auto r = grid_search_threshold(BaselineKind::kAloha, 1.0, 10.0, 0.5,
                                         [](double s) { return (s - 3.5) * (s - 3.5); });
    CHECK(r.best_threshold == 3.5);
    CHECK(r.best_value == 0.0);
    CHECK(r.evaluations.size() == 19);
  }
  SECTION("non-finite points are skipped") {
    const auto r = grid_search_threshold(BaselineKind::kAloha, 1.0, 3.0, 1.0, [](double s) {
      return s < 2.5 ? std::numeric_limits<double>::quiet_NaN() : s;
    });
    CHECK(r.best_threshold == 3.0);
  }
  SECTION("all non-finite fails") {
    CHECK_THROWS_AS(grid_search_threshold(BaselineKind::kTdma, 1.0, 3.0, 1.0,
                                          [](double) { return std::numeric_limits<double>::infinity(); }),
                    SearchError);
  }
  SECTION("bad grids are rejected") {
    CHECK_THROWS(threshold_grid(2.0, 1.0, 0.5));
    CHECK_THROWS(threshold_grid(1.0, 2.0, 0.0));
  }
}
