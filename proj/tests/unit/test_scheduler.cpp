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

#include "semota/appendix.hpp"
#include "semota/approx_scheduler.hpp"
#include "semota/channel_stats.hpp"
#include "semota/dp_scheduler.hpp"
#include "semota/error.hpp"
#include "semota/gram.hpp"
#include "semota/horizon.hpp"
#include "semota/rng.hpp"
#include "support/oracles.hpp"

using namespace semota;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

Matrix plant_a() {
  Matrix a(3, 3);
  a << 1.04, 0.03, 0.01, 0.22, 0.48, 0.03, 0.021, 0.004, 0.78;
  return a;
}

Matrix random_spd(Eigen::Index n, RngStream& rng) {
  const Matrix b = rng.normal_matrix(n, n);
  return b * b.transpose() / static_cast<double>(n) + 0.1 * Matrix::Identity(n, n);
}

ChannelStats stats_of(double abar, double bbar) {
  ChannelStats s;
  s.alpha_bar = abar;
  s.beta_bar = bbar;
  return s;
}

oracle::QaInputs qa_inputs(const HorizonContext& ctx, const ChannelStats& st) {
  oracle::QaInputs in;
  in.a = ctx.plant.a();
  in.w = ctx.plant.w();
  in.power = ctx.suite.power_traces();
  in.horizon = ctx.horizon;
  in.slot = ctx.slot;
  in.gamma = ctx.gamma;
  in.alpha_bar = st.alpha_bar;
  in.beta_bar = st.beta_bar;
  return in;
}

// Scalar plant with one sensor, C = 1 and H = hbar.
struct ScalarCase {
  PlantModel plant;
  SensorSuite suite{{scalar(1.0)}, 1, 1};
  ChannelDraw draw;
  ScalarCase(double a, double w, double hbar)
      : plant(scalar(a), scalar(w)), draw(make_channel_draw(suite, {scalar(hbar)})) {}
};

}  // namespace

TEST_CASE("gram decomposition examples") {
  SECTION("nobody active") {
    const GramDecomposition d = gram_decompose(Matrix::Zero(2, 3));
    CHECK(d.rank == 0);
    CHECK(d.psi.isZero());
    CHECK(d.projector().isZero());
  }
  SECTION("single observed direction") {
    Matrix g(2, 2);
    g << 1, 0, 0, 0;
    const GramDecomposition d = gram_decompose(g);
    CHECK_THAT(d.psi(0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(d.psi(1), WithinAbs(0.0, 1e-15));
    CHECK(d.rank == 1);
    Matrix pi = Matrix::Zero(2, 2);
    pi(0, 0) = 1;
    CHECK(d.projector() == pi);
  }
  SECTION("sorted descending") {
    Matrix g(2, 2);
    g << 2, 0, 0, 3;
    const GramDecomposition d = gram_decompose(g);
    CHECK_THAT(d.psi(0), WithinRel(9.0, 1e-14));
    CHECK_THAT(d.psi(1), WithinRel(4.0, 1e-14));
    CHECK(d.rank == 2);
  }
}

TEST_CASE("gram decomposition fidelity on random draws") {
  RngStream rng(41, "test");
  for (int i = 0; i < 1000; ++i) {
    const auto s = static_cast<Eigen::Index>(1 + rng.uniform_index(4));
    const auto n_r = static_cast<Eigen::Index>(1 + rng.uniform_index(4));
    const Matrix g = rng.normal_matrix(n_r, s);
    const GramDecomposition d = gram_decompose(g);
    const Matrix gram = g.transpose() * g;
    CHECK(relative_difference(d.reconstruct(), gram) <= 1e-8);
    CHECK(relative_difference(d.u * d.u.transpose(), Matrix::Identity(s, s)) <= 1e-10);
    for (Eigen::Index j = 0; j < s; ++j) {
      CHECK(d.psi(j) >= -1e-9 * d.psi(0));
      if (j + 1 < s) CHECK(d.psi(j) >= d.psi(j + 1));
      CHECK((d.psi(j) > 1e-9 * d.psi(0)) == (j < d.rank));
    }
    CHECK(d.rank <= std::min(s, n_r));
  }
}

TEST_CASE("alpha and beta examples") {
  const Matrix a2 = 2.0 * Matrix::Identity(2, 2);
  GramDecomposition d{Matrix::Identity(2, 2), Vector::Zero(2), 0};
  SECTION("full rank gives alpha 0") {
    d.psi << 3, 1;
    d.rank = 2;
    CHECK(alpha_of(d, a2) == 0.0);
  }
  SECTION("rank 0 gives ||A||^2 and beta 0") {
    Matrix a(2, 2);
    a << 1, 2, 0, 1;
    CHECK_THAT(alpha_of(d, a), WithinRel(spectral_norm(a) * spectral_norm(a), 1e-12));
    CHECK(beta_of(d, a) == 0.0);
  }
  SECTION("half observed") {
    d.psi << 1, 0;
    d.rank = 1;
    CHECK_THAT(alpha_of(d, a2), WithinRel(4.0, 1e-14));
  }
  SECTION("beta hand values") {
    GramDecomposition one{Matrix::Identity(1, 1), Vector::Constant(1, 4.0), 1};
    CHECK_THAT(beta_of(one, scalar(2.0)), WithinRel(1.0, 1e-14));
    d.psi << 2, 1;
    d.rank = 2;
    CHECK_THAT(beta_of(d, Matrix::Identity(2, 2)), WithinRel(1.5, 1e-14));
  }
}

TEST_CASE("alpha and beta match the SVD oracle") {
  RngStream rng(43, "test");
  for (int i = 0; i < 300; ++i) {
    const auto s = static_cast<Eigen::Index>(1 + rng.uniform_index(4));
    const auto n_r = static_cast<Eigen::Index>(1 + rng.uniform_index(3));
    const Matrix g = rng.normal_matrix(n_r, s);
    const Matrix a = rng.normal_matrix(s, s);
    const GramDecomposition d = gram_decompose(g);
    CHECK_THAT(alpha_of(d, a), WithinAbs(oracle::alpha(g, a, 1e-9), 1e-9 * (1 + a.squaredNorm())));
    const double b = oracle::beta(g, a, 1e-9);
    CHECK_THAT(beta_of(d, a), WithinRel(b, 1e-8));
  }
}

TEST_CASE("channel statistics") {
  SECTION("full-rank Grams give alpha_bar 0") {
    RngStream rng(1, "sensors");
    const SensorSuite suite = SensorSuite::random_gaussian(3, 2, 2, rng);
    const PlantModel plant(Matrix::Identity(2, 2) * 1.1, Matrix::Identity(2, 2));
    const ChannelStats st = estimate_channel_stats(plant, suite, 2, 2000, 7);
    CHECK(st.full_rank_fraction == 1.0);
    CHECK(st.alpha_bar <= 1e-9);
    CHECK(st.beta_bar > 0.0);
  }
  SECTION("deterministic for a fixed seed") {
    RngStream rng(2, "sensors");
    const SensorSuite suite = SensorSuite::random_gaussian(4, 2, 3, rng);
    const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
    const ChannelStats a = estimate_channel_stats(plant, suite, 2, 3000, 99);
    const ChannelStats b = estimate_channel_stats(plant, suite, 2, 3000, 99);
    CHECK(a.alpha_bar == b.alpha_bar);
    CHECK(a.beta_bar == b.beta_bar);
    CHECK(a.seed == 99);
    CHECK(a.n_samples == 3000);
  }
  SECTION("alpha_bar converges with the default plant") {
    RngStream rng(3, "sensors");
    const SensorSuite suite = SensorSuite::random_gaussian(4, 2, 3, rng);
    const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
    const ChannelStats a = estimate_channel_stats(plant, suite, 2, 10000, 5);
    const ChannelStats b = estimate_channel_stats(plant, suite, 2, 20000, 5);
    CHECK(std::abs(b.alpha_bar - a.alpha_bar) <= 0.05 * a.alpha_bar);
  }
  SECTION("beta_bar converges when it is finite") {
    // E[1/psi] is finite only with enough receive antennas (N_r >= S + 2 here).
    RngStream rng(4, "sensors");
    const SensorSuite suite = SensorSuite::random_gaussian(2, 2, 2, rng);
    const PlantModel plant(Matrix::Identity(2, 2), Matrix::Identity(2, 2));
    const ChannelStats a = estimate_channel_stats(plant, suite, 7, 10000, 5);
    const ChannelStats b = estimate_channel_stats(plant, suite, 7, 20000, 5);
    CHECK(std::abs(b.beta_bar - a.beta_bar) <= 0.05 * a.beta_bar);
  }
}

TEST_CASE("Q^a examples") {
  SECTION("terminal slot reduces to four terms") {
    const ScalarCase c(2.0, 1.0, 3.0);
    const HorizonContext ctx(c.plant, c.suite, 1, 2, 1, 0.0);
    CHECK_THAT(qa_value(scalar(1.0), ScheduleDecision::all_active(1), c.draw, ctx, stats_of(0.5, 2.0)),
               WithinRel(2.4, 1e-14));
    const HorizonContext g(c.plant, c.suite, 1, 2, 1, 0.7);
    CHECK_THAT(qa_value(scalar(1.0), ScheduleDecision::all_active(1), c.draw, g, stats_of(0.5, 2.0)),
               WithinRel(2.4 + 0.7, 1e-14));
  }
  SECTION("nobody active at the terminal slot") {
    RngStream rng(5, "test");
    const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
    const SensorSuite suite = SensorSuite::random_gaussian(2, 2, 3, rng);
    const ChannelDraw draw = draw_channels(suite, 2, rng);
    const HorizonContext ctx(plant, suite, 2, 5, 4, 0.4);
    const Matrix sigma = random_spd(3, rng);
    const double expect = sigma.trace() + (plant_a() * sigma * plant_a().transpose()).trace() + 3.0;
    CHECK_THAT(qa_value(sigma, ScheduleDecision::none(2), draw, ctx, stats_of(0.6, 1.0)),
               WithinRel(expect, 1e-13));
  }
}

TEST_CASE("Q^a matches the direct formula") {
  RngStream rng(47, "test");
  for (int i = 0; i < 200; ++i) {
    const auto s = static_cast<Eigen::Index>(1 + rng.uniform_index(3));
    const auto m = 1 + rng.uniform_index(4);
    const PlantModel plant(rng.normal_matrix(s, s), random_spd(s, rng));
    const SensorSuite suite = SensorSuite::random_gaussian(m, 2, s, rng);
    const ChannelDraw draw = draw_channels(suite, 2, rng);
    const int horizon = 1 + static_cast<int>(rng.uniform_index(12));
    const int slot = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(horizon)));
    const HorizonContext ctx(plant, suite, 2, horizon, slot, rng.uniform());
    const ChannelStats st = stats_of(1.4 * rng.uniform(), 3.0 * rng.uniform());
    const Matrix sigma = random_spd(s, rng);
    const ScheduleDecision delta = ScheduleDecision::from_mask(rng.next_u64() & ((1u << m) - 1), m);
    const double expect = oracle::qa(sigma, delta, draw, qa_inputs(ctx, st));
    CHECK_THAT(qa_value(sigma, delta, draw, ctx, st), WithinRel(expect, 1e-9));
  }
}

TEST_CASE("exact SemOTA attains the enumerated minimum") {
  RngStream rng(53, "test");
  const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
  for (int i = 0; i < 100; ++i) {
    const auto m = 1 + rng.uniform_index(4);
    const SensorSuite suite = SensorSuite::random_gaussian(m, 2, 3, rng);
    const ChannelDraw draw = draw_channels(suite, 2, rng);
    const HorizonContext ctx(plant, suite, 2, 10, static_cast<int>(rng.uniform_index(10)),
                             0.4 * rng.uniform());
    const ChannelStats st = stats_of(0.6, 1.0);
    const Matrix sigma = random_spd(3, rng);
    const SemotaResult r = semota_solve(sigma, draw, ctx, st, SemotaMode::kExact);
    const auto [best, arg] = oracle::qa_minimum(sigma, draw, qa_inputs(ctx, st));
    CHECK_THAT(r.qa, WithinRel(best, 1e-9));
    CHECK(r.evaluations == (std::size_t{1} << m));
  }
}

TEST_CASE("semantic threshold form holds at the exact optimum") {
  RngStream rng(59, "test");
  const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = 4;
    const SensorSuite suite = SensorSuite::random_gaussian(m, 2, 3, rng);
    const ChannelDraw draw = draw_channels(suite, 2, rng);
    const double gamma = 0.5 * rng.uniform();
    const HorizonContext ctx(plant, suite, 2, 8, static_cast<int>(rng.uniform_index(8)), gamma);
    const ChannelStats st = stats_of(0.6, 1.0);
    const Matrix sigma = random_spd(3, rng);
    const ScheduleDecision d = semota_schedule(sigma, draw, ctx, st, SemotaMode::kExact);
    // Q^a without the current-slot power term.
    const auto gain_part = [&](const ScheduleDecision& x) {
      return qa_value(sigma, x, draw, ctx, st) - gamma * suite.proxy_power(x);
    };
    for (std::size_t j = 0; j < m; ++j) {
      ScheduleDecision on = d, off = d;
      on.set(j, true);
      off.set(j, false);
      const double benefit = gain_part(off) - gain_part(on);
      if (d[j]) {
        CHECK(benefit >= gamma * suite.power_trace(j) - 1e-9);
      } else {
        CHECK(benefit <= gamma * suite.power_trace(j) + 1e-9);
      }
    }
  }
}

TEST_CASE("SemOTA schedule edge cases") {
  RngStream rng(61, "test");
  const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
  const SensorSuite suite = SensorSuite::random_gaussian(4, 2, 3, rng);
  const ChannelDraw draw = draw_channels(suite, 2, rng);
  const ChannelStats st = stats_of(0.6, 1.0);
  const Matrix sigma = random_spd(3, rng);
  SECTION("free transmission never does worse than all active") {
    const HorizonContext ctx(plant, suite, 2, 5, 0, 0.0);
    const SemotaResult r = semota_solve(sigma, draw, ctx, st, SemotaMode::kExact);
    CHECK(r.qa <= qa_value(sigma, ScheduleDecision::all_active(4), draw, ctx, st));
  }
  SECTION("prohibitive power cost silences everyone") {
    const double scale = (plant_a() * sigma * plant_a().transpose()).trace() + 5 * 3.0;
    double min_power = suite.power_trace(0);
    for (std::size_t m = 1; m < 4; ++m) min_power = std::min(min_power, suite.power_trace(m));
    const HorizonContext ctx(plant, suite, 2, 5, 4, 10.0 * scale / min_power);
    CHECK(semota_schedule(sigma, draw, ctx, st, SemotaMode::kExact) == ScheduleDecision::none(4));
  }
  SECTION("a useless sensor stays off") {
    std::vector<Matrix> c = suite.observations();
    c.push_back(Matrix::Zero(2, 3));
    const SensorSuite five(c, 2, 3);
    std::vector<Matrix> h = draw.h;
    h.push_back(Matrix::Identity(2, 2));
    const ChannelDraw d5 = make_channel_draw(five, h);
    const HorizonContext ctx(plant, five, 2, 5, 0, 0.0);
    CHECK_FALSE(semota_schedule(sigma, d5, ctx, st, SemotaMode::kExact)[4]);
  }
  SECTION("exact mode refuses too many sensors") {
    const HorizonContext ctx(plant, suite, 2, 5, 0, 0.4);
    SemotaOptions opt;
    opt.exhaustive_cap = 3;
    CHECK_THROWS_AS(semota_solve(sigma, draw, ctx, st, SemotaMode::kExact, opt), SizeError);
  }
}

TEST_CASE("greedy SemOTA is stationary and no better than exact") {
  RngStream rng(67, "test");
  const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
  for (int i = 0; i < 40; ++i) {
    const SensorSuite suite = SensorSuite::random_gaussian(6, 2, 3, rng);
    const ChannelDraw draw = draw_channels(suite, 2, rng);
    const HorizonContext ctx(plant, suite, 2, 10, static_cast<int>(rng.uniform_index(10)),
                             0.4 * rng.uniform());
    const ChannelStats st = stats_of(0.6, 1.0);
    const Matrix sigma = random_spd(3, rng);
    const SemotaResult exact = semota_solve(sigma, draw, ctx, st, SemotaMode::kExact);
    const SemotaResult greedy = semota_solve(sigma, draw, ctx, st, SemotaMode::kGreedy);
    CHECK(greedy.qa >= exact.qa - 1e-9);
    for (const SemotaResult* r : {&exact, &greedy}) {
      CHECK_THAT(qa_value(sigma, r->delta, draw, ctx, st), WithinRel(r->qa, 1e-12));
      for (std::size_t j = 0; j < 6; ++j) {
        ScheduleDecision flip = r->delta;
        flip.set(j, !flip[j]);
        CHECK(qa_value(sigma, flip, draw, ctx, st) >= r->qa - 1e-9);
      }
    }
  }
}

TEST_CASE("DP future cost") {
  const MonteCarloConfig mc{64, 1e7};
  SECTION("zero at the terminal slot") {
    const ScalarCase c(2.0, 1.0, 3.0);
    const HorizonContext ctx(c.plant, c.suite, 1, 4, 3, 0.4);
    RngStream rng(1, "dp");
    const Estimate d = dp_delta(scalar(1.0), ScheduleDecision::all_active(1), c.draw, ctx, mc, rng);
    CHECK(d.value == 0.0);
    CHECK(d.se == 0.0);
  }
  SECTION("bounded by the idle branch one step before the end") {
    RngStream srng(2, "sensors");
    const SensorSuite suite = SensorSuite::random_gaussian(1, 2, 3, srng);
    const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
    RngStream rng(3, "dp");
    const ChannelDraw draw = draw_channels(suite, 2, rng);
    const HorizonContext ctx(plant, suite, 2, 3, 1, 0.0);
    const Matrix sigma = random_spd(3, rng);
    const ScheduleDecision all = ScheduleDecision::all_active(1);
    const Matrix next = riccati_map(sigma, draw.aggregate(all), plant.a()) + plant.w();
    const double idle = (plant.a() * next * plant.a().transpose()).trace();
    CHECK(dp_delta(sigma, all, draw, ctx, mc, rng).value <= idle + 1e-12);
  }
  SECTION("scalar recursion agrees with an independent estimate") {
    const double a = 1.2, w = 1.0, gamma = 0.4, h0 = 0.8;
    const ScalarCase c(a, w, h0);
    const HorizonContext ctx(c.plant, c.suite, 1, 3, 0, gamma);
    RngStream rng(11, "dp");
    const Estimate d = dp_delta(scalar(1.0), ScheduleDecision::all_active(1), c.draw, ctx,
                                MonteCarloConfig{256, 1e7}, rng);
    const Estimate o = oracle::scalar_delta_k0(a, w, 1.0, gamma, 1.0, true, h0, 200000, 12);
    INFO("dp " << d.value << " +- " << d.se << ", oracle " << o.value << " +- " << o.se);
    CHECK(std::abs(d.value - o.value) <= 3.0 * std::hypot(d.se, o.se));
  }
  SECTION("budget guard") {
    RngStream srng(4, "sensors");
    const SensorSuite suite = SensorSuite::random_gaussian(3, 2, 3, srng);
    const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
    RngStream rng(5, "dp");
    const ChannelDraw draw = draw_channels(suite, 2, rng);
    const HorizonContext ctx(plant, suite, 2, 6, 0, 0.4);
    CHECK_THROWS_AS(dp_delta(Matrix::Identity(3, 3), ScheduleDecision::all_active(3), draw, ctx,
                             mc, rng),
                    SizeError);
  }
}

TEST_CASE("DP Q-function") {
  const MonteCarloConfig mc{64, 1e7};
  SECTION("terminal Q equals terminal Q^a") {
    RngStream rng(7, "test");
    const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
    const SensorSuite suite = SensorSuite::random_gaussian(3, 2, 3, rng);
    const ChannelDraw draw = draw_channels(suite, 2, rng);
    const HorizonContext ctx(plant, suite, 2, 4, 3, 0.4);
    const Matrix sigma = random_spd(3, rng);
    const ScheduleDecision d = ScheduleDecision::from_mask(0b101, 3);
    CHECK(q_value(sigma, d, draw, ctx, mc, rng).value ==
          qa_value(sigma, d, draw, ctx, stats_of(0.6, 1.0)));
  }
  SECTION("no sensors, two slots, unrolled by hand") {
    const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
    const SensorSuite none(std::vector<Matrix>{}, 2, 3);
    RngStream rng(8, "dp");
    const ChannelDraw draw = draw_channels(none, 2, rng);
    const HorizonContext ctx(plant, none, 2, 2, 0, 0.4);
    RngStream srng(9, "test");
    const Matrix sigma = random_spd(3, srng);
    const Matrix& a = plant.a();
    const Matrix f = a * sigma * a.transpose();
    const double expect = sigma.trace() + f.trace() + 2 * 3.0 + (a * (f + plant.w()) * a.transpose()).trace();
    CHECK_THAT(q_value(sigma, ScheduleDecision(0), draw, ctx, mc, rng).value, WithinRel(expect, 1e-12));
  }
  SECTION("scalar oracle: activate below the 3.6 threshold") {
    const ScalarCase c(2.0, 1.0, 3.0);
    RngStream rng(10, "dp");
    const HorizonContext cheap(c.plant, c.suite, 1, 3, 2, 0.4);
    CHECK(dp_optimal_schedule(scalar(1.0), c.draw, cheap, mc, rng) == ScheduleDecision::all_active(1));
    const HorizonContext dear(c.plant, c.suite, 1, 3, 2, 5.0);
    CHECK(dp_optimal_schedule(scalar(1.0), c.draw, dear, mc, rng) == ScheduleDecision::none(1));
  }
  SECTION("free transmission with complementary sensors activates both") {
    const PlantModel plant(Matrix::Identity(2, 2) * 1.1, Matrix::Identity(2, 2));
    Matrix c1 = Matrix::Zero(2, 2), c2 = Matrix::Zero(2, 2);
    c1(0, 0) = 1;
    c2(1, 1) = 1;
    const SensorSuite suite({c1, c2}, 2, 2);
    const ChannelDraw draw = make_channel_draw(suite, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)});
    const HorizonContext ctx(plant, suite, 2, 3, 2, 0.0);
    RngStream rng(12, "dp");
    CHECK(dp_optimal_schedule(Matrix::Identity(2, 2), draw, ctx, mc, rng) ==
          ScheduleDecision::all_active(2));
  }
  SECTION("the oracle returns the minimizer of its own Q estimates") {
    RngStream rng(13, "test");
    const PlantModel plant(plant_a(), Matrix::Identity(3, 3));
    const SensorSuite suite = SensorSuite::random_gaussian(2, 2, 3, rng);
    const ChannelDraw draw = draw_channels(suite, 2, rng);
    const HorizonContext ctx(plant, suite, 2, 3, 1, 0.4);
    const Matrix sigma = random_spd(3, rng);
    RngStream start(14, "dp");
    RngStream run = start;
    const DpResult r = dp_solve(sigma, draw, ctx, mc, run);
    for (std::uint64_t mask = 0; mask < 4; ++mask) {
      RngStream local = start;
      const Estimate q = q_value(sigma, ScheduleDecision::from_mask(mask, 2), draw, ctx, mc, local);
      CHECK(r.q.value <= q.value);
    }
  }
}

TEST_CASE("appendix split") {
  RngStream rng(71, "test");
  SECTION("full rank keeps everything observable") {
    const Matrix sigma = random_spd(3, rng);
    const GramDecomposition d = gram_decompose(rng.normal_matrix(4, 3));
    REQUIRE(d.rank == 3);
    const AppendixSplit s = appendix_split(sigma, d);
    CHECK(relative_difference(s.sigma_o, sigma) <= 1e-10);
    CHECK(s.sigma_u.norm() <= 1e-10 * sigma.norm());
  }
  SECTION("rank 0 leaves everything unobservable") {
    const Matrix sigma = random_spd(3, rng);
    const AppendixSplit s = appendix_split(sigma, gram_decompose(Matrix::Zero(2, 3)));
    CHECK(s.sigma_o.isZero());
    CHECK(s.sigma_u == sigma);
  }
  SECTION("rank 2 against the Schur complement") {
    for (int i = 0; i < 100; ++i) {
      const Matrix sigma = random_spd(3, rng);
      const GramDecomposition d = gram_decompose(rng.normal_matrix(2, 3));
      REQUIRE(d.rank == 2);
      const AppendixSplit s = appendix_split(sigma, d);
      CHECK(relative_difference(s.sigma_o + s.sigma_u, sigma) <= 1e-8);
      const Matrix rotated_u = d.u * s.sigma_u * d.u.transpose();
      CHECK((d.psi.asDiagonal() * rotated_u).norm() <= 1e-8 * spectral_norm(sigma));
      CHECK(rotated_u.topLeftCorner(2, 2).norm() <= 1e-8 * sigma.norm());
      CHECK(relative_difference(s.sigma_u, oracle::schur_unobserved(sigma, d.u, d.rank)) <= 1e-8);
      CHECK(min_eigenvalue(s.sigma_u) >= -1e-10 * sigma.norm());
      CHECK(min_eigenvalue(s.sigma_o) >= -1e-10 * sigma.norm());
    }
  }
}
