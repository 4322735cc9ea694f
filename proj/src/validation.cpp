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

#include "semota/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "semota/accumulate.hpp"
#include "semota/approx_scheduler.hpp"
#include "semota/channel_stats.hpp"
#include "semota/config.hpp"
#include "semota/dp_scheduler.hpp"
#include "semota/episode.hpp"
#include "semota/error.hpp"
#include "semota/estimator.hpp"
#include "semota/monte_carlo.hpp"

namespace semota {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

int uniform_int(RngStream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(hi - lo + 1)));
}

// B B^T / n + floor * I.
Matrix random_spd(Eigen::Index n, RngStream& rng, double floor) {
  const Matrix b = rng.normal_matrix(n, n);
  return symmetrize(b * b.transpose() / static_cast<double>(n) +
                    floor * Matrix::Identity(n, n));
}

ScheduleDecision random_delta(std::size_t m, RngStream& rng) {
  ScheduleDecision d(m);
  for (std::size_t i = 0; i < m; ++i) d.set(i, rng.uniform() < 0.5);
  return d;
}

SensorSuite random_suite(std::size_t m, Eigen::Index n_t, Eigen::Index s, RngStream& rng) {
  return SensorSuite::random_gaussian(m, n_t, s, rng);
}

}  // namespace

Matrix joseph_posterior(const Matrix& sigma, const ScheduleDecision& delta, const ChannelDraw& draw) {
  const EstimatorState prior = EstimatorState::initial(Vector::Zero(sigma.rows()), sigma);
  return update(prior, Vector::Zero(draw.n_r), delta, draw).sigma_post;
}

CheckResult check_riccati_equivalence(std::size_t instances, std::uint64_t seed,
                                      const PosteriorFn& posterior) {
  const auto t0 = Clock::now();
  RngStream rng(seed, "validate-riccati");
  double worst = 0.0;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    const int s = uniform_int(rng, 1, 4);
    const auto m = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const int n_t = uniform_int(rng, 1, 3);
    const int n_r = uniform_int(rng, 1, 3);
    const PlantModel plant(rng.normal_matrix(s, s), random_spd(s, rng, 0.1));
    const SensorSuite suite = random_suite(m, n_t, s, rng);
    const Matrix sigma = random_spd(s, rng, 0.05);
    const ScheduleDecision delta = random_delta(m, rng);
    const ChannelDraw draw = draw_channels(suite, n_r, rng);

    const Matrix post = posterior(sigma, delta, draw);
    const double e1 = relative_difference(post, information_update(sigma, delta, draw));

    EstimatorState est = EstimatorState::initial(Vector::Zero(s), sigma);
    est.sigma_post = post;
    const Matrix next = predict(est, plant).sigma_prior;
    const double e2 = relative_difference(next, riccati_map(sigma, delta, draw, plant) + plant.w());

    const double e = std::max(e1, e2);
    worst = std::max(worst, e);
    if (!(e <= 1e-8)) ++failures;
  }
  CheckResult r;
  r.name = "riccati-equivalence";
  r.passed = failures == 0;
  r.metric = worst;
  r.detail = fmt("%.0f instances, %.0f above 1e-8, worst relative error %.3g",
                 static_cast<double>(instances), static_cast<double>(failures), worst);
  r.seconds = seconds_since(t0);
  return r;
}

CheckResult check_active_set_monotonicity(std::size_t instances, std::uint64_t seed) {
  const auto t0 = Clock::now();
  RngStream rng(seed, "validate-monotonicity");
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    const int s = uniform_int(rng, 1, 4);
    const auto m = static_cast<std::size_t>(uniform_int(rng, 2, 4));
    const int n_t = uniform_int(rng, 1, 2);
    const int n_r = uniform_int(rng, 1, 3);
    const Matrix a = rng.normal_matrix(s, s);
    const SensorSuite suite = random_suite(m, n_t, s, rng);
    const Matrix sigma = random_spd(s, rng, 0.05);
    const ChannelDraw draw = draw_channels(suite, n_r, rng);
    ScheduleDecision lo = random_delta(m, rng);
    ScheduleDecision hi = lo;
    for (std::size_t j = 0; j < m; ++j) {
      if (!lo[j] && rng.uniform() < 0.5) hi.set(j, true);
    }
    const double t_lo = riccati_map(sigma, draw.aggregate(lo), a).trace();
    const double t_hi = riccati_map(sigma, draw.aggregate(hi), a).trace();
    const double excess = t_hi - t_lo;
    worst = std::max(worst, excess);
    if (excess > 1e-9) ++violations;
  }
  CheckResult r;
  r.name = "active-set-monotonicity";
  r.passed = violations == 0;
  r.metric = static_cast<double>(violations);
  r.detail = fmt("%.0f instances, %.0f violations, largest trace increase %.3g",
                 static_cast<double>(instances), static_cast<double>(violations), worst);
  r.seconds = seconds_since(t0);
  return r;
}

CheckResult check_appendix_bound(std::size_t n_sigma, std::size_t draws,
                                 const std::vector<int>& sensor_counts,
                                 std::size_t stats_samples, std::uint64_t seed) {
  const auto t0 = Clock::now();
  const PlantModel plant(default_plant_matrix(), Matrix::Identity(3, 3));
  constexpr Eigen::Index kS = 3;
  constexpr Eigen::Index kNt = 2;
  constexpr Eigen::Index kNr = 2;
  std::size_t failures = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::string per_m;
  for (int m : sensor_counts) {
    RngStream suite_rng(derive_seed(seed, "validate-appendix-suite", static_cast<std::uint64_t>(m)),
                        "sensors");
    const SensorSuite suite = random_suite(static_cast<std::size_t>(m), kNt, kS, suite_rng);
    const ChannelStats stats =
        estimate_channel_stats(plant, suite, kNr, stats_samples,
                               derive_seed(seed, "validate-appendix-stats", static_cast<std::uint64_t>(m)));
    // One fixed set of draws, reused for every Sigma.
    RngStream draw_rng(derive_seed(seed, "validate-appendix-draws", static_cast<std::uint64_t>(m)),
                       "channel");
    const ScheduleDecision all = ScheduleDecision::all_active(suite.size());
    std::vector<Matrix> grams;
    grams.reserve(draws);
    for (std::size_t d = 0; d < draws; ++d) {
      const Matrix g = draw_channels(suite, kNr, draw_rng).aggregate(all);
      grams.push_back(g.transpose() * g);
    }
    RngStream sigma_rng(derive_seed(seed, "validate-appendix-sigma", static_cast<std::uint64_t>(m)),
                        "sigma");
    std::size_t m_fail = 0;
    for (std::size_t i = 0; i < n_sigma; ++i) {
      const double scale = 0.5 + 4.5 * sigma_rng.uniform();
      const Matrix sigma = scale * random_spd(kS, sigma_rng, 0.1);
      const Matrix sigma_inv = spd_inverse(sigma, "appendix-bound covariance");
      RunningStats tr;
      for (const Matrix& gram : grams) {
        const Matrix post = spd_inverse(symmetrize(sigma_inv + gram), "appendix-bound information matrix");
        tr.add((plant.a() * post * plant.a().transpose()).trace());
      }
      const double se = draws > 1 ? tr.standard_error() : 0.0;
      const double bound = stats.beta_bar + stats.alpha_bar * sigma.trace() + 3.0 * se;
      const double slack = (bound - tr.mean()) / bound;
      min_slack = std::min(min_slack, slack);
      if (!(tr.mean() <= bound)) ++m_fail;
    }
    failures += m_fail;
    per_m += fmt("; M=%.0f: alpha_bar=%.4g beta_bar=%.4g", m, stats.alpha_bar, stats.beta_bar);
    if (m_fail) per_m += fmt(", %.0f failures", static_cast<double>(m_fail));
  }
  CheckResult r;
  r.name = "appendix-bound";
  r.passed = failures == 0;
  r.metric = min_slack;
  r.detail = fmt("%.0f covariances x %.0f draws, smallest relative slack %.3g",
                 static_cast<double>(n_sigma), static_cast<double>(draws), min_slack) +
             per_m;
  r.seconds = seconds_since(t0);
  return r;
}

CheckResult check_q_below_qa(std::size_t instances, int n_mc, std::size_t stats_samples,
                             std::uint64_t seed) {
  const auto t0 = Clock::now();
  RngStream rng(seed, "validate-q-qa");
  std::size_t failures = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < instances; ++i) {
    const int s = uniform_int(rng, 1, 2);
    const auto m = static_cast<std::size_t>(uniform_int(rng, 1, 2));
    const int n_t = uniform_int(rng, 1, 2);
    const int n_r = uniform_int(rng, 1, 2);
    const int horizon = uniform_int(rng, 2, 3);
    const double gamma = 0.5 * rng.uniform();
    const Matrix a = rng.normal_matrix(s, s) * (0.8 / std::sqrt(static_cast<double>(s)));
    const PlantModel plant(a, random_spd(s, rng, 0.2));
    const SensorSuite suite = random_suite(m, n_t, s, rng);
    const Matrix sigma = random_spd(s, rng, 0.1);
    const ChannelDraw draw = draw_channels(suite, n_r, rng);
    const ScheduleDecision delta = random_delta(m, rng);
    const std::uint64_t sub = rng.next_u64();

    const HorizonContext ctx(plant, suite, n_r, horizon, 0, gamma);
    const ChannelStats stats = estimate_channel_stats(plant, suite, n_r, stats_samples, sub);
    RngStream mc_rng(sub, "dp");
    const Estimate q = q_value(sigma, delta, draw, ctx, MonteCarloConfig{n_mc, 1e7}, mc_rng);
    const double qa = qa_value(sigma, delta, draw, ctx, stats);
    const double gap = qa + 3.0 * q.se - q.value;
    min_gap = std::min(min_gap, gap);
    if (!(gap >= 0.0)) ++failures;
  }
  CheckResult r;
  r.name = "q-below-qa";
  r.passed = failures == 0;
  r.metric = min_gap;
  r.detail = fmt("%.0f instances, %.0f failures, smallest margin qa + 3SE - q = %.4g",
                 static_cast<double>(instances), static_cast<double>(failures), min_gap);
  r.seconds = seconds_since(t0);
  return r;
}

CheckResult check_certificate(std::size_t episodes, std::size_t stats_samples,
                              std::uint64_t seed, unsigned jobs) {
  const auto t0 = Clock::now();
  constexpr Eigen::Index kS = 3;
  constexpr std::size_t kM = 4;
  const PlantModel plant(default_plant_matrix(), Matrix::Identity(kS, kS));
  RngStream suite_rng(derive_seed(seed, "validate-certificate"), "sensors");
  Scenario sc(plant, random_suite(kM, 2, kS, suite_rng));
  sc.n_r = 2;
  sc.horizon = 10;
  sc.gamma = 0.4;
  sc.policy = Policy::kSemotaExact;
  sc.stats = estimate_channel_stats(plant, sc.suite, sc.n_r, stats_samples,
                                    derive_seed(seed, "validate-certificate-stats"));
  const MonteCarloResult res =
      monte_carlo(sc, static_cast<int>(episodes), derive_seed(seed, "validate-certificate-episodes"),
                  jobs, /*keep_episodes=*/true);
  RunningStats diff;
  for (const auto& ep : res.episodes) diff.add(ep.total_cost - ep.min_qa_first_slot);
  const double se = episodes > 1 ? diff.standard_error() : 0.0;
  const double cost = res.total_cost.mean;
  const double qa0 = res.min_qa_first_slot.mean;
  CheckResult r;
  r.name = "certificate";
  r.passed = cost <= qa0 + 3.0 * se;
  r.metric = qa0 + 3.0 * se - cost;
  r.detail = fmt("mean cost %.4g vs mean min Q^a_0 %.4g (paired SE %.3g)", cost, qa0, se) +
             fmt(", %.0f episodes", static_cast<double>(episodes));
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CheckResult> run_validation(bool quick, std::uint64_t seed, unsigned jobs) {
  std::vector<CheckResult> out;
  const auto guarded = [&](const std::string& name, const std::function<CheckResult()>& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      CheckResult r;
      r.name = name;
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
      out.push_back(r);
    }
  };
  guarded("riccati-equivalence", [&] { return check_riccati_equivalence(200, seed); });
  guarded("active-set-monotonicity", [&] { return check_active_set_monotonicity(500, seed); });
  guarded("appendix-bound", [&] {
    return quick ? check_appendix_bound(20, 2000, {2, 4}, 2000, seed)
                 : check_appendix_bound(100, 10000, {2, 4}, kDefaultStatsSamples, seed);
  });
  guarded("q-below-qa", [&] {
    return quick ? check_q_below_qa(6, 16, 2000, seed)
                 : check_q_below_qa(30, 64, kDefaultStatsSamples, seed);
  });
  guarded("certificate", [&] {
    return quick ? check_certificate(100, 2000, seed, jobs)
                 : check_certificate(500, kDefaultStatsSamples, seed, jobs);
  });
  return out;
}

}  // namespace semota
