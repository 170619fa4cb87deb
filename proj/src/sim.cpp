// Copyright 2026 The crowdnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crowdnorm/sim.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "crowdnorm/analytic.hpp"
#include "crowdnorm/rng.hpp"

namespace crowdnorm {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

Action worker_action(const SimConfig& config, const WorkerStrategy& policy,
                     int theta) {
  switch (config.worker_policy) {
    case WorkerPolicyKind::kCompliant:
      return Action::kHigh;  // only active workers are matched
    case WorkerPolicyKind::kAllLow:
      return Action::kLow;
    case WorkerPolicyKind::kBestResponse:
    case WorkerPolicyKind::kFixed:
      return policy.at(theta);
  }
  return Action::kHigh;
}

}  // namespace

void SimConfig::validate() const {
  params.validate();
  worker_norm.validate();
  require(workers >= 1, "SimConfig.workers: must be >= 1");
  require(requesters >= workers,
          "SimConfig.requesters: must be >= workers");
  require(periods > burn_in && burn_in >= 0,
          "SimConfig.periods: must exceed burn_in");
  if (worker_policy == WorkerPolicyKind::kFixed)
    require(fixed_strategy.has_value(),
            "SimConfig.fixed_strategy: required for the fixed worker policy");
  if (requester_mode == RequesterMode::kStrategic) requester_norm.validate();
}

RequesterIncentives requester_margins(const SocialNorm& norm, double price,
                                      double benefit, double discount,
                                      double txn_prob) {
  norm.validate();
  require(discount >= 0.0 && discount < 1.0,
          "requester_margins: discount must lie in [0, 1)");
  require(txn_prob > 0.0 && txn_prob <= 1.0,
          "requester_margins: txn_prob must lie in (0, 1]");
  const int n = norm.state_count();

  // Compliant chain: isolated states climb one step per period; an active
  // requester transacts with probability txn_prob, pays, and moves up.
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd reward = Eigen::VectorXd::Zero(n);
  for (int theta = 0; theta < n; ++theta) {
    if (!norm.active(theta)) {
      system(theta, theta + 1) -= discount;
      continue;
    }
    const int up = std::min(norm.max_reputation, theta + 1);
    system(theta, up) -= discount * txn_prob;
    system(theta, theta) -= discount * (1.0 - txn_prob);
    reward(theta) = txn_prob * (benefit - price);
  }
  const Eigen::VectorXd v = system.partialPivLu().solve(reward);

  RequesterIncentives out;
  out.sustainable = true;
  for (int theta = norm.threshold; theta <= norm.max_reputation; ++theta) {
    const int up = std::min(norm.max_reputation, theta + 1);
    const int down = theta == norm.threshold ? 0 : theta - 1;
    const double margin = discount * (v(up) - v(down)) - price;
    out.margin.push_back(margin);
    if (margin < 0.0) out.sustainable = false;
  }
  return out;
}

std::optional<SocialNorm> design_requester_norm(double price, double benefit,
                                                double discount,
                                                double txn_prob, int k_max) {
  if (benefit <= price) return std::nullopt;  // posting never pays off
  for (int h = 1; h <= k_max; ++h) {
    const SocialNorm norm{h, h};
    if (requester_margins(norm, price, benefit, discount, txn_prob)
            .sustainable)
      return norm;
  }
  return std::nullopt;
}

SimResult run_simulation(const SimConfig& config) {
  config.validate();
  const SocialNorm& wnorm = config.worker_norm;
  const SocialNorm& rnorm = config.requester_norm;
  const MarketParams& params = config.params;
  const bool strategic = config.requester_mode == RequesterMode::kStrategic;

  WorkerStrategy policy =
      config.worker_policy == WorkerPolicyKind::kBestResponse
          ? best_response_policy(wnorm, params)
          : config.fixed_strategy.value_or(WorkerStrategy::compliant(wnorm));

  // Best-response requesters post only when their norm can hold them to
  // paying; otherwise the norm unravels and they stay out of the market.
  bool requesters_post = true;
  if (strategic &&
      config.requester_policy == RequesterPolicyKind::kBestResponse) {
    const double txn_prob =
        static_cast<double>(config.workers) / config.requesters;
    requesters_post =
        params.benefit > params.price &&
        requester_margins(rnorm, params.price, params.benefit,
                          config.requester_discount, txn_prob)
            .sustainable;
  }

  std::vector<int> worker_theta(static_cast<size_t>(config.workers),
                                wnorm.threshold);
  std::vector<int> requester_theta(static_cast<size_t>(config.requesters),
                                   rnorm.threshold);

  std::vector<Rng> worker_rng;
  worker_rng.reserve(static_cast<size_t>(config.workers));
  for (int i = 0; i < config.workers; ++i)
    worker_rng.emplace_back(
        substream_seed(config.seed, kWorkerStream, static_cast<unsigned>(i)));
  Rng match_rng(substream_seed(config.seed, kMatchingStream, 0));

  SimResult result;
  result.welfare.assign(static_cast<size_t>(config.periods), 0.0);
  result.revenue.assign(static_cast<size_t>(config.periods), 0.0);
  result.matches.assign(static_cast<size_t>(config.periods), 0);
  result.worker_utility.assign(static_cast<size_t>(config.workers), 0.0);
  result.requester_utility.assign(static_cast<size_t>(config.requesters), 0.0);
  result.reputation_hist.assign(static_cast<size_t>(wnorm.state_count()), 0.0);
  result.requesters_participate = requesters_post;

  std::vector<int> active_workers, open_tasks, next_worker_theta,
      next_requester_theta;
  double worker_weight = 1.0, requester_weight = 1.0;

  for (long t = 0; t < config.periods; ++t) {
    if (t >= config.burn_in)
      for (int theta : worker_theta)
        result.reputation_hist[static_cast<size_t>(theta)] += 1.0;

    active_workers.clear();
    for (int i = 0; i < config.workers; ++i)
      if (wnorm.active(worker_theta[static_cast<size_t>(i)]))
        active_workers.push_back(i);
    open_tasks.clear();
    if (requesters_post)
      for (int j = 0; j < config.requesters; ++j)
        if (!strategic || rnorm.active(requester_theta[static_cast<size_t>(j)]))
          open_tasks.push_back(j);

    const int paired = static_cast<int>(
        std::min(active_workers.size(), open_tasks.size()));
    // Uniform random injection of workers into tasks; when workers are in
    // surplus the idle ones are drawn uniformly as well.
    match_rng.shuffle_prefix(open_tasks, static_cast<size_t>(paired));
    if (active_workers.size() > open_tasks.size())
      match_rng.shuffle_prefix(active_workers, static_cast<size_t>(paired));

    next_worker_theta = worker_theta;
    next_requester_theta = requester_theta;

    double period_welfare = 0.0, period_revenue = 0.0;
    for (int m = 0; m < paired; ++m) {
      const int wi = active_workers[static_cast<size_t>(m)];
      const int rj = open_tasks[static_cast<size_t>(m)];
      const int wtheta = worker_theta[static_cast<size_t>(wi)];

      const Action action = worker_action(config, policy, wtheta);
      const bool pays =
          !strategic ||
          config.requester_policy != RequesterPolicyKind::kAlwaysDefect;
      const bool solved = action == Action::kHigh;
      const bool flip =
          worker_rng[static_cast<size_t>(wi)].bernoulli(params.error_rate);
      const Report report = solved != flip ? Report::kSolved : Report::kUnsolved;

      const double wage = pays ? params.share * params.price : 0.0;
      const double worker_u =
          wage - (action == Action::kHigh ? params.cost : 0.0);
      const double requester_u =
          (solved ? params.benefit : 0.0) - (pays ? params.price : 0.0);
      period_welfare += worker_u + requester_u;
      if (pays) period_revenue += (1.0 - params.share) * params.price;
      result.worker_utility[static_cast<size_t>(wi)] +=
          worker_weight * worker_u;
      result.requester_utility[static_cast<size_t>(rj)] +=
          requester_weight * requester_u;

      next_worker_theta[static_cast<size_t>(wi)] =
          reputation_update(wtheta, report, wnorm);
      if (strategic) {
        // Payments are verifiable, so the requester update carries no
        // report noise.
        const int rtheta = requester_theta[static_cast<size_t>(rj)];
        next_requester_theta[static_cast<size_t>(rj)] =
            pays ? std::min(rnorm.max_reputation, rtheta + 1)
                 : (rtheta == rnorm.threshold ? 0 : rtheta - 1);
      }
      // A solved task is replaced by a fresh one next period; an unsolved
      // task remains open. Either way the requester keeps one slot.
    }

    for (int i = 0; i < config.workers; ++i)
      if (!wnorm.active(worker_theta[static_cast<size_t>(i)]))
        next_worker_theta[static_cast<size_t>(i)] =
            worker_theta[static_cast<size_t>(i)] + 1;
    if (strategic)
      for (int j = 0; j < config.requesters; ++j)
        if (!rnorm.active(requester_theta[static_cast<size_t>(j)]))
          next_requester_theta[static_cast<size_t>(j)] =
              requester_theta[static_cast<size_t>(j)] + 1;

    worker_theta.swap(next_worker_theta);
    if (strategic) requester_theta.swap(next_requester_theta);

    result.welfare[static_cast<size_t>(t)] = period_welfare / config.workers;
    result.revenue[static_cast<size_t>(t)] = period_revenue / config.workers;
    result.matches[static_cast<size_t>(t)] = paired;
    worker_weight *= params.discount;
    requester_weight *= config.requester_discount;
  }

  const long samples = config.periods - config.burn_in;
  for (double& mass : result.reputation_hist)
    mass /= static_cast<double>(samples) * config.workers;
  result.mean_welfare =
      std::accumulate(result.welfare.begin() + config.burn_in,
                      result.welfare.end(), 0.0) /
      static_cast<double>(samples);
  result.mean_revenue =
      std::accumulate(result.revenue.begin() + config.burn_in,
                      result.revenue.end(), 0.0) /
      static_cast<double>(samples);
  return result;
}

SimResult simulate_strategic_requesters(const SimConfig& config) {
  require(config.requester_mode == RequesterMode::kStrategic,
          "simulate_strategic_requesters: requester_mode must be strategic");
  require(config.params.share == 1.0,
          "simulate_strategic_requesters: share must be 1");
  return run_simulation(config);
}

PriceCurve optimize_price(const SimConfig& base,
                          const std::vector<double>& price_grid,
                          double plateau_tolerance, int k_max) {
  require(!price_grid.empty(), "optimize_price: price grid is empty");
  PriceCurve curve;
  const double pareto = base.params.benefit - base.params.cost;
  for (double price : price_grid) {
    SimConfig config = base;
    config.requester_mode = RequesterMode::kStrategic;
    config.requester_policy = RequesterPolicyKind::kBestResponse;
    config.params.price = price;
    config.params.share = 1.0;

    const Intrinsics intrinsics{price, config.params.cost,
                                config.params.benefit, config.params.discount,
                                config.params.error_rate};
    const DesignResult worker_design = optimize_social_welfare(intrinsics, k_max);
    if (worker_design.sustainable) {
      config.worker_norm = worker_design.norm;
      config.worker_policy = WorkerPolicyKind::kCompliant;
    } else {
      // No sustainable worker norm: keep a minimal norm and let workers
      // best-respond (free ride).
      config.worker_norm = {1, 1};
      config.worker_policy = WorkerPolicyKind::kBestResponse;
    }
    const double txn_prob =
        static_cast<double>(config.workers) / config.requesters;
    config.requester_norm =
        design_requester_norm(price, config.params.benefit,
                              config.requester_discount, txn_prob, k_max)
            .value_or(SocialNorm{1, 1});

    const SimResult run = run_simulation(config);
    curve.price.push_back(price);
    curve.welfare.push_back(run.mean_welfare);
    curve.normalized.push_back(run.mean_welfare / pareto);
  }
  const double peak = *std::max_element(curve.welfare.begin(),
                                        curve.welfare.end());
  const double cutoff = peak - plateau_tolerance * pareto;
  for (size_t i = 0; i < curve.welfare.size(); ++i) {
    if (curve.welfare[i] >= cutoff) {
      curve.best_index = static_cast<int>(i);
      curve.best_price = curve.price[i];
      break;
    }
  }
  return curve;
}

}  // namespace crowdnorm
