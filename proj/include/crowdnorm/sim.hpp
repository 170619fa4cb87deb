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

#ifndef CROWDNORM_SIM_HPP
#define CROWDNORM_SIM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "crowdnorm/design.hpp"
#include "crowdnorm/market.hpp"

namespace crowdnorm {

enum class WorkerPolicyKind { kCompliant, kBestResponse, kAllLow, kFixed };

enum class RequesterMode { kPassive, kStrategic };

// Strategic requester behavior. Best-response requesters comply when their
// norm is sustainable and otherwise stop posting; the always-defect policy
// exists to exercise the punishment mechanics.
enum class RequesterPolicyKind { kCompliant, kBestResponse, kAlwaysDefect };

struct SimConfig {
  int workers = 200;
  int requesters = 800;
  long periods = 10000;
  long burn_in = 1000;
  std::uint64_t seed = 1;

  WorkerPolicyKind worker_policy = WorkerPolicyKind::kCompliant;
  std::optional<WorkerStrategy> fixed_strategy;  // for kFixed

  RequesterMode requester_mode = RequesterMode::kPassive;
  RequesterPolicyKind requester_policy = RequesterPolicyKind::kCompliant;

  SocialNorm worker_norm{1, 1};
  SocialNorm requester_norm{1, 1};
  MarketParams params;
  double requester_discount = 0.5;

  void validate() const;
};

struct SimResult {
  std::vector<double> reputation_hist;  // time-averaged worker distribution
  std::vector<double> welfare;          // per period, per worker
  std::vector<double> revenue;          // per period, per worker
  std::vector<int> matches;             // transactions per period
  std::vector<double> worker_utility;     // realized discounted utility
  std::vector<double> requester_utility;  // realized discounted utility
  double mean_welfare = 0.0;  // time average past burn-in
  double mean_revenue = 0.0;
  bool requesters_participate = true;
};

// Discrete-time market run. Every period each active worker is matched
// uniformly at random to a distinct open task (surplus workers idle),
// plays its policy's action, and the requester's report -- the true
// outcome flipped with probability error_rate -- drives the reputation
// update. Identical configs and seeds give identical results.
SimResult run_simulation(const SimConfig& config);

// Strategic-requester run per the two-sided norm: requires strategic mode
// and share = 1. Payment observations are error-free, isolated requesters
// cannot post, and a withdrawn task is reposted on reactivation.
SimResult simulate_strategic_requesters(const SimConfig& config);

// One-shot deviation analysis of the requester norm on the per-period
// chain with transaction probability txn_prob and verifiable payments.
struct RequesterIncentives {
  std::vector<double> margin;  // active states h..K
  bool sustainable = false;
};
RequesterIncentives requester_margins(const SocialNorm& norm, double price,
                                      double benefit, double discount,
                                      double txn_prob);

// Smallest sustainable requester norm (the noiseless payment chain makes
// warning windows worthless, so the search is over K = h designs).
std::optional<SocialNorm> design_requester_norm(double price, double benefit,
                                                double discount,
                                                double txn_prob, int k_max);

struct PriceCurve {
  std::vector<double> price;
  std::vector<double> welfare;     // simulated mean welfare per worker
  std::vector<double> normalized;  // welfare / (benefit - cost)
  double best_price = 0.0;
  int best_index = -1;
};

// Sweeps the price grid, redesigning both norms at every point and
// simulating the strategic market. The reported optimum is the smallest
// price within `plateau_tolerance * (V - c)` of the curve maximum, which
// resolves simulated plateau noise toward the smaller price.
PriceCurve optimize_price(const SimConfig& base,
                          const std::vector<double>& price_grid,
                          double plateau_tolerance, int k_max);

}  // namespace crowdnorm

#endif  // CROWDNORM_SIM_HPP
