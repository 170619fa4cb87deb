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

#ifndef CROWDNORM_ANALYTIC_HPP
#define CROWDNORM_ANALYTIC_HPP

#include <vector>

#include "crowdnorm/market.hpp"

namespace crowdnorm {

// Discounted long-term utility per reputation state,
// v(theta) = u(theta) + delta * sum_theta' P(theta'|theta) v(theta').
struct ValueFunction {
  std::vector<double> value;  // index theta = 0..K
};

// Long-run reputation mass per state. `unique` is false when the chain has
// more than one recurrent class, in which case `mass` is the limiting
// time-average from a uniform initial distribution. `irreducible` is true
// when every state communicates with every other.
struct ReputationDistribution {
  std::vector<double> mass;
  bool unique = true;
  bool irreducible = true;
};

// One-shot deviation margins for every active state. margin(theta) is the
// net gain of complying for one period (the cost already subtracted);
// the protocol is sustainable iff every margin is >= 0.
struct IncentiveReport {
  int threshold = 0;           // first active state
  std::vector<double> margin;  // index theta - threshold
  bool sustainable = false;
  double min_margin = 0.0;
  int min_state = 0;

  double at(int theta) const {
    return margin[static_cast<size_t>(theta - threshold)];
  }
};

// Per-period utility of a compliant worker: share*price - cost when
// active, 0 when isolated.
double one_period_utility(int theta, const SocialNorm& norm,
                          const MarketParams& params);

// Solves the (K+1)-dimensional linear system (I - delta P) v = u by direct
// elimination. Under `strategy`, an active state playing low effort earns
// share*price (free ride). Requires discount < 1.
ValueFunction solve_value_function(const SocialNorm& norm,
                                   const MarketParams& params,
                                   const WorkerStrategy& strategy);

// Values for a unit active reward with the compliant strategy; the real
// value function is (share*price - cost) times this, which the sharing
// ratio optimizer exploits.
std::vector<double> unit_reward_values(const SocialNorm& norm,
                                       const MarketParams& params);

// Normalized fixed point of eta P = eta.
ReputationDistribution stationary_distribution(const SocialNorm& norm,
                                               const MarketParams& params,
                                               const WorkerStrategy& strategy);

// Expected one-period utility of workers plus requesters, averaged over
// the stationary population of compliant workers. The website's share is
// not counted.
double social_welfare(const SocialNorm& norm, const MarketParams& params);

// Same average under an arbitrary strategy: an active low-effort state
// contributes share*price - price (the worker keeps the wage, the
// requester gets nothing).
double strategy_welfare(const SocialNorm& norm, const MarketParams& params,
                        const WorkerStrategy& strategy);

// Website revenue per worker per period under compliance:
// (active mass) * (1 - share) * price.
double revenue(const SocialNorm& norm, const MarketParams& params);

// One-shot deviation margins of the compliant strategy:
//   theta >  h: delta (1-2 alpha) [v(min(K, theta+1)) - v(theta-1)] - cost
//   theta == h: delta (1-2 alpha) [v(min(K, h+1)) - v(0)] - cost
IncentiveReport incentive_margins(const SocialNorm& norm,
                                  const MarketParams& params);

// Marginal utilities dv(theta) = v(min(K, theta+1)) - v(theta), with
// dv(K) = 0 by the reputation ceiling.
std::vector<double> marginal_utilities(const SocialNorm& norm,
                                       const MarketParams& params);

// Optimal policy of the single-worker reputation MDP, computed by policy
// iteration to exact convergence. Ties between actions resolve to high
// effort, so indifference counts as compliant.
WorkerStrategy best_response_policy(const SocialNorm& norm,
                                    const MarketParams& params);

}  // namespace crowdnorm

#endif  // CROWDNORM_ANALYTIC_HPP
