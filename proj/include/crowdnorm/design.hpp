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

#ifndef CROWDNORM_DESIGN_HPP
#define CROWDNORM_DESIGN_HPP

#include <optional>
#include <string>
#include <vector>

#include "crowdnorm/analytic.hpp"
#include "crowdnorm/market.hpp"

namespace crowdnorm {

// The intrinsic parameters the designer cannot choose.
struct Intrinsics {
  double price = 5.0;
  double cost = 1.0;
  double benefit = 10.0;
  double discount = 0.8;
  double error_rate = 0.1;

  double cost_price_ratio() const { return cost / price; }
  MarketParams with_share(double share) const {
    return {price, cost, benefit, discount, error_rate, share};
  }
};

// Outcome of a design search. When no sustainable protocol exists the
// sentinel (K* = h* = 0, objective 0) is returned.
struct DesignResult {
  SocialNorm norm{0, 0};
  double share = 1.0;
  double objective = 0.0;
  bool sustainable = false;
  IncentiveReport margins;

  bool is_sentinel() const { return !sustainable; }
};

// A bracketed parameter threshold. `flips` records whether the predicate
// actually changes across the bracket; a degenerate probe (width 0,
// flips false) marks a threshold pinned at the domain boundary.
struct ThresholdProbe {
  std::string axis;
  double value = 0.0;
  double width = 0.0;
  bool flips = false;
};

// Integer frontier of Theorem-2 style threshold structure.
struct SustainabilityFrontier {
  std::optional<int> min_threshold;     // smallest sustainable h over all K
  std::optional<int> max_reputation;    // largest sustainable K over all h
  bool monotone = true;                 // no alternation along any scan
  int norms_checked = 0;
  int sustainable_count = 0;
};

// True when some norm with 1 <= h <= K <= k_max is sustainable at
// share = 1. `strict_hierarchy` restricts the family to K > h, where the
// warning-window phenomenon lives.
bool sustainable_protocol_exists(const Intrinsics& intrinsics, int k_max,
                                 bool strict_hierarchy = false);

// Welfare-optimal sustainable design at share = 1 (raising the share can
// only help welfare and incentives). Exhaustive over 1 <= h <= K <= k_max;
// ties break toward smaller h, then larger K.
DesignResult optimize_social_welfare(const Intrinsics& intrinsics, int k_max);

// Smallest sharing ratio satisfying every incentive constraint for a fixed
// norm, from the reward-linearity of the value function:
//   lambda_min = (c/p) * (1 + 1 / min_theta delta (1-2 alpha) unit-gap).
// `feasible` is false when even share = 1 cannot sustain the norm.
struct SharingRatio {
  double value = 1.0;
  bool feasible = false;
};
SharingRatio min_sharing_ratio(const SocialNorm& norm,
                               const Intrinsics& intrinsics);

// Revenue-optimal sustainable design: each candidate norm is priced at its
// minimum sharing ratio and the resulting revenue maximized.
DesignResult optimize_revenue(const Intrinsics& intrinsics, int k_max);

// Behavioral model for the unconstrained-revenue baseline. Workers always
// play their MDP best response; the optional filters impose the market's
// standing participation assumptions on top.
struct UnconstrainedModel {
  // Drop share grid points below cost/price (workers could never net a
  // positive wage from effort below it).
  bool worker_wage_floor = false;
  // Require the requesters' expected transaction utility to be positive
  // under the induced effort mix, else they stop posting.
  bool requester_participation = false;
};

struct UnconstrainedRevenue {
  double revenue = 0.0;
  SocialNorm norm{0, 0};
  double share = 0.0;
  bool found = false;
};

// Best revenue over protocols that are NOT sustainable, with workers
// playing the best-response policy.
UnconstrainedRevenue max_revenue_unconstrained(
    const Intrinsics& intrinsics, int k_max,
    const std::vector<double>& share_grid, const UnconstrainedModel& model);

// Scans h at each K and K at each h (at the given share) and reports the
// extremal sustainable parameters plus whether sustainability flipped at
// most once along every scan.
SustainabilityFrontier sustainability_frontier(const MarketParams& params,
                                               int k_max);

enum class ExistenceAxis { kCostPriceRatio, kDiscount, kErrorRate };

// Bisection thresholds of sustainable-protocol existence at share = 1.
// The r and discount axes yield one probe; the error axis yields the upper
// threshold followed by the lower one (degenerate at 0 when existence
// extends to error-free reports, which happens whenever the K = h family
// is sustainable there).
std::vector<ThresholdProbe> existence_thresholds(
    ExistenceAxis axis, const Intrinsics& intrinsics, double tolerance,
    int k_max, bool strict_hierarchy = false);

}  // namespace crowdnorm

#endif  // CROWDNORM_DESIGN_HPP
