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

#include "crowdnorm/design.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace crowdnorm {

namespace {

double active_mass(const SocialNorm& norm, const ReputationDistribution& eta) {
  double mass = 0.0;
  for (int theta = norm.threshold; theta <= norm.max_reputation; ++theta)
    mass += eta.mass[static_cast<size_t>(theta)];
  return mass;
}

// Fixed lexicographic tie-break: objective desc, h asc, K desc.
bool improves(const DesignResult& candidate, const DesignResult& best) {
  if (!best.sustainable) return true;
  if (candidate.objective != best.objective)
    return candidate.objective > best.objective;
  if (candidate.norm.threshold != best.norm.threshold)
    return candidate.norm.threshold < best.norm.threshold;
  return candidate.norm.max_reputation > best.norm.max_reputation;
}

bool bisect(double lo, double hi, double tolerance,
            const std::function<bool(double)>& predicate, bool value_at_lo,
            double* out_value, double* out_width) {
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (predicate(mid) == value_at_lo)
      lo = mid;
    else
      hi = mid;
  }
  *out_value = 0.5 * (lo + hi);
  *out_width = hi - lo;
  return true;
}

}  // namespace

bool sustainable_protocol_exists(const Intrinsics& intrinsics, int k_max,
                                 bool strict_hierarchy) {
  const MarketParams params = intrinsics.with_share(1.0);
  for (int k = 1; k <= k_max; ++k) {
    // The tallest threshold is the most robust candidate; scan it first.
    for (int h = k; h >= 1; --h) {
      if (strict_hierarchy && h == k) continue;
      if (incentive_margins({k, h}, params).sustainable) return true;
    }
  }
  return false;
}

DesignResult optimize_social_welfare(const Intrinsics& intrinsics,
                                     int k_max) {
  if (k_max < 1) throw std::invalid_argument("optimize_social_welfare: k_max");
  const MarketParams params = intrinsics.with_share(1.0);
  DesignResult best;
  for (int k = 1; k <= k_max; ++k) {
    for (int h = 1; h <= k; ++h) {
      const SocialNorm norm{k, h};
      IncentiveReport margins = incentive_margins(norm, params);
      if (!margins.sustainable) continue;
      DesignResult candidate{norm, 1.0, social_welfare(norm, params), true,
                             std::move(margins)};
      if (improves(candidate, best)) best = std::move(candidate);
    }
  }
  return best;
}

SharingRatio min_sharing_ratio(const SocialNorm& norm,
                               const Intrinsics& intrinsics) {
  norm.validate();
  const double pull =
      intrinsics.discount * (1.0 - 2.0 * intrinsics.error_rate);
  if (pull <= 0.0) return {1.0, false};

  const auto w = unit_reward_values(norm, intrinsics.with_share(1.0));
  double min_gain = 0.0;
  for (int theta = norm.threshold; theta <= norm.max_reputation; ++theta) {
    const int up = std::min(norm.max_reputation, theta + 1);
    const int down = theta == norm.threshold ? 0 : theta - 1;
    const double gain = pull * (w[static_cast<size_t>(up)] -
                                w[static_cast<size_t>(down)]);
    if (theta == norm.threshold || gain < min_gain) min_gain = gain;
  }
  if (min_gain <= 0.0) return {1.0, false};
  const double lambda = intrinsics.cost_price_ratio() * (1.0 + 1.0 / min_gain);
  return {lambda, lambda <= 1.0 + 1e-12};
}

DesignResult optimize_revenue(const Intrinsics& intrinsics, int k_max) {
  if (k_max < 1) throw std::invalid_argument("optimize_revenue: k_max");
  DesignResult best;
  for (int k = 1; k <= k_max; ++k) {
    for (int h = 1; h <= k; ++h) {
      const SocialNorm norm{k, h};
      const SharingRatio lambda = min_sharing_ratio(norm, intrinsics);
      if (!lambda.feasible) continue;
      const double share = std::min(lambda.value, 1.0);
      const MarketParams params = intrinsics.with_share(share);
      DesignResult candidate{norm, share, revenue(norm, params), true,
                             incentive_margins(norm, params)};
      if (improves(candidate, best)) best = std::move(candidate);
    }
  }
  return best;
}

UnconstrainedRevenue max_revenue_unconstrained(
    const Intrinsics& intrinsics, int k_max,
    const std::vector<double>& share_grid, const UnconstrainedModel& model) {
  UnconstrainedRevenue best;
  const double ratio = intrinsics.cost_price_ratio();
  for (double share : share_grid) {
    if (share < 0.0 || share > 1.0)
      throw std::invalid_argument(
          "max_revenue_unconstrained: share_grid entry outside [0, 1]");
    if (model.worker_wage_floor && share < ratio) continue;
    const MarketParams params = intrinsics.with_share(share);
    for (int k = 1; k <= k_max; ++k) {
      for (int h = 1; h <= k; ++h) {
        const SocialNorm norm{k, h};
        const WorkerStrategy response = best_response_policy(norm, params);
        if (response == WorkerStrategy::compliant(norm)) continue;  // sustainable
        const auto eta = stationary_distribution(norm, params, response);
        const double active = active_mass(norm, eta);
        if (model.requester_participation) {
          double high_mass = 0.0;
          for (int theta = h; theta <= k; ++theta)
            if (response.at(theta) == Action::kHigh)
              high_mass += eta.mass[static_cast<size_t>(theta)];
          const double solve_rate = active > 0.0 ? high_mass / active : 0.0;
          // Indifferent requesters (exactly zero expected utility) count
          // as non-posting.
          if (solve_rate * intrinsics.benefit - intrinsics.price <= 1e-9)
            continue;
        }
        const double rev = active * (1.0 - share) * intrinsics.price;
        if (!best.found || rev > best.revenue) {
          best = {rev, norm, share, true};
        }
      }
    }
  }
  return best;
}

SustainabilityFrontier sustainability_frontier(const MarketParams& params,
                                               int k_max) {
  params.validate();
  SustainabilityFrontier out;
  std::vector<std::vector<bool>> sustainable(
      static_cast<size_t>(k_max + 1));
  for (int k = 1; k <= k_max; ++k) {
    sustainable[static_cast<size_t>(k)].assign(static_cast<size_t>(k + 1),
                                               false);
    for (int h = 1; h <= k; ++h) {
      const bool ok = incentive_margins({k, h}, params).sustainable;
      sustainable[static_cast<size_t>(k)][static_cast<size_t>(h)] = ok;
      ++out.norms_checked;
      if (!ok) continue;
      ++out.sustainable_count;
      if (!out.min_threshold || h < *out.min_threshold) out.min_threshold = h;
      if (!out.max_reputation || k > *out.max_reputation)
        out.max_reputation = k;
    }
  }
  // Threshold structure: along each h-scan (fixed K) sustainability may
  // only switch off->on; along each K-scan (fixed h) only on->off.
  for (int k = 1; k <= k_max && out.monotone; ++k)
    for (int h = 2; h <= k; ++h)
      if (sustainable[static_cast<size_t>(k)][static_cast<size_t>(h - 1)] &&
          !sustainable[static_cast<size_t>(k)][static_cast<size_t>(h)]) {
        out.monotone = false;
        break;
      }
  for (int h = 1; h <= k_max && out.monotone; ++h)
    for (int k = h + 1; k <= k_max; ++k)
      if (!sustainable[static_cast<size_t>(k - 1)][static_cast<size_t>(h)] &&
          sustainable[static_cast<size_t>(k)][static_cast<size_t>(h)]) {
        out.monotone = false;
        break;
      }
  return out;
}

std::vector<ThresholdProbe> existence_thresholds(ExistenceAxis axis,
                                                 const Intrinsics& intrinsics,
                                                 double tolerance, int k_max,
                                                 bool strict_hierarchy) {
  if (tolerance <= 0.0)
    throw std::invalid_argument("existence_thresholds: tolerance");

  const auto exists_at = [&](ExistenceAxis which, double x) {
    Intrinsics probe = intrinsics;
    switch (which) {
      case ExistenceAxis::kCostPriceRatio:
        probe.cost = x * probe.price;
        break;
      case ExistenceAxis::kDiscount:
        probe.discount = x;
        break;
      case ExistenceAxis::kErrorRate:
        probe.error_rate = x;
        break;
    }
    return sustainable_protocol_exists(probe, k_max, strict_hierarchy);
  };

  std::vector<ThresholdProbe> probes;
  if (axis == ExistenceAxis::kCostPriceRatio) {
    const double lo = 1e-9, hi = 1.0 - 1e-9;
    const bool at_lo = exists_at(axis, lo), at_hi = exists_at(axis, hi);
    ThresholdProbe probe{"r", 0.0, hi - lo, false};
    if (at_lo != at_hi) {
      probe.flips = true;
      bisect(lo, hi, tolerance,
             [&](double x) { return exists_at(axis, x); }, at_lo,
             &probe.value, &probe.width);
    }
    probes.push_back(probe);
    return probes;
  }
  if (axis == ExistenceAxis::kDiscount) {
    const double lo = 0.0, hi = 1.0 - 1e-9;
    const bool at_lo = exists_at(axis, lo), at_hi = exists_at(axis, hi);
    ThresholdProbe probe{"delta", 0.0, hi - lo, false};
    if (at_lo != at_hi) {
      probe.flips = true;
      bisect(lo, hi, tolerance,
             [&](double x) { return exists_at(axis, x); }, at_lo,
             &probe.value, &probe.width);
    }
    probes.push_back(probe);
    return probes;
  }

  // Error axis: existence holds on a window, so probe both ends around a
  // feasible interior point.
  const double hi = 0.5 - 1e-9;
  double feasible = -1.0;
  for (double x : {0.05, 0.1, 0.15, 0.2, 0.25, 0.02, 0.3, 0.01, 0.35, 0.4,
                   0.005, 0.45}) {
    if (exists_at(axis, x)) {
      feasible = x;
      break;
    }
  }
  if (feasible < 0.0) {
    probes.push_back({"alpha-upper", 0.0, hi, false});
    probes.push_back({"alpha-lower", 0.0, hi, false});
    return probes;
  }

  ThresholdProbe upper{"alpha-upper", 0.0, 0.0, true};
  bisect(feasible, hi, tolerance,
         [&](double x) { return exists_at(axis, x); }, true, &upper.value,
         &upper.width);
  probes.push_back(upper);

  ThresholdProbe lower{"alpha-lower", 0.0, 0.0, false};
  if (exists_at(axis, 0.0)) {
    // Existence extends to error-free reports: the lower threshold sits on
    // the boundary with nothing to bracket.
    lower.value = 0.0;
    lower.width = 0.0;
  } else {
    lower.flips = true;
    bisect(0.0, feasible, tolerance,
           [&](double x) { return exists_at(axis, x); }, false, &lower.value,
           &lower.width);
  }
  probes.push_back(lower);
  return probes;
}

}  // namespace crowdnorm
