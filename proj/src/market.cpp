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

#include "crowdnorm/market.hpp"

#include <stdexcept>

namespace crowdnorm {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void MarketParams::validate() const {
  require(price > 0.0, "MarketParams.price: must be > 0");
  require(cost > 0.0, "MarketParams.cost: must be > 0");
  require(cost < benefit, "MarketParams.benefit: must exceed cost (V > c)");
  require(discount >= 0.0 && discount < 1.0,
          "MarketParams.discount: must lie in [0, 1)");
  require(error_rate >= 0.0 && error_rate < 0.5,
          "MarketParams.error_rate: must lie in [0, 1/2)");
  require(share >= 0.0 && share <= 1.0,
          "MarketParams.share: must lie in [0, 1]");
}

void SocialNorm::validate() const {
  require(max_reputation >= 1, "SocialNorm.max_reputation: must be >= 1");
  require(threshold >= 1 && threshold <= max_reputation,
          "SocialNorm.threshold: must lie in [1, max_reputation]");
}

WorkerStrategy::WorkerStrategy(const SocialNorm& norm, Action fill)
    : threshold_(norm.threshold),
      actions_(static_cast<size_t>(norm.active_count()), fill) {
  norm.validate();
}

Action WorkerStrategy::at(int theta) const {
  if (theta < threshold_ || theta > max_reputation())
    throw std::invalid_argument("WorkerStrategy.at: state is not active");
  return actions_[static_cast<size_t>(theta - threshold_)];
}

void WorkerStrategy::set(int theta, Action a) {
  if (theta < threshold_ || theta > max_reputation())
    throw std::invalid_argument("WorkerStrategy.set: state is not active");
  actions_[static_cast<size_t>(theta - threshold_)] = a;
}

std::string WorkerStrategy::to_string() const {
  std::string s;
  s.reserve(actions_.size());
  for (Action a : actions_) s.push_back(a == Action::kHigh ? 'H' : 'L');
  return s;
}

Action social_strategy(int theta, const SocialNorm& norm) {
  norm.validate();
  if (theta < 0 || theta > norm.max_reputation)
    throw std::invalid_argument("social_strategy: reputation out of range");
  return norm.active(theta) ? Action::kHigh : Action::kLow;
}

int reputation_update(int theta, Report report, const SocialNorm& norm) {
  norm.validate();
  if (theta < 0 || theta > norm.max_reputation)
    throw std::invalid_argument("reputation_update: reputation out of range");
  if (!norm.active(theta)) return theta + 1;  // isolated workers tick up
  if (report == Report::kSolved)
    return std::min(norm.max_reputation, theta + 1);
  return theta == norm.threshold ? 0 : theta - 1;
}

StagePayoffs stage_payoffs(Action action, const MarketParams& params) {
  params.validate();
  const double wage = params.share * params.price;
  if (action == Action::kHigh)
    return {params.benefit - params.price, wage - params.cost};
  return {-params.price, wage};
}

Matrix transition_matrix(const SocialNorm& norm, const MarketParams& params,
                         const WorkerStrategy& strategy) {
  norm.validate();
  params.validate();
  const int k = norm.max_reputation;
  const double alpha = params.error_rate;
  Matrix p(norm.state_count());
  for (int theta = 0; theta <= k; ++theta) {
    if (!norm.active(theta)) {
      p(theta, theta + 1) = 1.0;
      continue;
    }
    const int up = std::min(k, theta + 1);
    const int down = theta == norm.threshold ? 0 : theta - 1;
    const double p_up =
        strategy.at(theta) == Action::kHigh ? 1.0 - alpha : alpha;
    p(theta, up) += p_up;
    p(theta, down) += 1.0 - p_up;
  }
  return p;
}

}  // namespace crowdnorm
