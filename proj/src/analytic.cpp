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

#include "crowdnorm/analytic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace crowdnorm {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd out(m.n, m.n);
  for (int r = 0; r < m.n; ++r)
    for (int c = 0; c < m.n; ++c) out(r, c) = m(r, c);
  return out;
}

// Per-period reward vector under an arbitrary strategy.
std::vector<double> reward_vector(const SocialNorm& norm,
                                  const MarketParams& params,
                                  const WorkerStrategy& strategy) {
  const double wage = params.share * params.price;
  std::vector<double> u(static_cast<size_t>(norm.state_count()), 0.0);
  for (int theta = norm.threshold; theta <= norm.max_reputation; ++theta)
    u[static_cast<size_t>(theta)] =
        strategy.at(theta) == Action::kHigh ? wage - params.cost : wage;
  return u;
}

std::vector<double> solve_discounted(const Matrix& p, double discount,
                                     const std::vector<double>& reward) {
  const int n = p.n;
  Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(n, n) - discount * to_eigen(p);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) rhs(i) = reward[static_cast<size_t>(i)];
  Eigen::VectorXd v = system.partialPivLu().solve(rhs);
  return {v.data(), v.data() + n};
}

// Strongly connected components by iterative reachability; the state
// space never exceeds 61 so the O(n^3) closure is immaterial.
struct ChainStructure {
  std::vector<int> component;          // state -> recurrent class id, or -1
  int recurrent_classes = 0;
  bool irreducible = false;
};

ChainStructure analyze_chain(const Matrix& p) {
  const int n = p.n;
  std::vector<std::vector<bool>> reach(
      static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) reach[i][j] = i == j || p(i, j) > 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;

  ChainStructure out;
  out.component.assign(static_cast<size_t>(n), -1);
  // A state is recurrent iff it can return from everything it reaches.
  std::vector<bool> recurrent(static_cast<size_t>(n), true);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (reach[i][j] && !reach[j][i]) recurrent[static_cast<size_t>(i)] = false;
  for (int i = 0; i < n; ++i) {
    if (!recurrent[static_cast<size_t>(i)] || out.component[static_cast<size_t>(i)] >= 0)
      continue;
    const int id = out.recurrent_classes++;
    for (int j = i; j < n; ++j)
      if (recurrent[static_cast<size_t>(j)] && reach[i][j] && reach[j][i])
        out.component[static_cast<size_t>(j)] = id;
  }
  out.irreducible = true;
  for (int i = 0; i < n && out.irreducible; ++i)
    for (int j = 0; j < n; ++j)
      if (!reach[i][j]) {
        out.irreducible = false;
        break;
      }
  return out;
}

// Stationary distribution restricted to one recurrent class.
std::vector<double> class_stationary(const Matrix& p,
                                     const std::vector<int>& states) {
  const int m = static_cast<int>(states.size());
  Eigen::MatrixXd system(m, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r)
      system(r, c) = p(states[static_cast<size_t>(c)], states[static_cast<size_t>(r)]) -
                     (r == c ? 1.0 : 0.0);
  for (int c = 0; c < m; ++c) system(m - 1, c) = 1.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(m - 1) = 1.0;
  Eigen::VectorXd eta = system.partialPivLu().solve(rhs);
  return {eta.data(), eta.data() + m};
}

}  // namespace

double one_period_utility(int theta, const SocialNorm& norm,
                          const MarketParams& params) {
  norm.validate();
  params.validate();
  if (theta < 0 || theta > norm.max_reputation)
    throw std::invalid_argument("one_period_utility: reputation out of range");
  return norm.active(theta) ? params.share * params.price - params.cost : 0.0;
}

ValueFunction solve_value_function(const SocialNorm& norm,
                                   const MarketParams& params,
                                   const WorkerStrategy& strategy) {
  params.validate();
  const Matrix p = transition_matrix(norm, params, strategy);
  return {solve_discounted(p, params.discount,
                           reward_vector(norm, params, strategy))};
}

std::vector<double> unit_reward_values(const SocialNorm& norm,
                                       const MarketParams& params) {
  params.validate();
  const auto compliant = WorkerStrategy::compliant(norm);
  const Matrix p = transition_matrix(norm, params, compliant);
  std::vector<double> unit(static_cast<size_t>(norm.state_count()), 0.0);
  for (int theta = norm.threshold; theta <= norm.max_reputation; ++theta)
    unit[static_cast<size_t>(theta)] = 1.0;
  return solve_discounted(p, params.discount, unit);
}

ReputationDistribution stationary_distribution(
    const SocialNorm& norm, const MarketParams& params,
    const WorkerStrategy& strategy) {
  const Matrix p = transition_matrix(norm, params, strategy);
  const int n = p.n;
  const ChainStructure chain = analyze_chain(p);

  ReputationDistribution out;
  out.irreducible = chain.irreducible;
  out.unique = chain.recurrent_classes == 1;
  out.mass.assign(static_cast<size_t>(n), 0.0);

  std::vector<std::vector<int>> classes(
      static_cast<size_t>(chain.recurrent_classes));
  for (int i = 0; i < n; ++i)
    if (chain.component[static_cast<size_t>(i)] >= 0)
      classes[static_cast<size_t>(chain.component[static_cast<size_t>(i)])]
          .push_back(i);

  if (out.unique) {
    const auto eta = class_stationary(p, classes[0]);
    for (size_t idx = 0; idx < classes[0].size(); ++idx)
      out.mass[static_cast<size_t>(classes[0][idx])] = eta[idx];
    return out;
  }

  // Several recurrent classes: weight each class by its absorption
  // probability from a uniform start, which is the limiting time average.
  std::vector<int> transients;
  for (int i = 0; i < n; ++i)
    if (chain.component[static_cast<size_t>(i)] < 0) transients.push_back(i);
  const int t = static_cast<int>(transients.size());
  std::vector<double> weight(static_cast<size_t>(chain.recurrent_classes),
                             0.0);
  for (size_t c = 0; c < classes.size(); ++c)
    weight[c] = static_cast<double>(classes[c].size()) / n;
  if (t > 0) {
    Eigen::MatrixXd q(t, t);
    for (int r = 0; r < t; ++r)
      for (int c = 0; c < t; ++c)
        q(r, c) = (r == c ? 1.0 : 0.0) -
                  p(transients[static_cast<size_t>(r)],
                    transients[static_cast<size_t>(c)]);
    auto lu = q.partialPivLu();
    for (size_t c = 0; c < classes.size(); ++c) {
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(t);
      for (int r = 0; r < t; ++r)
        for (int s : classes[c])
          rhs(r) += p(transients[static_cast<size_t>(r)], s);
      Eigen::VectorXd absorb = lu.solve(rhs);
      weight[c] += absorb.sum() / n;
    }
  }
  for (size_t c = 0; c < classes.size(); ++c) {
    const auto eta = class_stationary(p, classes[c]);
    for (size_t idx = 0; idx < classes[c].size(); ++idx)
      out.mass[static_cast<size_t>(classes[c][idx])] += weight[c] * eta[idx];
  }
  return out;
}

double social_welfare(const SocialNorm& norm, const MarketParams& params) {
  const auto compliant = WorkerStrategy::compliant(norm);
  const auto eta = stationary_distribution(norm, params, compliant);
  double total = 0.0;
  for (int theta = 0; theta <= norm.max_reputation; ++theta) {
    const double u = one_period_utility(theta, norm, params);
    const double surplus =
        norm.active(theta) ? params.benefit - params.price : 0.0;
    total += eta.mass[static_cast<size_t>(theta)] * (u + surplus);
  }
  return total;
}

double strategy_welfare(const SocialNorm& norm, const MarketParams& params,
                        const WorkerStrategy& strategy) {
  const auto eta = stationary_distribution(norm, params, strategy);
  const double wage = params.share * params.price;
  double total = 0.0;
  for (int theta = norm.threshold; theta <= norm.max_reputation; ++theta) {
    const double pair_utility =
        strategy.at(theta) == Action::kHigh
            ? (wage - params.cost) + (params.benefit - params.price)
            : wage - params.price;
    total += eta.mass[static_cast<size_t>(theta)] * pair_utility;
  }
  return total;
}

double revenue(const SocialNorm& norm, const MarketParams& params) {
  const auto compliant = WorkerStrategy::compliant(norm);
  const auto eta = stationary_distribution(norm, params, compliant);
  double active_mass = 0.0;
  for (int theta = norm.threshold; theta <= norm.max_reputation; ++theta)
    active_mass += eta.mass[static_cast<size_t>(theta)];
  return active_mass * (1.0 - params.share) * params.price;
}

IncentiveReport incentive_margins(const SocialNorm& norm,
                                  const MarketParams& params) {
  const auto v =
      solve_value_function(norm, params, WorkerStrategy::compliant(norm));
  const double pull = params.discount * (1.0 - 2.0 * params.error_rate);

  IncentiveReport report;
  report.threshold = norm.threshold;
  report.sustainable = true;
  for (int theta = norm.threshold; theta <= norm.max_reputation; ++theta) {
    const int up = std::min(norm.max_reputation, theta + 1);
    const int down = theta == norm.threshold ? 0 : theta - 1;
    const double margin =
        pull * (v.value[static_cast<size_t>(up)] -
                v.value[static_cast<size_t>(down)]) -
        params.cost;
    report.margin.push_back(margin);
    if (theta == norm.threshold || margin < report.min_margin) {
      report.min_margin = margin;
      report.min_state = theta;
    }
    if (margin < 0.0) report.sustainable = false;
  }
  return report;
}

std::vector<double> marginal_utilities(const SocialNorm& norm,
                                       const MarketParams& params) {
  const auto v =
      solve_value_function(norm, params, WorkerStrategy::compliant(norm));
  std::vector<double> dv(static_cast<size_t>(norm.state_count()), 0.0);
  for (int theta = 0; theta < norm.max_reputation; ++theta)
    dv[static_cast<size_t>(theta)] = v.value[static_cast<size_t>(theta + 1)] -
                                     v.value[static_cast<size_t>(theta)];
  return dv;
}

WorkerStrategy best_response_policy(const SocialNorm& norm,
                                    const MarketParams& params) {
  params.validate();
  const double wage = params.share * params.price;
  const double alpha = params.error_rate;
  auto policy = WorkerStrategy::compliant(norm);

  for (int iter = 0; iter < 4 * norm.state_count() + 8; ++iter) {
    const auto v = solve_value_function(norm, params, policy);
    bool changed = false;
    for (int theta = norm.threshold; theta <= norm.max_reputation; ++theta) {
      const int up = std::min(norm.max_reputation, theta + 1);
      const int down = theta == norm.threshold ? 0 : theta - 1;
      const double v_up = v.value[static_cast<size_t>(up)];
      const double v_down = v.value[static_cast<size_t>(down)];
      const double q_high =
          wage - params.cost +
          params.discount * ((1.0 - alpha) * v_up + alpha * v_down);
      const double q_low =
          wage + params.discount * (alpha * v_up + (1.0 - alpha) * v_down);
      const Action best = q_high >= q_low ? Action::kHigh : Action::kLow;
      if (best != policy.at(theta)) {
        policy.set(theta, best);
        changed = true;
      }
    }
    if (!changed) return policy;
  }
  throw std::runtime_error("best_response_policy: policy iteration diverged");
}

}  // namespace crowdnorm
