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

#ifndef CROWDNORM_MARKET_HPP
#define CROWDNORM_MARKET_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace crowdnorm {

// Worker effort level in one transaction.
enum class Action : std::uint8_t { kHigh, kLow };

// Requester's perception of the task outcome. The report drives the
// reputation update; it flips the true outcome with probability
// MarketParams::error_rate.
enum class Report : std::uint8_t { kSolved, kUnsolved };

// Intrinsic market parameters plus the designed payment sharing ratio.
//
// price:      flat-rate price p paid per task (ex ante).
// cost:       worker's cost c of exerting high effort.
// benefit:    requester's benefit V from a solved task.
// discount:   per-period discount factor delta of workers, in [0, 1).
// error_rate: probability alpha that a report flips the true outcome.
// share:      fraction lambda of the price paid to the worker; the
//             website keeps (1 - lambda) p.
struct MarketParams {
  double price = 5.0;
  double cost = 1.0;
  double benefit = 10.0;
  double discount = 0.8;
  double error_rate = 0.1;
  double share = 1.0;

  double cost_price_ratio() const { return cost / price; }

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// The reputation design pair: reputations live in {0, ..., max_reputation}
// and a worker is active (allowed to take tasks) iff theta >= threshold.
// Workers below the threshold are isolated for `threshold` periods.
struct SocialNorm {
  int max_reputation = 1;  // K
  int threshold = 1;       // h

  int state_count() const { return max_reputation + 1; }
  bool active(int theta) const { return theta >= threshold; }
  int active_count() const { return max_reputation - threshold + 1; }

  void validate() const;
};

// Prescribed action per active reputation state. Isolated states carry no
// action. Arbitrary assignments are supported so the same transition
// builder serves the compliant chain, deviation analysis, and the
// best-response oracle.
class WorkerStrategy {
 public:
  WorkerStrategy(const SocialNorm& norm, Action fill);

  static WorkerStrategy compliant(const SocialNorm& norm) {
    return WorkerStrategy(norm, Action::kHigh);
  }
  static WorkerStrategy all_low(const SocialNorm& norm) {
    return WorkerStrategy(norm, Action::kLow);
  }

  Action at(int theta) const;
  void set(int theta, Action a);
  int threshold() const { return threshold_; }
  int max_reputation() const { return threshold_ + static_cast<int>(actions_.size()) - 1; }

  bool operator==(const WorkerStrategy& other) const = default;

  std::string to_string() const;  // e.g. "HHL" over theta = h..K

 private:
  int threshold_;
  std::vector<Action> actions_;  // index theta - threshold
};

// Dense row-major square matrix, sized for reputation chains (n <= 61).
struct Matrix {
  int n = 0;
  std::vector<double> a;

  explicit Matrix(int size) : n(size), a(static_cast<size_t>(size) * size, 0.0) {}
  double& operator()(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
  double operator()(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
};

// The prescribed social strategy: high effort iff the worker is active.
Action social_strategy(int theta, const SocialNorm& norm);

// Reputation update driven by the requester's report.
//   active, Solved    -> min(K, theta + 1)
//   active, Unsolved  -> theta - 1, or 0 when theta == threshold
//   isolated          -> theta + 1 regardless of the report
int reputation_update(int theta, Report report, const SocialNorm& norm);

// One-transaction payoffs (requester, worker) for a paying requester.
struct StagePayoffs {
  double requester;
  double worker;
};
StagePayoffs stage_payoffs(Action action, const MarketParams& params);

// Row-stochastic reputation transition matrix over {0, ..., K} for workers
// following `strategy`. High effort moves the reputation up with
// probability 1 - alpha; low effort swaps the error direction so the
// reputation moves up only with probability alpha. Isolated states step up
// deterministically.
Matrix transition_matrix(const SocialNorm& norm, const MarketParams& params,
                         const WorkerStrategy& strategy);

}  // namespace crowdnorm

#endif  // CROWDNORM_MARKET_HPP
