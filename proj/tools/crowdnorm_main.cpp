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

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "crowdnorm/analytic.hpp"
#include "crowdnorm/design.hpp"
#include "crowdnorm/market.hpp"
#include "crowdnorm/report.hpp"
#include "crowdnorm/sim.hpp"

namespace {

using namespace crowdnorm;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::string out_dir() {
  const char* env = std::getenv("CROWDNORM_OUTDIR");
  return env && *env ? std::string(env) + "/" : std::string();
}

std::string out_path(const std::string& name) { return out_dir() + name; }

// "a:b:step" or a comma-separated list; must be strictly increasing.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const auto colon2 = text.find(':', colon + 1);
    if (colon2 == std::string::npos)
      throw std::invalid_argument("grid: expected start:stop:step");
    const double start = std::stod(text.substr(0, colon));
    const double stop = std::stod(text.substr(colon + 1, colon2 - colon - 1));
    const double step = std::stod(text.substr(colon2 + 1));
    if (step <= 0.0) throw std::invalid_argument("grid: step must be > 0");
    for (double x = start; x <= stop + 1e-9 * step; x += step)
      grid.push_back(x);
  } else {
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ','))
      if (!item.empty()) grid.push_back(std::stod(item));
  }
  if (grid.empty()) throw std::invalid_argument("grid: must be non-empty");
  for (size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1])
      throw std::invalid_argument("grid: must be strictly increasing");
  return grid;
}

struct ParamFlags {
  double price = 5.0, cost = 1.0, benefit = 10.0, discount = 0.8,
         error_rate = 0.1, share = 1.0;
  int k_max = 30;

  void attach(CLI::App* app) {
    app->add_option("--p", price, "task price");
    app->add_option("--c", cost, "high-effort cost");
    app->add_option("--V", benefit, "requester benefit");
    app->add_option("--delta", discount, "worker discount factor");
    app->add_option("--alpha", error_rate, "report error probability");
    app->add_option("--lambda", share, "payment sharing ratio");
    app->add_option("--K-max", k_max, "largest reputation ceiling searched");
  }
  MarketParams params() const {
    return {price, cost, benefit, discount, error_rate, share};
  }
  Intrinsics intrinsics() const {
    return {price, cost, benefit, discount, error_rate};
  }
};

SimConfig sim_config_from(const Config& file) {
  SimConfig config;
  config.workers = static_cast<int>(file.integer("workers", 200));
  config.requesters = static_cast<int>(file.integer("requesters", 800));
  config.periods = file.integer("periods", 10000);
  config.burn_in = file.integer("burn_in", 1000);
  config.seed = static_cast<std::uint64_t>(file.integer("seed", 1));
  config.params.price = file.number("p", 5.0);
  config.params.cost = file.number("c", 1.0);
  config.params.benefit = file.number("V", 10.0);
  config.params.discount = file.number("delta", 0.8);
  config.params.error_rate = file.number("alpha", 0.1);
  config.params.share = file.number("lambda", 1.0);
  config.worker_norm = {static_cast<int>(file.integer("K", 1)),
                        static_cast<int>(file.integer("h", 1))};
  config.requester_norm = {static_cast<int>(file.integer("K_req", 1)),
                           static_cast<int>(file.integer("h_req", 1))};
  config.requester_discount = file.number("delta_req", 0.5);

  const std::string policy = file.text("worker_policy", "compliant");
  if (policy == "compliant")
    config.worker_policy = WorkerPolicyKind::kCompliant;
  else if (policy == "best-response")
    config.worker_policy = WorkerPolicyKind::kBestResponse;
  else if (policy == "all-L")
    config.worker_policy = WorkerPolicyKind::kAllLow;
  else
    throw std::invalid_argument("config: worker_policy: unknown value '" +
                                policy + "'");
  const std::string mode = file.text("requester_mode", "passive");
  if (mode == "passive")
    config.requester_mode = RequesterMode::kPassive;
  else if (mode == "strategic")
    config.requester_mode = RequesterMode::kStrategic;
  else
    throw std::invalid_argument("config: requester_mode: unknown value '" +
                                mode + "'");
  const std::string rpolicy = file.text("requester_policy", "compliant");
  if (rpolicy == "compliant")
    config.requester_policy = RequesterPolicyKind::kCompliant;
  else if (rpolicy == "best-response")
    config.requester_policy = RequesterPolicyKind::kBestResponse;
  else
    throw std::invalid_argument("config: requester_policy: unknown value '" +
                                rpolicy + "'");
  return config;
}

void maybe_chart(bool svg, const std::string& csv, const std::string& x,
                 const std::vector<std::string>& y, const std::string& title) {
  if (!svg) return;
  const std::string path = csv.substr(0, csv.rfind('.')) + ".svg";
  render_chart(csv, x, y, path, title);
  std::cout << "wrote " << path << "\n";
}

int cmd_check(const ParamFlags& flags, int norm_k, int norm_h) {
  const SocialNorm norm{norm_k, norm_h};
  norm.validate();
  const IncentiveReport report = incentive_margins(norm, flags.params());
  std::printf("%s, margin(%d)=%+.3f\n",
              report.sustainable ? "sustainable" : "not sustainable",
              report.min_state, report.min_margin);
  return kExitOk;
}

int cmd_design(bool for_revenue, const ParamFlags& flags,
               const std::string& csv, bool svg) {
  const DesignResult result =
      for_revenue ? optimize_revenue(flags.intrinsics(), flags.k_max)
                  : optimize_social_welfare(flags.intrinsics(), flags.k_max);
  if (for_revenue)
    std::printf("K*=%d h*=%d lambda#=%.6g R#=%.6g R#/p=%.6g\n",
                result.norm.max_reputation, result.norm.threshold,
                result.share, result.objective,
                result.objective / flags.price);
  else
    std::printf("K*=%d h*=%d lambda*=%.6g U*=%.6g U*/(V-c)=%.6g\n",
                result.norm.max_reputation, result.norm.threshold,
                result.share, result.objective,
                result.objective / (flags.benefit - flags.cost));
  if (!csv.empty()) {
    Table table;
    table.header = {"K_star", "h_star", "lambda", "objective"};
    table.rows = {{static_cast<double>(result.norm.max_reputation),
                   static_cast<double>(result.norm.threshold), result.share,
                   result.objective}};
    write_csv(csv, table);
    std::cout << "wrote " << csv << "\n";
    maybe_chart(svg, csv, "K_star", {"objective"}, "design");
  }
  return kExitOk;
}

int cmd_thresholds(const ParamFlags& flags, const std::string& axis,
                   double tolerance, bool strict) {
  ExistenceAxis which;
  if (axis == "r")
    which = ExistenceAxis::kCostPriceRatio;
  else if (axis == "delta")
    which = ExistenceAxis::kDiscount;
  else if (axis == "alpha")
    which = ExistenceAxis::kErrorRate;
  else
    throw std::invalid_argument("thresholds: --axis must be r, delta or alpha");
  const auto probes = existence_thresholds(which, flags.intrinsics(),
                                           tolerance, flags.k_max, strict);
  for (const auto& probe : probes) {
    if (probe.flips)
      std::printf("%s = %.6g (bracket width %.3g)\n", probe.axis.c_str(),
                  probe.value, probe.width);
    else if (probe.width == 0.0)
      std::printf("%s = %.6g (no interior flip; boundary threshold)\n",
                  probe.axis.c_str(), probe.value);
    else
      std::printf("%s: non-bracketing (no flip on the probed interval)\n",
                  probe.axis.c_str());
  }
  return kExitOk;
}

int cmd_simulate(const SimConfig& config, const std::string& prefix,
                 bool svg) {
  const SimResult result = run_simulation(config);

  Table trace;
  trace.header = {"period", "welfare", "revenue", "matches"};
  for (size_t t = 0; t < result.welfare.size(); ++t)
    trace.rows.push_back({static_cast<double>(t), result.welfare[t],
                          result.revenue[t],
                          static_cast<double>(result.matches[t])});
  const std::string trace_path = out_path(prefix + "trace.csv");
  write_csv(trace_path, trace);

  Table dist;
  dist.header = {"theta", "mass"};
  for (size_t s = 0; s < result.reputation_hist.size(); ++s)
    dist.rows.push_back(
        {static_cast<double>(s), result.reputation_hist[s]});
  const std::string dist_path = out_path(prefix + "dist.csv");
  write_csv(dist_path, dist);

  std::printf(
      "periods=%ld mean_welfare=%.6g mean_revenue=%.6g participate=%d\n",
      config.periods, result.mean_welfare, result.mean_revenue,
      result.requesters_participate ? 1 : 0);
  std::cout << "wrote " << trace_path << " " << dist_path << "\n";
  maybe_chart(svg, trace_path, "period", {"welfare", "revenue"}, "simulation");
  maybe_chart(svg, dist_path, "theta", {"mass"}, "reputation distribution");
  return kExitOk;
}

int cmd_price_opt(const SimConfig& base, const std::vector<double>& grid,
                  int k_max, const std::string& prefix, bool svg) {
  const PriceCurve curve = optimize_price(base, grid, 0.01, k_max);
  Table table;
  table.header = {"p", "welfare", "normalized"};
  for (size_t i = 0; i < curve.price.size(); ++i)
    table.rows.push_back({curve.price[i], curve.welfare[i],
                          curve.normalized[i]});
  const std::string path = out_path(prefix + "price_curve.csv");
  write_csv(path, table);
  std::printf("p*=%.6g welfare(p*)=%.6g\n", curve.best_price,
              curve.welfare[static_cast<size_t>(curve.best_index)]);
  std::cout << "wrote " << path << "\n";
  maybe_chart(svg, path, "p", {"normalized"}, "welfare vs price");
  return kExitOk;
}

int cmd_sweep(const ParamFlags& flags, const std::string& task,
              const std::string& axis, const std::vector<double>& grid,
              const std::string& prefix, bool svg) {
  const auto apply = [&](double x) {
    ParamFlags point = flags;
    if (axis == "r")
      point.cost = x * point.price;
    else if (axis == "delta")
      point.discount = x;
    else if (axis == "alpha")
      point.error_rate = x;
    else if (axis == "p")
      point.price = x;
    else if (axis == "lambda")
      point.share = x;
    else
      throw std::invalid_argument("sweep: --axis must be one of r, delta, "
                                  "alpha, p, lambda");
    return point;
  };

  Table table;
  if (task == "design-welfare") {
    table.header = {axis, "K_star", "h_star", "welfare", "normalized"};
    for (double x : grid) {
      const ParamFlags point = apply(x);
      const DesignResult result =
          optimize_social_welfare(point.intrinsics(), point.k_max);
      table.rows.push_back(
          {x, static_cast<double>(result.norm.max_reputation),
           static_cast<double>(result.norm.threshold), result.objective,
           result.objective / (point.benefit - point.cost)});
    }
  } else if (task == "design-revenue") {
    table.header = {axis, "K_star", "h_star", "lambda_sharp", "R_sharp",
                    "R_sharp_over_p"};
    for (double x : grid) {
      const ParamFlags point = apply(x);
      const DesignResult result =
          optimize_revenue(point.intrinsics(), point.k_max);
      table.rows.push_back(
          {x, static_cast<double>(result.norm.max_reputation),
           static_cast<double>(result.norm.threshold),
           result.sustainable ? result.share : 0.0, result.objective,
           result.objective / point.price});
    }
  } else if (task == "check") {
    table.header = {axis, "sustainable", "min_margin"};
    for (double x : grid) {
      const ParamFlags point = apply(x);
      const IncentiveReport report = incentive_margins(
          {point.k_max, std::min(point.k_max, 1)}, point.params());
      table.rows.push_back(
          {x, report.sustainable ? 1.0 : 0.0, report.min_margin});
    }
  } else {
    throw std::invalid_argument(
        "sweep: --task must be design-welfare, design-revenue or check");
  }
  const std::string path = out_path(prefix + "sweep.csv");
  write_csv(path, table);
  std::cout << "wrote " << path << "\n";
  maybe_chart(svg, path, axis, {table.header[1]}, "sweep");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Figure recipes. Published parameters: p = 5, V = 10, delta = 0.8 for
// workers, delta_req = 0.5, alpha in {0.05, 0.1}, four requesters per
// worker.

int fig2(bool svg) {
  Table table;
  table.header = {"r", "K_star_a05", "h_star_a05", "K_star_a10",
                  "h_star_a10"};
  for (double r = 0.05; r <= 0.951; r += 0.05) {
    std::vector<double> row{r};
    for (double alpha : {0.05, 0.1}) {
      const Intrinsics intr{5.0, 5.0 * r, 10.0, 0.8, alpha};
      const DesignResult result = optimize_social_welfare(intr, 30);
      row.push_back(result.norm.max_reputation);
      row.push_back(result.norm.threshold);
    }
    table.rows.push_back(row);
  }
  const std::string path = out_path("fig2.csv");
  write_csv(path, table);
  std::cout << "wrote " << path << "\n";
  maybe_chart(svg, path, "r",
              {"K_star_a05", "h_star_a05", "K_star_a10", "h_star_a10"},
              "optimal design");
  return kExitOk;
}

int fig3(bool svg) {
  Table table;
  table.header = {"r", "norm_welfare_d80_a05", "norm_welfare_d80_a10",
                  "norm_welfare_d95_a05", "norm_welfare_d95_a10"};
  for (double r = 0.05; r <= 0.951; r += 0.05) {
    std::vector<double> row{r};
    for (double delta : {0.8, 0.95}) {
      for (double alpha : {0.05, 0.1}) {
        const Intrinsics intr{5.0, 5.0 * r, 10.0, delta, alpha};
        const DesignResult result = optimize_social_welfare(intr, 30);
        row.push_back(result.objective / (intr.benefit - intr.cost));
      }
    }
    table.rows.push_back(row);
  }
  const std::string path = out_path("fig3.csv");
  write_csv(path, table);
  std::cout << "wrote " << path << "\n";
  maybe_chart(svg, path, "r",
              {"norm_welfare_d80_a05", "norm_welfare_d80_a10",
               "norm_welfare_d95_a05", "norm_welfare_d95_a10"},
              "optimal social welfare / (V - c)");
  return kExitOk;
}

int fig4(bool svg) {
  Table table;
  table.header = {"r", "lambda_sharp", "R_sharp_over_p", "R_ns_over_p"};
  for (double r = 0.05; r <= 0.951; r += 0.05) {
    const Intrinsics intr{5.0, 5.0 * r, 10.0, 0.8, 0.1};
    const DesignResult sustainable = optimize_revenue(intr, 30);
    // Unsustainable baseline under the market's standing participation
    // assumptions: the wage floor lambda >= r and positive expected
    // requester utility.
    std::vector<double> shares;
    for (double s = 0.0; s <= 1.0001; s += 0.05)
      shares.push_back(std::min(1.0, s));
    UnconstrainedModel model;
    model.worker_wage_floor = true;
    model.requester_participation = true;
    const UnconstrainedRevenue ns =
        max_revenue_unconstrained(intr, 30, shares, model);
    table.rows.push_back({r, sustainable.sustainable ? sustainable.share : 0.0,
                          sustainable.objective / intr.price,
                          ns.revenue / intr.price});
  }
  const std::string path = out_path("fig4.csv");
  write_csv(path, table);
  std::cout << "wrote " << path << "\n";
  maybe_chart(svg, path, "r", {"lambda_sharp"}, "optimal sharing ratio");
  maybe_chart(svg, path, "r", {"R_sharp_over_p", "R_ns_over_p"},
              "optimal revenue / p");
  return kExitOk;
}

SimConfig figure_sim_base() {
  SimConfig base;
  base.workers = 200;
  base.requesters = 800;
  base.periods = 4000;
  base.burn_in = 1000;
  base.seed = 20260809;
  base.params = {5.0, 1.0, 10.0, 0.8, 0.05, 1.0};
  base.requester_discount = 0.5;
  base.requester_mode = RequesterMode::kStrategic;
  base.requester_policy = RequesterPolicyKind::kBestResponse;
  return base;
}

int fig5(bool svg) {
  SimConfig base = figure_sim_base();
  std::vector<double> grid;
  for (double p = 0.5; p <= 10.001; p += 0.25) grid.push_back(p);
  const PriceCurve curve = optimize_price(base, grid, 0.01, 30);
  Table table;
  table.header = {"p", "welfare", "normalized"};
  for (size_t i = 0; i < curve.price.size(); ++i)
    table.rows.push_back({curve.price[i], curve.welfare[i],
                          curve.normalized[i]});
  const std::string path = out_path("fig5.csv");
  write_csv(path, table);
  std::printf("p*=%.6g\n", curve.best_price);
  std::cout << "wrote " << path << "\n";
  maybe_chart(svg, path, "p", {"normalized"},
              "welfare with strategic requesters (best-response)");
  return kExitOk;
}

int fig6(bool svg) {
  Table table;
  table.header = {"c_over_V", "pstar_a05_T4", "pstar_a10_T4",
                  "pstar_a05_T8"};
  std::vector<double> price_grid;
  for (double p = 0.1; p <= 3.001; p += 0.1) price_grid.push_back(p);

  struct Curve {
    double alpha;
    int requesters;
  };
  const std::vector<Curve> curves = {{0.05, 800}, {0.1, 800}, {0.05, 1600}};
  for (double cost : {0.4, 0.5, 0.6, 0.7}) {
    std::vector<double> row{cost / 10.0};
    for (const Curve& mode : curves) {
      SimConfig base = figure_sim_base();
      base.periods = 2500;
      base.burn_in = 500;
      base.requesters = mode.requesters;
      base.params.cost = cost;
      base.params.error_rate = mode.alpha;
      const PriceCurve curve = optimize_price(base, price_grid, 0.01, 30);
      row.push_back(curve.best_price);
    }
    table.rows.push_back(row);
  }
  const std::string path = out_path("fig6.csv");
  write_csv(path, table);
  std::cout << "wrote " << path << "\n";
  maybe_chart(svg, path, "c_over_V",
              {"pstar_a05_T4", "pstar_a10_T4", "pstar_a05_T8"},
              "optimal price (best-response requesters)");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"social-norm incentive protocol designer and market simulator"};
  app.require_subcommand(1);

  ParamFlags flags;

  auto* check = app.add_subcommand("check", "sustainability of one norm");
  int norm_k = 1, norm_h = 1;
  flags.attach(check);
  check->add_option("--K", norm_k, "reputation ceiling")->required();
  check->add_option("--h", norm_h, "social threshold")->required();

  auto* welfare = app.add_subcommand("design-welfare",
                                     "optimal sustainable welfare design");
  auto* revenue_cmd = app.add_subcommand("design-revenue",
                                         "optimal sustainable revenue design");
  std::string design_csv;
  bool svg = false;
  flags.attach(welfare);
  flags.attach(revenue_cmd);
  welfare->add_option("--out", design_csv, "CSV output path");
  revenue_cmd->add_option("--out", design_csv, "CSV output path");

  auto* thresholds = app.add_subcommand("thresholds",
                                        "existence thresholds by bisection");
  std::string axis = "r";
  double tolerance = 1e-4;
  bool strict = false;
  flags.attach(thresholds);
  thresholds->add_option("--axis", axis, "r, delta or alpha")->required();
  thresholds->add_option("--tol", tolerance, "bracket tolerance");
  thresholds->add_flag("--strict", strict, "restrict the family to K > h");

  auto* simulate = app.add_subcommand("simulate", "seeded market run");
  std::string config_path, prefix;
  std::vector<std::string> overrides;
  long seed_override = -1;
  simulate->add_option("--config", config_path, "key = value config file");
  simulate->add_option("--set", overrides,
                       "config overrides, e.g. --set periods=1000");
  simulate->add_option("--seed", seed_override, "seed override");
  simulate->add_option("--out", prefix, "output file prefix");

  auto* price_opt = app.add_subcommand("price-opt",
                                       "optimal price via strategic runs");
  std::string price_grid_text = "0.5:10:0.5";
  price_opt->add_option("--config", config_path, "config file");
  price_opt->add_option("--set", overrides, "config overrides");
  price_opt->add_option("--p-grid", price_grid_text, "price grid");
  price_opt->add_option("--out", prefix, "output file prefix");
  price_opt->add_option("--K-max", flags.k_max, "design search ceiling");

  auto* sweep = app.add_subcommand("sweep", "one task along one axis");
  std::string task = "design-welfare", sweep_axis = "r", grid_text;
  flags.attach(sweep);
  sweep->add_option("--task", task,
                    "design-welfare, design-revenue or check");
  sweep->add_option("--axis", sweep_axis, "r, delta, alpha, p or lambda");
  sweep->add_option("--grid", grid_text, "a:b:step or comma list")
      ->required();
  sweep->add_option("--out", prefix, "output file prefix");

  auto* figures = app.add_subcommand("figures", "reproduction recipes");
  std::string which_figure;
  figures->add_option("name", which_figure, "fig2..fig6")->required();

  auto* chart = app.add_subcommand("chart", "CSV to SVG line chart");
  std::string chart_csv, chart_x, chart_out, chart_title = "chart";
  std::vector<std::string> chart_y;
  chart->add_option("--csv", chart_csv)->required();
  chart->add_option("--x", chart_x)->required();
  chart->add_option("--y", chart_y)->required()->delimiter(',');
  chart->add_option("--out", chart_out)->required();
  chart->add_option("--title", chart_title);

  for (auto* sub : {check, welfare, revenue_cmd, simulate, price_opt, sweep,
                    figures})
    sub->add_flag("--svg", svg, "also render SVG charts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(flags, norm_k, norm_h);
    if (welfare->parsed()) return cmd_design(false, flags, design_csv, svg);
    if (revenue_cmd->parsed()) return cmd_design(true, flags, design_csv, svg);
    if (thresholds->parsed())
      return cmd_thresholds(flags, axis, tolerance, strict);
    if (simulate->parsed() || price_opt->parsed()) {
      Config file = config_path.empty() ? Config::parse("")
                                        : Config::load(config_path);
      for (const auto& entry : overrides) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("--set: expected key=value");
        file.set(entry.substr(0, eq), entry.substr(eq + 1));
      }
      if (seed_override >= 0)
        file.set("seed", std::to_string(seed_override));
      const SimConfig config = sim_config_from(file);
      if (simulate->parsed()) return cmd_simulate(config, prefix, svg);
      return cmd_price_opt(config, parse_grid(price_grid_text), flags.k_max,
                           prefix, svg);
    }
    if (sweep->parsed())
      return cmd_sweep(flags, task, sweep_axis, parse_grid(grid_text), prefix,
                       svg);
    if (figures->parsed()) {
      if (which_figure == "fig2") return fig2(svg);
      if (which_figure == "fig3") return fig3(svg);
      if (which_figure == "fig4") return fig4(svg);
      if (which_figure == "fig5") return fig5(svg);
      if (which_figure == "fig6") return fig6(svg);
      throw std::invalid_argument("figures: unknown name '" + which_figure +
                                  "' (expected fig2..fig6)");
    }
    if (chart->parsed()) {
      render_chart(chart_csv, chart_x, chart_y, chart_out, chart_title);
      std::cout << "wrote " << chart_out << "\n";
      return kExitOk;
    }
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
