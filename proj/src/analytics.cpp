#include "contest/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "contest/equilibrium.hpp"

namespace contest {

namespace {

void require_battle(const ContestSpec& spec, int t) {
  if (t < 0 || t >= spec.battle_count())
    throw std::invalid_argument("battle index out of range");
}

// Maps a desired cost index onto the underlying costs of battle t, holding
// cost_a and the power fixed: c_t = (c_Bt / c_At)^{r_t}.
ContestSpec with_cost_index(ContestSpec spec, int t, double cost_index) {
  if (!(cost_index > 0.0)) throw std::invalid_argument("cost index must be positive");
  Battle& b = spec.battles[t];
  b.cost_b = b.cost_a * std::pow(cost_index, 1.0 / b.power);
  return spec;
}

ContestSpec with_cost_ratio(ContestSpec spec, int t, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("cost ratio must be positive");
  spec.battles[t].cost_b = spec.battles[t].cost_a * rho;
  return spec;
}

// Strict co-movement between consecutive grid points: values must move with
// the grid (direct) or against it, and repeated grid values must reproduce
// the same output.
bool monotone_along_grid(std::span<const double> grid, const std::vector<double>& values,
                         bool direct) {
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    if (grid[i + 1] == grid[i]) {
      if (values[i + 1] != values[i]) return false;
    } else if ((grid[i + 1] > grid[i]) == direct ? values[i + 1] <= values[i]
                                                 : values[i + 1] >= values[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace

SweepTable sweep_cost_index(const ContestSpec& spec, int t, std::span<const double> grid) {
  validate_spec(spec);
  require_battle(spec, t);
  SweepTable table;
  table.columns = {"c_t", "team_prob_a"};
  std::vector<double> probs;
  for (double c : grid) {
    const Equilibrium eq = solve(with_cost_index(spec, t, c));
    probs.push_back(eq.team_prob_a);
    table.rows.push_back({c, eq.team_prob_a});
  }
  table.checks.push_back({"prob_strictly_increasing_in_c", monotone_along_grid(grid, probs, true)});
  return table;
}

SweepTable sweep_budget_ratio(const ContestSpec& spec, std::span<const double> grid) {
  validate_spec(spec);
  const double total = spec.budget_a + spec.budget_b;
  SweepTable table;
  table.columns = {"k", "team_prob_a", "e_star"};
  std::vector<double> probs, costs;
  for (double k : grid) {
    if (!(k > 0.0)) throw std::invalid_argument("budget ratio must be positive");
    ContestSpec scaled = spec;
    scaled.budget_a = total / (1.0 + k);
    scaled.budget_b = total * k / (1.0 + k);
    const Equilibrium eq = solve(scaled);
    probs.push_back(eq.team_prob_a);
    costs.push_back(eq.total_effort_cost);
    table.rows.push_back({k, eq.team_prob_a, eq.total_effort_cost});
  }
  table.checks.push_back(
      {"prob_strictly_decreasing_in_k", monotone_along_grid(grid, probs, false)});

  bool symmetric = true;
  for (const Battle& b : spec.battles)
    symmetric = symmetric && b.cost_a == b.cost_b && b.power == spec.battles[0].power;
  double at_one = -1.0;
  for (size_t i = 0; i < grid.size(); ++i)
    if (grid[i] == 1.0) at_one = costs[i];
  // The peak assertion needs a symmetric spec and a grid that contains k = 1.
  if (symmetric && at_one >= 0.0) {
    const bool peaked =
        std::all_of(costs.begin(), costs.end(), [&](double c) { return c <= at_one; });
    table.checks.push_back({"effort_cost_peaks_at_k_1", peaked});
  }
  return table;
}

SweepTable salience_profile(const ContestSpec& spec, int t, std::span<const double> grid) {
  validate_spec(spec);
  require_battle(spec, t);
  const double k = spec.budget_b / spec.budget_a;
  SweepTable table;
  table.columns = {"rho_t", "s_t"};
  std::vector<double> salience;
  bool grid_has_k = false;
  for (double rho : grid) {
    grid_has_k = grid_has_k || rho == k;
    const Equilibrium eq = solve(with_cost_ratio(spec, t, rho));
    salience.push_back(eq.salience[t]);
    table.rows.push_back({rho, eq.salience[t]});
  }

  // Grid-level single peak: consecutive differences change sign at most
  // once, from positive to negative.
  bool single_peak = grid_has_k;
  bool falling = false;
  size_t peak = 0;
  for (size_t i = 0; i + 1 < salience.size(); ++i) {
    if (salience[i + 1] > salience[i]) {
      if (falling) single_peak = false;
      peak = i + 1;
    } else {
      falling = true;
    }
  }
  single_peak = single_peak && peak < grid.size() && grid[peak] == k;
  table.checks.push_back({"single_peak_at_rho_k", single_peak});
  return table;
}

double symmetry_elasticity(const ContestSpec& spec, int t) {
  validate_spec(spec);
  require_battle(spec, t);
  const Equilibrium eq = solve(spec);
  return spec.battles[t].power * (eq.prob_a[t] - (1.0 - eq.prob_a[t]));
}

SweepTable effort_cost_r_monotonicity(const ContestSpec& spec, int t,
                                      std::span<const double> grid) {
  validate_spec(spec);
  require_battle(spec, t);
  if (spec.budget_a != spec.budget_b)
    throw std::invalid_argument("effort_cost_r_monotonicity requires k = 1");
  if (spec.battles[t].cost_a != spec.battles[t].cost_b)
    throw std::invalid_argument("effort_cost_r_monotonicity requires rho_t = 1");

  SweepTable table;
  table.columns = {"r_t", "s_t", "e_star", "condition_holds"};
  std::vector<double> costs;
  std::vector<bool> condition;
  for (double r : grid) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("power outside (0,1]");
    ContestSpec varied = spec;
    varied.battles[t].power = r;
    const Equilibrium eq = solve(varied);
    double rival_max = 0.0;
    for (int s = 0; s < spec.battle_count(); ++s)
      if (s != t) rival_max = std::max(rival_max, eq.salience[s]);
    const bool holds = eq.salience[t] >= 0.5 * rival_max;
    costs.push_back(eq.total_effort_cost);
    condition.push_back(holds);
    table.rows.push_back({r, eq.salience[t], eq.total_effort_cost, holds ? 1.0 : 0.0});
  }
  bool monotone = true;
  for (size_t i = 0; i + 1 < costs.size(); ++i)
    if (condition[i] && grid[i + 1] > grid[i] && costs[i + 1] <= costs[i]) monotone = false;
  table.checks.push_back({"effort_cost_increasing_where_salient", monotone});
  return table;
}

ProductConjectureReport product_conjecture_counterexample() {
  ContestSpec spec;
  spec.battles = {{1.0, 99.0, 1.0}, {1.0, 99.0, 1.0}, {1.0, 1.0 / 9801.0, 1.0}};
  const Equilibrium eq = solve(spec);
  ProductConjectureReport report;
  report.cost_index_product = eq.cost_index[0] * eq.cost_index[1] * eq.cost_index[2];
  report.team_prob_a = eq.team_prob_a;
  report.pass =
      std::abs(report.cost_index_product - 1.0) <= 1e-9 && report.team_prob_a > 0.97;
  return report;
}

}  // namespace contest
