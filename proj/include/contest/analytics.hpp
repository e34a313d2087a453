#pragma once

// Comparative-statics sweeps and the product-conjecture counterexample.
// Every sweep is a pure function of the spec and grid, with rows emitted in
// grid order, so repeated runs are bit-for-bit reproducible.

#include <span>
#include <string>
#include <vector>

#include "contest/domain.hpp"

namespace contest {

struct SweepCheck {
  std::string name;
  bool pass = false;
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<SweepCheck> checks;
  bool all_pass() const {
    for (const SweepCheck& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Re-solves with battle t's cost index replaced by each grid value (other
// primitives and the budget ratio fixed); rows (c_t, team_prob_a). The team
// probability must increase strictly across strictly increasing grid points.
SweepTable sweep_cost_index(const ContestSpec& spec, int t, std::span<const double> grid);

// Rows (k, team_prob_a, e_star) holding W_A + W_B fixed. Prob_A must fall
// strictly in k; on symmetric specs (unit cost ratios, common power) E* must
// peak at k = 1 when the grid contains it.
SweepTable sweep_budget_ratio(const ContestSpec& spec, std::span<const double> grid);

// Rows (rho_t, s_t) over own-battle cost ratios. The salience profile must
// be single-peaked with its maximum at rho_t = k, which the grid must
// contain.
SweepTable salience_profile(const ContestSpec& spec, int t, std::span<const double> grid);

// d log Sym_t / d log k = r_t (p*_At - p*_Bt) in closed form.
double symmetry_elasticity(const ContestSpec& spec, int t);

// Rows (r_t, s_t, e_star, condition_holds) over battle t's discriminatory
// power, for specs with k = 1 and rho_t = 1 so the cost index stays at one.
// E* must rise between consecutive grid points whose lower row satisfies
// S_t >= max_{s != t} S_s / 2; rows violating the condition are recorded
// without any assertion.
SweepTable effort_cost_r_monotonicity(const ContestSpec& spec, int t, std::span<const double> grid);

struct ProductConjectureReport {
  double cost_index_product = 0.0;
  double team_prob_a = 0.0;
  bool pass = false;
};

// The product of battle cost advantages does not summarize team strength:
// cost indices (99, 99, 1/9801) multiply to one, yet team A wins with
// probability about 0.98.
ProductConjectureReport product_conjecture_counterexample();

}  // namespace contest
