#pragma once

// Core primitives of a two-team majoritarian multi-battle contest and the
// records produced by solving it. All types are immutable value types once
// constructed; they can be shared freely across threads.

#include <stdexcept>
#include <string>
#include <vector>

namespace contest {

enum class Team { A, B };

// One pairwise battle: the matched players' marginal effort costs and the
// discriminatory power of the winner-selection technology.
struct Battle {
  double cost_a = 1.0;  // c_At > 0
  double cost_b = 1.0;  // c_Bt > 0
  double power = 1.0;   // r_t in (0, 1]
};

// A full contest: an odd number (>= 3) of battles plus the two team budgets.
// Battle order in `battles` is battle-index order t = 1..2N+1 (0-based here).
struct ContestSpec {
  std::vector<Battle> battles;
  double budget_a = 1.0;  // W_A > 0
  double budget_b = 1.0;  // W_B > 0

  int battle_count() const { return static_cast<int>(battles.size()); }
  // N, so that the contest has 2N+1 battles and N+1 wins take the majority.
  int half_count() const { return battle_count() / 2; }
  int majority_need() const { return half_count() + 1; }
  double budget(Team side) const { return side == Team::A ? budget_a : budget_b; }
};

// Division of one team's budget across battles.
struct Allocation {
  std::vector<double> shares;
  Team owner = Team::A;
};

// Closed-form equilibrium record. Field-by-field consistency (complementary
// probabilities, proportional prizes, salience factorization, HHI bounds) is
// established by construction in solve() and re-checked by the test suite.
struct Equilibrium {
  double k = 1.0;                      // budget ratio W_B / W_A
  std::vector<double> cost_index;      // c_t = (c_Bt / c_At)^{r_t}
  std::vector<double> prob_a;          // p*_At
  std::vector<double> pivotality;      // theta*(t)
  std::vector<double> responsiveness;  // R_t = r_t p*_At p*_Bt
  std::vector<double> salience;        // S_t = theta*(t) R_t
  Allocation alloc_a;                  // v*_A, proportional to salience
  Allocation alloc_b;                  // v*_B = k v*_A
  double team_prob_a = 0.0;            // Prob*_A
  std::vector<double> efforts_a;       // e*_At
  std::vector<double> efforts_b;       // e*_Bt
  double total_effort_cost = 0.0;      // E*
  double hhi = 0.0;                    // Herfindahl index of salience shares
};

// Ordered partition of the battle set into clusters played sequentially;
// battles inside a cluster are resolved simultaneously.
struct TemporalStructure {
  std::vector<std::vector<int>> clusters;  // 0-based battle indices
};

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Returns `spec` unchanged if every type invariant holds; otherwise throws
// SpecError naming the first violated invariant and the offending battle.
const ContestSpec& validate_spec(const ContestSpec& spec);

// Checks nonnegative shares summing to the owner's budget (1e-12 relative).
void validate_allocation(const Allocation& alloc, const ContestSpec& spec);

// Checks that `structure` partitions {0, .., battle_count-1} exactly.
void validate_structure(const TemporalStructure& structure, int battle_count);

// The same contest seen from team B's side: costs and budgets swapped.
ContestSpec swap_teams(const ContestSpec& spec);

}  // namespace contest
