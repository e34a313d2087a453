#pragma once

// Team-winning probability under arbitrary cluster orderings with clinch
// handling, and the pivotal gap at any partial history. The cluster
// recursion marginalizes battles played after a clinch in closed form, which
// is exactly why the convention for trivial battles (primitive probability
// versus a fair coin) cannot affect any returned value.

#include <span>

#include "contest/domain.hpp"

namespace contest {

struct BattleOutcome {
  int battle = 0;  // 0-based index
  bool a_won = false;
};

// Exact recursion over the cluster sequence on the state (A-wins, B-wins).
// Once a team reaches N+1 wins its mass is absorbed: the remaining battles
// resolve but cannot alter the winner. Rejects invalid partitions and
// clusters of more than 15 battles (within-cluster outcomes are enumerated).
double eval_temporal(std::span<const double> probs, const TemporalStructure& structure);

// pi_i^{(t)} at a history: the gain in team i's contest-winning probability
// from winning battle t rather than losing it, where t belongs to the next
// unresolved cluster. Conditioning on battle t reduces the gap to the
// probability of one exact split among the remaining battles, an event that
// is literally the same for both teams; the two sides therefore return
// bitwise-identical values. Returns 0 once the history has clinched.
double pivotal_gap(std::span<const double> probs, const TemporalStructure& structure,
                   std::span<const BattleOutcome> history, int t, Team side = Team::A);

}  // namespace contest
