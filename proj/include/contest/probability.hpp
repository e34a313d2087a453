#pragma once

// Battle-level reduced-form winning probabilities and majority-rule
// aggregation: the win-count law, team-winning probability, pivotality and
// the pivotal-factorization gradient. Everything here is a pure function of
// its arguments.

#include <span>
#include <vector>

#include "contest/domain.hpp"

namespace contest {

// Exact law of the number of battles won by team A over a battle subset.
struct WinDistribution {
  std::vector<double> mass;  // mass[k] = P(exactly k A-wins), k = 0..m
  int size() const { return static_cast<int>(mass.size()) - 1; }
};

// Reduced-form probability that team A's player wins the battle given the
// two prize shares: (c_B v_a)^r / ((c_B v_a)^r + (c_A v_b)^r). At the origin
// both players sit out and the battle is a fair coin; with exactly one zero
// share the funded side wins outright. Complementarity is exact: calling
// with the roles of the two sides swapped returns 1 minus this value.
double battle_win_prob(double v_a, double v_b, const Battle& battle);

// Analytic own-share slope r p (1-p) / v_a of the reduced form; requires an
// interior point (both shares strictly positive).
double battle_win_prob_dva(double v_a, double v_b, const Battle& battle);

// Poisson-binomial law via the one-battle-at-a-time convolution, O(m^2).
WinDistribution win_distribution(std::span<const double> probs);

// P(team A wins at least N+1 of the 2N+1 battles). Requires odd size >= 3.
double team_win_prob(std::span<const double> probs);

// Probability that the battles other than t split N-N, so t decides the
// contest. `t` is a 0-based index into an odd-length probability vector.
double pivotality(std::span<const double> probs, int t);

// Gradient of team A's contest-winning probability in its own shares,
// component t equal to theta(t) times the reduced-form slope. Both
// allocations must be strictly interior; the reduced form has a singular
// derivative on the boundary.
std::vector<double> grad_team_win_prob(const Allocation& alloc_a, const Allocation& alloc_b,
                                       const ContestSpec& spec);

}  // namespace contest
