#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.
// The oracles enumerate all 2^n outcome vectors directly and never touch the
// convolution code paths they are used to check.

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "contest/domain.hpp"

namespace testsupport {

// The running example: r_t = 1, cost indices (1, 4, 2), W_A = W_B = 1.
inline contest::ContestSpec table1_spec() {
  contest::ContestSpec spec;
  spec.battles = {{1.0, 1.0, 1.0}, {1.0, 4.0, 1.0}, {1.0, 2.0, 1.0}};
  return spec;
}

inline contest::ContestSpec symmetric_spec(int battles = 3) {
  contest::ContestSpec spec;
  spec.battles.assign(battles, contest::Battle{1.0, 1.0, 1.0});
  return spec;
}

inline double enum_outcome_mass(std::span<const double> probs, std::uint64_t mask) {
  double weight = 1.0;
  for (size_t t = 0; t < probs.size(); ++t)
    weight *= (mask >> t & 1) ? probs[t] : 1.0 - probs[t];
  return weight;
}

// P(at least `need` A-wins) by direct enumeration.
inline double enum_at_least(std::span<const double> probs, int need) {
  const int n = static_cast<int>(probs.size());
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
    if (std::popcount(mask) >= need) total += enum_outcome_mass(probs, mask);
  return total;
}

inline double enum_team_win_prob(std::span<const double> probs) {
  return enum_at_least(probs, (static_cast<int>(probs.size()) + 1) / 2);
}

// P(exactly N among the battles other than t).
inline double enum_pivotality(std::span<const double> probs, int t) {
  const int n = static_cast<int>(probs.size());
  std::vector<double> rest;
  for (int s = 0; s < n; ++s)
    if (s != t) rest.push_back(probs[s]);
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest.size()); ++mask)
    if (std::popcount(mask) == n / 2) total += enum_outcome_mass(rest, mask);
  return total;
}

inline contest::ContestSpec random_spec(std::mt19937_64& rng, int half_count) {
  std::uniform_real_distribution<double> log_cost(-0.8, 0.8);
  std::uniform_real_distribution<double> power(0.3, 1.0);
  std::uniform_real_distribution<double> budget(0.5, 2.0);
  contest::ContestSpec spec;
  for (int t = 0; t < 2 * half_count + 1; ++t)
    spec.battles.push_back(
        {std::exp(log_cost(rng)), std::exp(log_cost(rng)), power(rng)});
  spec.budget_a = budget(rng);
  spec.budget_b = budget(rng);
  return spec;
}

inline std::vector<double> random_probs(std::mt19937_64& rng, int n, double lo = 0.05,
                                        double hi = 0.95) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> probs(n);
  for (double& p : probs) p = dist(rng);
  return probs;
}

inline contest::Allocation random_interior_alloc(std::mt19937_64& rng,
                                                 const contest::ContestSpec& spec,
                                                 contest::Team side) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> shares(spec.battle_count());
  double total = 0.0;
  for (double& s : shares) {
    s = 0.05 + unit(rng);
    total += s;
  }
  for (double& s : shares) s *= spec.budget(side) / total;
  return contest::Allocation{std::move(shares), side};
}

}  // namespace testsupport
