#include "contest/probability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contest {

double battle_win_prob(double v_a, double v_b, const Battle& battle) {
  if (!(v_a >= 0.0) || !(v_b >= 0.0))
    throw std::invalid_argument("battle_win_prob: prize shares must be nonnegative");
  if (v_a == 0.0 && v_b == 0.0) return 0.5;  // both players sit out
  if (v_a == 0.0) return 0.0;
  if (v_b == 0.0) return 1.0;
  // Work on the log scale and rescale by the larger side before
  // exponentiating, so extreme cost ratios cannot overflow. Computing the
  // smaller side's ratio and complementing keeps p_A + p_B == 1 exact under
  // role swap.
  const double la = battle.power * (std::log(battle.cost_b) + std::log(v_a));
  const double lb = battle.power * (std::log(battle.cost_a) + std::log(v_b));
  const double m = std::max(la, lb);
  const double u = std::exp(la - m);
  const double w = std::exp(lb - m);
  const double s = u + w;
  return la >= lb ? 1.0 - w / s : u / s;
}

double battle_win_prob_dva(double v_a, double v_b, const Battle& battle) {
  if (!(v_a > 0.0) || !(v_b > 0.0))
    throw std::invalid_argument("battle_win_prob_dva: interior point required");
  const double p = battle_win_prob(v_a, v_b, battle);
  return battle.power * p * (1.0 - p) / v_a;
}

WinDistribution win_distribution(std::span<const double> probs) {
  for (double p : probs)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("win_distribution: probabilities must lie in [0,1]");
  std::vector<double> mass{1.0};
  mass.reserve(probs.size() + 1);
  for (double p : probs) {
    mass.push_back(0.0);
    for (int k = static_cast<int>(mass.size()) - 1; k >= 0; --k) {
      double stay = k < static_cast<int>(mass.size()) - 1 ? mass[k] * (1.0 - p) : 0.0;
      double up = k > 0 ? mass[k - 1] * p : 0.0;
      mass[k] = stay + up;
    }
  }
  return WinDistribution{std::move(mass)};
}

static void require_odd_contest(std::span<const double> probs) {
  const int n = static_cast<int>(probs.size());
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("an odd number (>= 3) of battle probabilities is required");
}

double team_win_prob(std::span<const double> probs) {
  require_odd_contest(probs);
  const WinDistribution dist = win_distribution(probs);
  const int need = (static_cast<int>(probs.size()) + 1) / 2;
  double total = 0.0;
  for (int k = need; k < static_cast<int>(dist.mass.size()); ++k) total += dist.mass[k];
  return total;
}

double pivotality(std::span<const double> probs, int t) {
  require_odd_contest(probs);
  const int n = static_cast<int>(probs.size());
  if (t < 0 || t >= n) throw std::invalid_argument("pivotality: battle index out of range");
  std::vector<double> others;
  others.reserve(n - 1);
  for (int s = 0; s < n; ++s)
    if (s != t) others.push_back(probs[s]);
  return win_distribution(others).mass[n / 2];
}

std::vector<double> grad_team_win_prob(const Allocation& alloc_a, const Allocation& alloc_b,
                                       const ContestSpec& spec) {
  const int n = spec.battle_count();
  if (static_cast<int>(alloc_a.shares.size()) != n || static_cast<int>(alloc_b.shares.size()) != n)
    throw std::invalid_argument("grad_team_win_prob: allocation size mismatch");
  for (int t = 0; t < n; ++t)
    if (!(alloc_a.shares[t] > 0.0) || !(alloc_b.shares[t] > 0.0))
      throw std::invalid_argument("grad_team_win_prob: boundary allocation in battle " +
                                  std::to_string(t + 1));
  std::vector<double> probs(n);
  for (int t = 0; t < n; ++t)
    probs[t] = battle_win_prob(alloc_a.shares[t], alloc_b.shares[t], spec.battles[t]);
  std::vector<double> grad(n);
  for (int t = 0; t < n; ++t) {
    const double slope = spec.battles[t].power * probs[t] * (1.0 - probs[t]) / alloc_a.shares[t];
    grad[t] = pivotality(probs, t) * slope;
  }
  return grad;
}

}  // namespace contest
