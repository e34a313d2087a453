#include "contest/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

#include "contest/probability.hpp"

namespace contest {

Equilibrium solve(const ContestSpec& spec) {
  validate_spec(spec);
  const int n = spec.battle_count();

  Equilibrium eq;
  eq.k = spec.budget_b / spec.budget_a;
  const double log_k = std::log(eq.k);

  eq.cost_index.resize(n);
  eq.prob_a.resize(n);
  for (int t = 0; t < n; ++t) {
    const Battle& b = spec.battles[t];
    // c_t = (c_Bt / c_At)^{r_t} on the log scale, so extreme cost ratios
    // stay inside the double range.
    const double log_c = b.power * (std::log(b.cost_b) - std::log(b.cost_a));
    eq.cost_index[t] = std::exp(log_c);
    // p*_At = c_t / (c_t + k^{r_t})
    eq.prob_a[t] = 1.0 / (1.0 + std::exp(b.power * log_k - log_c));
  }

  eq.pivotality.resize(n);
  eq.responsiveness.resize(n);
  eq.salience.resize(n);
  double total_salience = 0.0;
  for (int t = 0; t < n; ++t) {
    eq.pivotality[t] = pivotality(eq.prob_a, t);
    eq.responsiveness[t] = spec.battles[t].power * eq.prob_a[t] * (1.0 - eq.prob_a[t]);
    eq.salience[t] = eq.pivotality[t] * eq.responsiveness[t];
    total_salience += eq.salience[t];
  }

  eq.alloc_a = Allocation{std::vector<double>(n), Team::A};
  eq.alloc_b = Allocation{std::vector<double>(n), Team::B};
  for (int t = 0; t < n; ++t) {
    const double share = eq.salience[t] / total_salience;
    eq.alloc_a.shares[t] = spec.budget_a * share;
    eq.alloc_b.shares[t] = spec.budget_b * share;
  }

  eq.team_prob_a = team_win_prob(eq.prob_a);

  auto [ea, eb] = battle_efforts(eq, spec);
  eq.efforts_a = std::move(ea);
  eq.efforts_b = std::move(eb);

  const EffortCost cost = total_effort_cost(eq);
  eq.total_effort_cost = cost.total;
  eq.hhi = cost.hhi;
  return eq;
}

std::pair<std::vector<double>, std::vector<double>> battle_efforts(const Equilibrium& eq,
                                                                   const ContestSpec& spec) {
  const int n = spec.battle_count();
  if (static_cast<int>(eq.prob_a.size()) != n)
    throw std::invalid_argument("battle_efforts: equilibrium does not match spec");
  std::vector<double> efforts_a(n), efforts_b(n);
  for (int t = 0; t < n; ++t) {
    // The effective prize is theta*(t) v*_it; the standard within-battle
    // equilibrium then gives e*_it = r_t p*_At p*_Bt theta*(t) v*_it / c_it.
    const double swing =
        spec.battles[t].power * eq.prob_a[t] * (1.0 - eq.prob_a[t]) * eq.pivotality[t];
    efforts_a[t] = swing * eq.alloc_a.shares[t] / spec.battles[t].cost_a;
    efforts_b[t] = swing * eq.alloc_b.shares[t] / spec.battles[t].cost_b;
  }
  return {std::move(efforts_a), std::move(efforts_b)};
}

EffortCost total_effort_cost(const Equilibrium& eq) {
  EffortCost out;
  for (double s : eq.salience) out.total_salience += s;
  for (double s : eq.salience) {
    const double share = s / out.total_salience;
    out.hhi += share * share;
  }
  double budget_a = 0.0, budget_b = 0.0;
  for (double v : eq.alloc_a.shares) budget_a += v;
  for (double v : eq.alloc_b.shares) budget_b += v;
  out.total = (budget_a + budget_b) * out.total_salience * out.hhi;
  return out;
}

double salience_hd0(const std::function<double(double, double)>& reduced_csf, double pivotality,
                    double k, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("salience_hd0: reference scale must be positive");
  const double h = x * 1e-6;
  const double slope = (reduced_csf(x + h, k * x) - reduced_csf(x - h, k * x)) / (2.0 * h);
  if (!std::isfinite(slope)) throw std::runtime_error("salience_hd0: non-finite derivative");
  return pivotality * x * slope;
}

}  // namespace contest
