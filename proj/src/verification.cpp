#include "contest/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "contest/equilibrium.hpp"
#include "contest/probability.hpp"

namespace contest {

namespace {

// Battle as seen by the responding side: team B's battle is team A's battle
// with the two cost roles exchanged.
Battle side_battle(const Battle& b, Team side) {
  return side == Team::A ? b : Battle{b.cost_b, b.cost_a, b.power};
}

std::vector<double> side_probs(std::span<const double> own, std::span<const double> opp,
                               const ContestSpec& spec, Team side) {
  std::vector<double> probs(own.size());
  for (size_t t = 0; t < own.size(); ++t)
    probs[t] = battle_win_prob(own[t], opp[t], side_battle(spec.battles[t], side));
  return probs;
}

double side_value(std::span<const double> own, std::span<const double> opp,
                  const ContestSpec& spec, Team side) {
  return team_win_prob(side_probs(own, opp, spec, side));
}

}  // namespace

ConditionalMoments conditional_moments(std::span<const double> probs) {
  const int m = static_cast<int>(probs.size());
  if (m < 3 || m % 2 == 0)
    throw std::invalid_argument("conditional_moments: odd battle count >= 3 required");
  if (m > 25) throw std::invalid_argument("conditional_moments: enumeration capped at 25 battles");
  for (double p : probs)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("conditional_moments: probabilities must lie in [0,1]");
  const int need = (m + 1) / 2;

  Eigen::VectorXd first = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(m, m);
  double prob_a = 0.0;
  std::vector<int> wins;
  wins.reserve(m);

  // Depth-first walk over outcome vectors with a running path weight.
  // Subtrees that can no longer reach the majority are skipped; at an
  // accepted leaf the weight feeds P(A) and the first and second moments of
  // the winning indicators.
  auto walk = [&](auto&& self, int idx, double weight) -> void {
    const int won = static_cast<int>(wins.size());
    if (won + (m - idx) < need) return;
    if (idx == m) {
      prob_a += weight;
      for (int i = 0; i < won; ++i) {
        first(wins[i]) += weight;
        for (int j = i; j < won; ++j) second(wins[i], wins[j]) += weight;
      }
      return;
    }
    if (probs[idx] > 0.0) {
      wins.push_back(idx);
      self(self, idx + 1, weight * probs[idx]);
      wins.pop_back();
    }
    if (probs[idx] < 1.0) self(self, idx + 1, weight * (1.0 - probs[idx]));
  };
  walk(walk, 0, 1.0);

  if (!(prob_a > 0.0))
    throw std::invalid_argument("conditional_moments: majority event has zero probability");

  ConditionalMoments out;
  out.prob_a = prob_a;
  out.g.resize(m);
  out.d.resize(m);
  out.sigma_a.resize(m, m);
  Eigen::VectorXd cond_mean(m);
  for (int t = 0; t < m; ++t) cond_mean(t) = first(t) / prob_a;
  for (int t = 0; t < m; ++t) {
    out.g(t) = cond_mean(t) - probs[t];
    out.d(t) = probs[t] * (1.0 - probs[t]);
    for (int s = t; s < m; ++s) {
      const double cov = second(t, s) / prob_a - cond_mean(t) * cond_mean(s);
      out.sigma_a(t, s) = cov;
      out.sigma_a(s, t) = cov;
    }
  }
  return out;
}

HessianReport log_hessian(const Allocation& alloc_a, const Allocation& alloc_b,
                          const ContestSpec& spec) {
  const int n = spec.battle_count();
  if (static_cast<int>(alloc_a.shares.size()) != n || static_cast<int>(alloc_b.shares.size()) != n)
    throw std::invalid_argument("log_hessian: allocation size mismatch");
  for (int t = 0; t < n; ++t)
    if (!(alloc_a.shares[t] > 0.0) || !(alloc_b.shares[t] > 0.0))
      throw std::invalid_argument("log_hessian: boundary allocation in battle " +
                                  std::to_string(t + 1));

  std::vector<double> probs(n);
  for (int t = 0; t < n; ++t)
    probs[t] = battle_win_prob(alloc_a.shares[t], alloc_b.shares[t], spec.battles[t]);
  const ConditionalMoments cm = conditional_moments(probs);

  Eigen::VectorXd rv(n);  // r_t / v_At
  Eigen::VectorXd r(n);
  for (int t = 0; t < n; ++t) {
    r(t) = spec.battles[t].power;
    rv(t) = r(t) / alloc_a.shares[t];
  }

  HessianReport out;
  // H = (R V^-1)(Sigma_A - D)(R V^-1) - R V^-2 diag(G_t)
  out.h = rv.asDiagonal() * (cm.sigma_a - Eigen::MatrixXd(cm.d.asDiagonal())) * rv.asDiagonal();
  for (int t = 0; t < n; ++t) out.h(t, t) -= rv(t) / alloc_a.shares[t] * cm.g(t);

  Eigen::MatrixXd base = Eigen::MatrixXd(cm.d.asDiagonal()) - cm.sigma_a;
  out.m = base;
  out.m0 = base;
  for (int t = 0; t < n; ++t) {
    out.m(t, t) += cm.g(t) / r(t);
    out.m0(t, t) += cm.g(t);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(out.h, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(out.m, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em0(out.m0, Eigen::EigenvaluesOnly);
  out.max_eig_h = eh.eigenvalues()(n - 1);
  out.min_eig_m = em.eigenvalues()(0);
  out.min_eig_m0 = em0.eigenvalues()(0);
  return out;
}

BestResponse best_response(const Allocation& opponent, const ContestSpec& spec, Team side) {
  validate_spec(spec);
  const int n = spec.battle_count();
  if (static_cast<int>(opponent.shares.size()) != n)
    throw std::invalid_argument("best_response: opponent allocation size mismatch");
  for (double v : opponent.shares)
    if (!(v > 0.0)) throw std::invalid_argument("best_response: opponent must be interior");

  const double budget = spec.budget(side);
  std::vector<double> v(n, budget / n);

  constexpr int kMaxIterations = 10000;
  constexpr double kGradTol = 1e-10;
  double eta = 1.0;

  struct Point {
    double log_value = 0.0;
    double grad_norm = 0.0;
    std::vector<double> step;  // grad_t - weighted mean, the ascent direction
  };
  // Gradient of the log objective, its v-weighted mean and the projected
  // gradient in the simplex geometry: pg_t = (v_t / W)(grad_t - mean),
  // which vanishes exactly at the interior Lagrange point.
  auto probe = [&](const std::vector<double>& shares) {
    const std::vector<double> probs = side_probs(shares, opponent.shares, spec, side);
    const double value = team_win_prob(probs);
    Point point;
    point.log_value = std::log(value);
    point.step.resize(n);
    double mean = 0.0;
    for (int t = 0; t < n; ++t) {
      const double slope = spec.battles[t].power * probs[t] * (1.0 - probs[t]) / shares[t];
      point.step[t] = pivotality(probs, t) * slope / value;
      mean += shares[t] / budget * point.step[t];
    }
    double norm = 0.0;
    for (int t = 0; t < n; ++t) {
      point.step[t] -= mean;
      const double proj = shares[t] / budget * point.step[t];
      norm += proj * proj;
    }
    point.grad_norm = std::sqrt(norm);
    return point;
  };

  Point here = probe(v);
  int iter = 0;
  bool converged = false;
  std::vector<double> trial(n);
  std::vector<double> best_point = v;
  double best_norm = here.grad_norm;

  for (iter = 0; iter < kMaxIterations; ++iter) {
    if (here.grad_norm < best_norm) {
      best_norm = here.grad_norm;
      best_point = v;
    }
    if (here.grad_norm < kGradTol) {
      converged = true;
      break;
    }

    // Multiplicative-weights step with a backtracking step size. Away from
    // the optimum a step must improve the log objective; once the objective
    // is flat to double precision the projected-gradient norm still carries
    // signal, so plateau steps are accepted only when they shrink it.
    bool accepted = false;
    while (eta > 1e-18) {
      double total = 0.0;
      for (int t = 0; t < n; ++t) {
        trial[t] = v[t] * std::exp(eta * here.step[t]);
        total += trial[t];
      }
      for (int t = 0; t < n; ++t) trial[t] *= budget / total;
      const Point next = probe(trial);
      const bool improved = next.log_value > here.log_value;
      const bool plateau_descent =
          next.log_value >= here.log_value - 1e-13 && next.grad_norm < here.grad_norm;
      if (improved || plateau_descent) {
        v = trial;
        here = next;
        eta = std::min(eta * 1.2, 1e6);
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;  // step size exhausted
  }

  BestResponse out;
  out.alloc = Allocation{std::move(best_point), side};
  out.value = side_value(out.alloc.shares, opponent.shares, spec, side);
  out.grad_norm = best_norm;
  out.iterations = iter;
  out.converged = converged;
  return out;
}

BestResponse grid_response(const Allocation& opponent, const ContestSpec& spec, Team side) {
  if (spec.battle_count() != 3)
    throw std::invalid_argument("grid_response: only 3-battle specs are supported");
  for (double v : opponent.shares)
    if (!(v > 0.0)) throw std::invalid_argument("grid_response: opponent must be interior");
  const double budget = spec.budget(side);

  auto value_at = [&](double f1, double f2) {
    const double f3 = std::max(0.0, 1.0 - f1 - f2);  // guard one-ulp undershoot
    const std::vector<double> shares{budget * f1, budget * f2, budget * f3};
    return side_value(shares, opponent.shares, spec, side);
  };

  // Coarse pass at resolution 0.002 over the whole simplex. Lexicographic
  // scan order plus strict improvement gives the lowest-index tie break.
  constexpr int kSteps = 500;
  double best_f1 = 1.0 / 3.0, best_f2 = 1.0 / 3.0;
  double best = -1.0;
  for (int i = 0; i <= kSteps; ++i) {
    for (int j = 0; j + i <= kSteps; ++j) {
      const double val = value_at(i / static_cast<double>(kSteps), j / static_cast<double>(kSteps));
      if (val > best) {
        best = val;
        best_f1 = i / static_cast<double>(kSteps);
        best_f2 = j / static_cast<double>(kSteps);
      }
    }
  }

  // Local refinement: zoom a 21x21 window around the incumbent, shrinking
  // the radius tenfold per round.
  double radius = 1.0 / kSteps;
  for (int round = 0; round < 6; ++round) {
    const double c1 = best_f1, c2 = best_f2;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double f1 = c1 + i * radius / 10.0;
        const double f2 = c2 + j * radius / 10.0;
        if (f1 < 0.0 || f2 < 0.0 || f1 + f2 > 1.0) continue;
        const double val = value_at(f1, f2);
        if (val > best) {
          best = val;
          best_f1 = f1;
          best_f2 = f2;
        }
      }
    }
    radius /= 10.0;
  }

  BestResponse out;
  out.alloc = Allocation{
      {budget * best_f1, budget * best_f2, budget * (1.0 - best_f1 - best_f2)}, side};
  out.value = best;
  out.converged = true;
  return out;
}

VerifyReport verify_equilibrium(const ContestSpec& spec, double tol) {
  validate_spec(spec);
  const Equilibrium eq = solve(spec);
  const int n = spec.battle_count();
  VerifyReport report;

  // (a) closed form is each side's numerical best response to the other.
  for (Team side : {Team::A, Team::B}) {
    const Allocation& own = side == Team::A ? eq.alloc_a : eq.alloc_b;
    const Allocation& opp = side == Team::A ? eq.alloc_b : eq.alloc_a;
    const BestResponse br = best_response(opp, spec, side);
    double residual = br.converged ? 0.0 : std::numeric_limits<double>::infinity();
    for (int t = 0; t < n; ++t)
      residual = std::max(residual, std::abs(br.alloc.shares[t] - own.shares[t]));
    report.checks.push_back(
        {side == Team::A ? "best_response_a" : "best_response_b", residual, tol, residual <= tol});
  }

  // (b) no boundary allocation on the test grid beats the equilibrium. The
  // grid zeroes one battle at a time (redistributing proportionally and
  // uniformly) and also tries every single-battle corner.
  for (Team side : {Team::A, Team::B}) {
    const Allocation& own = side == Team::A ? eq.alloc_a : eq.alloc_b;
    const Allocation& opp = side == Team::A ? eq.alloc_b : eq.alloc_a;
    const double budget = spec.budget(side);
    const double eq_value = side_value(own.shares, opp.shares, spec, side);
    double worst_gap = -std::numeric_limits<double>::infinity();
    auto consider = [&](const std::vector<double>& candidate) {
      worst_gap = std::max(worst_gap, side_value(candidate, opp.shares, spec, side) - eq_value);
    };
    for (int z = 0; z < n; ++z) {
      std::vector<double> proportional(n, 0.0), uniform(n, 0.0), corner(n, 0.0);
      const double rest = budget - own.shares[z];
      for (int t = 0; t < n; ++t) {
        if (t == z) continue;
        proportional[t] = own.shares[t] * budget / rest;
        uniform[t] = budget / (n - 1);
      }
      corner[z] = budget;
      consider(proportional);
      consider(uniform);
      consider(corner);
    }
    report.checks.push_back({side == Team::A ? "boundary_dominance_a" : "boundary_dominance_b",
                             worst_gap, 1e-12, worst_gap <= 1e-12});
  }

  // (c) first-order stationarity: gradient components all equal.
  const std::vector<double> grad = grad_team_win_prob(eq.alloc_a, eq.alloc_b, spec);
  double lo = grad[0], hi = grad[0];
  for (double g : grad) {
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  const double spread = (hi - lo) / std::abs(hi);
  report.checks.push_back({"foc_stationarity", spread, 1e-10, spread <= 1e-10});
  return report;
}

QuasiconcavityReport quasiconcavity_counterexample() {
  QuasiconcavityReport out;
  const std::vector<double> first{0.999, 0.999, 0.001};
  const std::vector<double> second{0.001, 0.999, 0.999};
  const std::vector<double> midpoint{0.5, 0.999, 0.5};
  out.endpoint_first = team_win_prob(first);
  out.endpoint_second = team_win_prob(second);
  out.midpoint = team_win_prob(midpoint);
  const bool endpoints_high = out.endpoint_first >= 0.9975 && out.endpoint_first <= 0.9985 &&
                              out.endpoint_second >= 0.9975 && out.endpoint_second <= 0.9985;
  const bool dip = out.midpoint < std::min(out.endpoint_first, out.endpoint_second) &&
                   std::abs(out.midpoint - 0.7495) <= 1e-4;
  out.pass = endpoints_high && dip;
  return out;
}

}  // namespace contest
