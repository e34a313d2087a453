#pragma once

// Independent checks that the closed form is a global equilibrium: exact
// conditional moments of the battle outcomes given team victory, the
// log-Hessian and the matrices M / M0 whose definiteness carries
// log-concavity, numerical best responses over the simplex, and the two
// two structural counterexamples.

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "contest/domain.hpp"

namespace contest {

// Moments of the win indicators X_t conditional on the majority event A,
// computed by exact enumeration of all 2^(2N+1) outcomes.
struct ConditionalMoments {
  Eigen::VectorXd g;        // G_t = E[X_t | A] - p_t, nonnegative
  Eigen::MatrixXd sigma_a;  // Cov(X | A)
  Eigen::VectorXd d;        // p_t (1 - p_t)
  double prob_a = 0.0;      // P(A)
};

struct HessianReport {
  Eigen::MatrixXd h;   // Hessian of log Prob_A in v_A
  Eigen::MatrixXd m;   // M  = D + diag(G_t / r_t) - Sigma_A
  Eigen::MatrixXd m0;  // M0 = D + diag(G_t) - Sigma_A, the r-free relaxation
  double max_eig_h = 0.0;
  double min_eig_m = 0.0;
  double min_eig_m0 = 0.0;
};

struct BestResponse {
  Allocation alloc;
  double value = 0.0;      // responder's contest-winning probability
  double grad_norm = 0.0;  // final projected-gradient norm
  int iterations = 0;
  bool converged = false;
};

struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct QuasiconcavityReport {
  double endpoint_first = 0.0;   // Prob_A at (0.999, 0.999, 0.001)
  double endpoint_second = 0.0;  // Prob_A at (0.001, 0.999, 0.999)
  double midpoint = 0.0;         // Prob_A at (0.5, 0.999, 0.5)
  bool pass = false;
};

// Exact conditional moments over all outcomes. Probabilities may touch the
// boundary of [0,1] as long as the majority event keeps positive mass;
// enumeration is refused above 25 battles.
ConditionalMoments conditional_moments(std::span<const double> probs);

// Analytic Hessian of log Prob_A in team A's shares at an interior
// allocation pair, together with M, M0 and their extreme eigenvalues.
HessianReport log_hessian(const Allocation& alloc_a, const Allocation& alloc_b,
                          const ContestSpec& spec);

// Maximizes the responder's contest-winning probability over its budget
// simplex by multiplicative-weights ascent on the log objective, with a
// backtracking step size, uniform start, and a 1e-10 projected-gradient
// stopping rule (at most 10000 iterations).
BestResponse best_response(const Allocation& opponent, const ContestSpec& spec, Team side);

// Coarse independent oracle for 3-battle specs: exhaustive simplex grid at
// resolution 0.002 followed by local zooming refinement. Ties in the grid
// pass are broken toward the lowest battle index.
BestResponse grid_response(const Allocation& opponent, const ContestSpec& spec, Team side);

// Solves the spec, then checks per side that the numerical best response to
// the closed-form opponent recovers the closed form within `tol` per
// component, that no boundary allocation on a test grid beats the
// equilibrium value, and that the first-order conditions are stationary.
VerifyReport verify_equilibrium(const ContestSpec& spec, double tol);

// Prob_A is not quasiconcave in the battle probabilities: both endpoints of
// one segment score about 0.998 while the midpoint scores only 0.7495.
QuasiconcavityReport quasiconcavity_counterexample();

}  // namespace contest
