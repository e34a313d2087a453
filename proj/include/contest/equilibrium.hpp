#pragma once

// Closed-form equilibrium solver plus the effort levels, the effort-cost /
// HHI decomposition, and the derivative-free salience for any homogeneous
// reduced-form contest success function.

#include <functional>
#include <utility>

#include "contest/domain.hpp"

namespace contest {

// Solves the contest in closed form. Battle probabilities depend only on
// own-battle primitives and the budget ratio, so no fixed-point iteration is
// involved; every salience is strictly positive and the solver is total on
// validated specs.
Equilibrium solve(const ContestSpec& spec);

// Equilibrium efforts e*_it = r_t p*_At p*_Bt theta*(t) v*_it / c_it.
std::pair<std::vector<double>, std::vector<double>> battle_efforts(const Equilibrium& eq,
                                                                   const ContestSpec& spec);

struct EffortCost {
  double total = 0.0;           // E* = (W_A + W_B) * total_salience * hhi
  double hhi = 0.0;             // sum of squared salience shares
  double total_salience = 0.0;  // sum_t S_t
};

EffortCost total_effort_cost(const Equilibrium& eq);

// Salience of a battle under a caller-supplied reduced-form CSF that is
// homogeneous of degree zero in the two prize shares. The derivative is
// taken by central differences at (x, k x) with step x * 1e-6; the result
// does not depend on the reference scale x. Throws on a non-finite
// derivative.
double salience_hd0(const std::function<double(double, double)>& reduced_csf, double pivotality,
                    double k, double x);

}  // namespace contest
