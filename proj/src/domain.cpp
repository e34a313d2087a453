#include "contest/domain.hpp"

#include <cmath>
#include <set>

namespace contest {

const ContestSpec& validate_spec(const ContestSpec& spec) {
  const int n = spec.battle_count();
  if (n < 3) throw SpecError("battle count must be at least 3, got " + std::to_string(n));
  if (n % 2 == 0) throw SpecError("even battle count " + std::to_string(n) + "; an odd number is required");
  for (int t = 0; t < n; ++t) {
    const Battle& b = spec.battles[t];
    const std::string where = " in battle " + std::to_string(t + 1);
    if (!(b.cost_a > 0.0)) throw SpecError("nonpositive cost_a" + where);
    if (!(b.cost_b > 0.0)) throw SpecError("nonpositive cost_b" + where);
    if (!(b.power > 0.0 && b.power <= 1.0)) throw SpecError("power outside (0,1]" + where);
  }
  if (!(spec.budget_a > 0.0)) throw SpecError("nonpositive budget_a");
  if (!(spec.budget_b > 0.0)) throw SpecError("nonpositive budget_b");
  return spec;
}

void validate_allocation(const Allocation& alloc, const ContestSpec& spec) {
  if (static_cast<int>(alloc.shares.size()) != spec.battle_count())
    throw SpecError("allocation has " + std::to_string(alloc.shares.size()) + " shares for " +
                    std::to_string(spec.battle_count()) + " battles");
  double sum = 0.0;
  for (size_t t = 0; t < alloc.shares.size(); ++t) {
    if (!(alloc.shares[t] >= 0.0))
      throw SpecError("negative share in battle " + std::to_string(t + 1));
    sum += alloc.shares[t];
  }
  const double budget = spec.budget(alloc.owner);
  if (std::abs(sum - budget) > 1e-12 * budget)
    throw SpecError("shares sum to " + std::to_string(sum) + ", budget is " + std::to_string(budget));
}

void validate_structure(const TemporalStructure& structure, int battle_count) {
  std::set<int> seen;
  for (const auto& cluster : structure.clusters) {
    if (cluster.empty()) throw SpecError("empty cluster in temporal structure");
    for (int t : cluster) {
      if (t < 0 || t >= battle_count)
        throw SpecError("battle index " + std::to_string(t + 1) + " out of range");
      if (!seen.insert(t).second)
        throw SpecError("battle " + std::to_string(t + 1) + " appears in two clusters");
    }
  }
  if (static_cast<int>(seen.size()) != battle_count)
    throw SpecError("temporal structure does not cover every battle");
}

ContestSpec swap_teams(const ContestSpec& spec) {
  ContestSpec out;
  out.battles.reserve(spec.battles.size());
  for (const Battle& b : spec.battles) out.battles.push_back({b.cost_b, b.cost_a, b.power});
  out.budget_a = spec.budget_b;
  out.budget_b = spec.budget_a;
  return out;
}

}  // namespace contest
