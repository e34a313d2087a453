#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <tuple>

#include "contest/equilibrium.hpp"
#include "contest/probability.hpp"
#include "contest/temporal.hpp"
#include "support.hpp"

using namespace contest;
using namespace testsupport;

namespace {

TemporalStructure random_partition(std::mt19937_64& rng, int n) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  TemporalStructure structure;
  size_t at = 0;
  while (at < order.size()) {
    const size_t size = 1 + rng() % (order.size() - at);
    structure.clusters.emplace_back(order.begin() + at, order.begin() + at + size);
    at += size;
  }
  return structure;
}

enum class TrivialRule { Primitive, Half };

// Test-only oracle that keeps resolving every battle after a clinch, at
// either the primitive probability or a fair coin. The winner is fixed at
// the first majority, so the two conventions must agree with eval_temporal
// up to summation noise.
double full_resolution(std::span<const double> probs, const TemporalStructure& structure,
                       TrivialRule rule) {
  const int n = static_cast<int>(probs.size());
  const int need = (n + 1) / 2;
  std::map<std::tuple<int, int, int>, double> states;  // (a, b, winner)
  states[{0, 0, 0}] = 1.0;
  for (const auto& cluster : structure.clusters) {
    std::map<std::tuple<int, int, int>, double> next;
    for (const auto& [state, mass] : states) {
      const auto [a, b, winner] = state;
      const int size = static_cast<int>(cluster.size());
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
        double weight = 1.0;
        int wins = 0;
        for (int i = 0; i < size; ++i) {
          const double p =
              winner != 0 && rule == TrivialRule::Half ? 0.5 : probs[cluster[i]];
          if (mask >> i & 1) {
            weight *= p;
            ++wins;
          } else {
            weight *= 1.0 - p;
          }
        }
        const int na = a + wins;
        const int nb = b + size - wins;
        int nwinner = winner;
        if (nwinner == 0 && na >= need) nwinner = 1;
        if (nwinner == 0 && nb >= need) nwinner = 2;
        next[{na, nb, nwinner}] += mass * weight;
      }
    }
    states.swap(next);
  }
  double win_a = 0.0;
  for (const auto& [state, mass] : states)
    if (std::get<2>(state) == 1) win_a += mass;
  return win_a;
}

}  // namespace

TEST_CASE("sequential play reproduces the simultaneous value") {
  const std::vector<double> probs{0.5, 0.8, 2.0 / 3.0};
  const TemporalStructure sequential{{{0}, {1}, {2}}};
  CHECK(eval_temporal(probs, sequential) == doctest::Approx(11.0 / 15).epsilon(1e-14));

  const TemporalStructure single{{{0, 1, 2}}};
  CHECK(std::abs(eval_temporal(probs, single) - team_win_prob(probs)) <= 1e-15);
}

TEST_CASE("a clinched contest is decided whatever the structure") {
  const std::vector<double> probs{1.0, 1.0, 0.37};
  for (const TemporalStructure& structure :
       {TemporalStructure{{{0}, {1}, {2}}}, TemporalStructure{{{0, 1, 2}}},
        TemporalStructure{{{2}, {0, 1}}}}) {
    CHECK(eval_temporal(probs, structure) == 1.0);
  }
}

TEST_CASE("trivial battles are marginalized exactly") {
  // Battles 1..3 clinch for team A before the last two battles are played.
  std::vector<double> probs{1.0, 1.0, 1.0, 0.37, 0.8};
  const TemporalStructure sequential{{{0}, {1}, {2}, {3}, {4}}};
  const double before = eval_temporal(probs, sequential);
  probs[3] = 0.5;
  probs[4] = 0.5;
  CHECK(eval_temporal(probs, sequential) == before);
  CHECK(before == 1.0);
}

TEST_CASE("order invariance across random specs and partitions") {
  std::mt19937_64 rng(107);
  for (int i = 0; i < 50; ++i) {
    const ContestSpec spec = random_spec(rng, 1 + i % 3);
    const Equilibrium eq = solve(spec);
    const double simultaneous = team_win_prob(eq.prob_a);
    for (int j = 0; j < 20; ++j) {
      const TemporalStructure structure = random_partition(rng, spec.battle_count());
      CHECK(std::abs(eval_temporal(eq.prob_a, structure) - simultaneous) <= 1e-12);
    }
  }
}

TEST_CASE("both trivial-battle conventions agree with the cluster recursion") {
  std::mt19937_64 rng(109);
  for (int i = 0; i < 30; ++i) {
    const int n = 3 + 2 * (i % 2);
    const std::vector<double> probs = random_probs(rng, n, 0.0, 1.0);
    const TemporalStructure structure = random_partition(rng, n);
    const double absorbed = eval_temporal(probs, structure);
    const double primitive = full_resolution(probs, structure, TrivialRule::Primitive);
    const double half = full_resolution(probs, structure, TrivialRule::Half);
    CHECK(std::abs(primitive - absorbed) <= 1e-14);
    CHECK(std::abs(half - absorbed) <= 1e-14);
  }
}

TEST_CASE("pivotal gap at the empty history matches pivotality") {
  const std::vector<double> probs{0.5, 0.8, 2.0 / 3.0};
  const TemporalStructure sequential{{{0}, {1}, {2}}};
  const double gap = pivotal_gap(probs, sequential, {}, 0);
  CHECK(gap == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(std::abs(gap - pivotality(probs, 0)) <= 1e-15);

  std::mt19937_64 rng(113);
  for (int i = 0; i < 30; ++i) {
    const int n = 3 + 2 * (i % 3);
    const std::vector<double> random = random_probs(rng, n);
    const TemporalStructure single{{[&] {
      std::vector<int> all(n);
      for (int t = 0; t < n; ++t) all[t] = t;
      return all;
    }()}};
    for (int t = 0; t < n; ++t)
      CHECK(std::abs(pivotal_gap(random, single, {}, t) - pivotality(random, t)) <= 1e-14);
  }
}

TEST_CASE("pivotal gap vanishes once the history clinches") {
  const std::vector<double> probs{0.9, 0.9, 0.9, 0.4, 0.4};
  const TemporalStructure structure{{{0, 1, 2}, {3}, {4}}};
  const std::vector<BattleOutcome> clinched{{0, true}, {1, true}, {2, true}};
  CHECK(pivotal_gap(probs, structure, clinched, 3) == 0.0);
}

TEST_CASE("pivotal gap is team-symmetric bitwise at every sampled node") {
  std::mt19937_64 rng(127);
  for (int i = 0; i < 60; ++i) {
    const int n = 3 + 2 * (i % 3);
    const std::vector<double> probs = random_probs(rng, n, 0.0, 1.0);
    const TemporalStructure structure = random_partition(rng, n);
    // Resolve a random prefix of clusters with random outcomes.
    const size_t prefix = rng() % structure.clusters.size();
    std::vector<BattleOutcome> history;
    for (size_t z = 0; z < prefix; ++z)
      for (int battle : structure.clusters[z]) history.push_back({battle, rng() % 2 == 0});
    for (int t : structure.clusters[prefix]) {
      const double a_side = pivotal_gap(probs, structure, history, t, Team::A);
      const double b_side = pivotal_gap(probs, structure, history, t, Team::B);
      CHECK(a_side == b_side);  // bitwise
    }
  }
}

TEST_CASE("pivotal gap rejects malformed histories") {
  const std::vector<double> probs{0.5, 0.8, 2.0 / 3.0};
  const TemporalStructure structure{{{0}, {1}, {2}}};
  // t must belong to the next unresolved cluster.
  CHECK_THROWS_AS(pivotal_gap(probs, structure, {}, 1), std::invalid_argument);
  const std::vector<BattleOutcome> duplicated{{0, true}, {0, false}};
  CHECK_THROWS_AS(pivotal_gap(probs, structure, duplicated, 1), std::invalid_argument);
  const std::vector<BattleOutcome> skipped{{1, true}};
  CHECK_THROWS_AS(pivotal_gap(probs, structure, skipped, 2), std::invalid_argument);
  const std::vector<BattleOutcome> complete{{0, true}, {1, true}, {2, false}};
  CHECK_THROWS_AS(pivotal_gap(probs, structure, complete, 0), std::invalid_argument);
  const std::vector<BattleOutcome> alien{{5, true}};
  CHECK_THROWS_AS(pivotal_gap(probs, structure, alien, 1), std::invalid_argument);
}

TEST_CASE("oversized clusters are refused") {
  const int n = 17;
  std::vector<double> probs(n, 0.5);
  std::vector<int> everything(n);
  for (int t = 0; t < n; ++t) everything[t] = t;
  const TemporalStructure one_cluster{{everything}};
  CHECK_THROWS_AS(eval_temporal(probs, one_cluster), std::invalid_argument);
}

TEST_CASE("invalid partitions are refused") {
  const std::vector<double> probs{0.5, 0.8, 2.0 / 3.0};
  CHECK_THROWS_AS(eval_temporal(probs, TemporalStructure{{{0}, {1}}}), SpecError);
  CHECK_THROWS_AS(eval_temporal(probs, TemporalStructure{{{0, 1}, {1, 2}}}), SpecError);
}
