#include "contest/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace contest {

namespace {

constexpr int kMaxClusterSize = 15;

void require_odd(std::span<const double> probs) {
  const int n = static_cast<int>(probs.size());
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("an odd number (>= 3) of battle probabilities is required");
  for (double p : probs)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("battle probabilities must lie in [0,1]");
}

// Distribution of the number of A-wins over one cluster, by enumerating its
// 2^|cluster| outcomes.
std::vector<double> cluster_win_counts(std::span<const double> probs,
                                       std::span<const int> battles) {
  const int size = static_cast<int>(battles.size());
  if (size > kMaxClusterSize)
    throw std::invalid_argument("cluster larger than " + std::to_string(kMaxClusterSize) +
                                " battles");
  std::vector<double> counts(size + 1, 0.0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
    double weight = 1.0;
    int wins = 0;
    for (int i = 0; i < size; ++i) {
      if (mask >> i & 1) {
        weight *= probs[battles[i]];
        ++wins;
      } else {
        weight *= 1.0 - probs[battles[i]];
      }
    }
    counts[wins] += weight;
  }
  return counts;
}

}  // namespace

double eval_temporal(std::span<const double> probs, const TemporalStructure& structure) {
  require_odd(probs);
  const int n = static_cast<int>(probs.size());
  validate_structure(structure, n);
  const int need = (n + 1) / 2;  // N + 1

  // live(a, b): probability of reaching a non-clinched state with a A-wins
  // and b B-wins; absorbed mass is settled the moment a team clinches.
  std::vector<std::vector<double>> live(need, std::vector<double>(need, 0.0));
  live[0][0] = 1.0;
  double win_a = 0.0;
  double win_b = 0.0;

  for (const auto& cluster : structure.clusters) {
    const std::vector<double> counts = cluster_win_counts(probs, cluster);
    const int size = static_cast<int>(cluster.size());
    std::vector<std::vector<double>> next(need, std::vector<double>(need, 0.0));
    for (int a = 0; a < need; ++a) {
      for (int b = 0; b < need; ++b) {
        const double mass = live[a][b];
        if (mass == 0.0) continue;
        for (int wins = 0; wins <= size; ++wins) {
          const double moved = mass * counts[wins];
          const int na = a + wins;
          const int nb = b + (size - wins);
          if (na >= need)
            win_a += moved;
          else if (nb >= need)
            win_b += moved;
          else
            next[na][nb] += moved;
        }
      }
    }
    live.swap(next);
  }
  (void)win_b;  // all mass is absorbed once every battle has been played
  return win_a;
}

double pivotal_gap(std::span<const double> probs, const TemporalStructure& structure,
                   std::span<const BattleOutcome> history, int t, Team side) {
  require_odd(probs);
  const int n = static_cast<int>(probs.size());
  validate_structure(structure, n);
  const int half = n / 2;  // N

  // The history must cover exactly the first h clusters, each battle once.
  std::set<int> resolved;
  int wins_a = 0;
  for (const BattleOutcome& outcome : history) {
    if (outcome.battle < 0 || outcome.battle >= n)
      throw std::invalid_argument("pivotal_gap: history battle index out of range");
    if (!resolved.insert(outcome.battle).second)
      throw std::invalid_argument("pivotal_gap: battle resolved twice in history");
    if (outcome.a_won) ++wins_a;
  }
  size_t covered = 0;
  size_t next_cluster = structure.clusters.size();
  for (size_t z = 0; z < structure.clusters.size(); ++z) {
    if (covered == resolved.size()) {
      next_cluster = z;
      break;
    }
    for (int battle : structure.clusters[z]) {
      if (!resolved.count(battle))
        throw std::invalid_argument("pivotal_gap: history does not close cluster " +
                                    std::to_string(z + 1));
      ++covered;
    }
  }
  if (covered != resolved.size())
    throw std::invalid_argument("pivotal_gap: history does not align with the cluster order");
  if (next_cluster == structure.clusters.size())
    throw std::invalid_argument("pivotal_gap: no unresolved cluster left");
  const auto& current = structure.clusters[next_cluster];
  if (std::find(current.begin(), current.end(), t) == current.end())
    throw std::invalid_argument("pivotal_gap: battle " + std::to_string(t + 1) +
                                " is not in the next unresolved cluster");

  const int wins_b = static_cast<int>(history.size()) - wins_a;
  if (wins_a > half || wins_b > half) return 0.0;  // already clinched

  // Conditioning on battle t: team i's gap equals the probability that the
  // remaining battles split so that t decides the contest. For team A that
  // split is exactly N - wins_a A-wins among the m remaining battles; for
  // team B it is m - (N - wins_b) A-wins, the same count.
  std::vector<double> split{1.0};
  auto fold_cluster = [&](std::span<const int> battles) {
    const std::vector<double> counts = cluster_win_counts(probs, battles);
    std::vector<double> next(split.size() + battles.size(), 0.0);
    for (size_t a = 0; a < split.size(); ++a)
      for (size_t w = 0; w < counts.size(); ++w) next[a + w] += split[a] * counts[w];
    split.swap(next);
  };
  std::vector<int> rest_of_current;
  for (int battle : current)
    if (battle != t) rest_of_current.push_back(battle);
  fold_cluster(rest_of_current);
  for (size_t z = next_cluster + 1; z < structure.clusters.size(); ++z)
    fold_cluster(structure.clusters[z]);

  const int remaining = static_cast<int>(split.size()) - 1;
  const int index = side == Team::A ? half - wins_a : remaining - (half - wins_b);
  if (index < 0 || index > remaining) return 0.0;
  return split[index];
}

}  // namespace contest
