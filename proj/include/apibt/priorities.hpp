#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "apibt/instance.hpp"

namespace apibt {

// How priorities evolve between timesteps.
//  elapsed: timesteps since the agent last stood on its goal, plus its
//           epsilon; reset to epsilon on the goal.
//  fixed:   never change (useful for hand-built test cases).
enum class PriorityPolicy { elapsed, fixed };

struct PriorityState {
  std::vector<double> priority;
  std::vector<double> epsilon;  // unique per agent, in [0, 1)
  PriorityPolicy policy = PriorityPolicy::elapsed;

  // Seeded distinct epsilons i/N assigned through a shuffled permutation.
  static PriorityState initial(int num_agents, std::uint64_t seed, PriorityPolicy policy = PriorityPolicy::elapsed) {
    PriorityState p;
    p.policy = policy;
    std::vector<int> rank(num_agents);
    std::iota(rank.begin(), rank.end(), 0);
    std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
    std::shuffle(rank.begin(), rank.end(), rng);
    p.epsilon.resize(num_agents);
    for (int i = 0; i < num_agents; ++i) p.epsilon[i] = static_cast<double>(rank[i]) / std::max(1, num_agents);
    p.priority = p.epsilon;
    return p;
  }

  // Explicit priorities; they must be pairwise distinct.
  static PriorityState fixed_values(std::vector<double> values) {
    PriorityState p;
    p.policy = PriorityPolicy::fixed;
    p.priority = values;
    p.epsilon.assign(values.size(), 0.0);
    auto sorted = values;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("fixed priorities must be pairwise distinct");
    return p;
  }

  int size() const noexcept { return static_cast<int>(priority.size()); }

  void advance(const Configuration& config, const Configuration& goals) {
    if (policy == PriorityPolicy::fixed) return;
    for (std::size_t i = 0; i < priority.size(); ++i) {
      if (config[i] == goals[i])
        priority[i] = epsilon[i];
      else
        priority[i] += 1.0;
    }
  }

  // Agent ids by descending priority (agent id breaks exact ties).
  std::vector<int> order() const {
    std::vector<int> ids(priority.size());
    std::iota(ids.begin(), ids.end(), 0);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      if (priority[a] != priority[b]) return priority[a] > priority[b];
      return a < b;
    });
    return ids;
  }
};

}  // namespace apibt
