#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "apibt/heuristics.hpp"
#include "apibt/instance.hpp"

namespace apibt {

// Exhaustive single-step solver used as ground truth. It shares only the
// map and cost-to-go tables with the planners; moves, costs and collision
// rules are evaluated here from scratch.

struct JointAssignment {
  bool feasible = false;
  Configuration next;  // one cell per agent
  long fsum = 0;       // f-sum over every agent in `next`
  std::uint64_t leaves = 0;
};

struct OracleOptions {
  // Skip branches that cannot beat the best sum found so far. The first
  // minimum in enumeration order is returned either way.
  bool prune = true;
  std::size_t max_free_agents = 8;
};

namespace detail {

class BruteForce {
 public:
  BruteForce(const Instance& inst, const Configuration& config, std::vector<int> free_agents, Configuration placed,
             const OracleOptions& options)
      : inst_(inst), config_(config), free_(std::move(free_agents)), next_(std::move(placed)), options_(options) {
    moves_.resize(free_.size());
    suffix_min_.assign(free_.size() + 1, 0);
    for (std::size_t i = 0; i < free_.size(); ++i) {
      const int a = free_[i];
      const Vertex s = config_[a];
      for (Vertex u : inst_.map->neighbors(s)) {
        const int h = inst_.tables[a].dist(u);
        if (h == kInfDist) continue;
        moves_[i].push_back({u, step_cost(s, u, inst_.goals[a]) + h});
      }
    }
    for (std::size_t i = free_.size(); i-- > 0;) {
      int m = std::numeric_limits<int>::max();
      for (const auto& mv : moves_[i]) m = std::min(m, mv.f);
      suffix_min_[i] = suffix_min_[i + 1] + (moves_[i].empty() ? 0 : m);
    }
  }

  JointAssignment run() {
    for (std::size_t a = 0; a < next_.size(); ++a)
      if (next_[a] != kNoVertex) fixed_sum_ += f_of(static_cast<int>(a), next_[a]);
    enumerate(0, 0);
    JointAssignment out;
    out.feasible = best_ != std::numeric_limits<long>::max();
    out.leaves = leaves_;
    if (out.feasible) {
      out.next = best_next_;
      out.fsum = best_ + fixed_sum_;
    }
    return out;
  }

 private:
  struct Move {
    Vertex cell;
    int f;
  };

  int f_of(int agent, Vertex u) const {
    const int h = inst_.tables[agent].dist(u);
    if (h == kInfDist) throw std::invalid_argument("frozen plan cannot reach its goal");
    return step_cost(config_[agent], u, inst_.goals[agent]) + h;
  }

  bool collides(int agent, Vertex u) const {
    for (std::size_t j = 0; j < next_.size(); ++j) {
      if (static_cast<int>(j) == agent || next_[j] == kNoVertex) continue;
      if (next_[j] == u) return true;
      if (config_[j] == u && next_[j] == config_[agent]) return true;
    }
    return false;
  }

  void enumerate(std::size_t depth, long sum) {
    if (depth == free_.size()) {
      ++leaves_;
      if (sum < best_) {
        best_ = sum;
        best_next_ = next_;
      }
      return;
    }
    const int a = free_[depth];
    for (const Move& mv : moves_[depth]) {
      const long partial = sum + mv.f;
      if (options_.prune && partial + suffix_min_[depth + 1] >= best_) continue;
      if (collides(a, mv.cell)) continue;
      next_[a] = mv.cell;
      enumerate(depth + 1, partial);
      next_[a] = kNoVertex;
    }
  }

  const Instance& inst_;
  const Configuration& config_;
  std::vector<int> free_;
  Configuration next_;
  const OracleOptions& options_;
  std::vector<std::vector<Move>> moves_;
  std::vector<long> suffix_min_;
  long fixed_sum_ = 0;
  long best_ = std::numeric_limits<long>::max();
  Configuration best_next_;
  std::uint64_t leaves_ = 0;
};

}  // namespace detail

// Minimum f-sum joint move for `free_agents` (all agents when empty), with
// every other agent held at its cell in `frozen`. Agents are enumerated in
// ascending id order, moves in the map's neighbor order.
inline JointAssignment brute_force_step(const Instance& inst, const Configuration& config,
                                        std::span<const int> free_agents = {}, const Configuration* frozen = nullptr,
                                        const OracleOptions& options = {}) {
  const int n = inst.num_agents();
  if (static_cast<int>(config.size()) != n) throw std::invalid_argument("configuration size != agent count");
  std::vector<int> free_list(free_agents.begin(), free_agents.end());
  if (free_list.empty())
    for (int a = 0; a < n; ++a) free_list.push_back(a);
  std::sort(free_list.begin(), free_list.end());
  if (free_list.size() > options.max_free_agents)
    throw std::invalid_argument("too many free agents for exhaustive enumeration");

  Configuration placed(n, kNoVertex);
  std::vector<bool> is_free(n, false);
  for (int a : free_list) is_free[a] = true;
  for (int a = 0; a < n; ++a) {
    if (is_free[a]) continue;
    if (!frozen) throw std::invalid_argument("agents outside the free set need frozen plans");
    placed[a] = (*frozen)[a];
  }
  return detail::BruteForce(inst, config, std::move(free_list), std::move(placed), options).run();
}

}  // namespace apibt
