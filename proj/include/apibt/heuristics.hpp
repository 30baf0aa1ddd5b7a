#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "apibt/grid.hpp"

namespace apibt {

inline constexpr int kInfDist = std::numeric_limits<int>::max();

// Exact cost-to-go towards one goal. Unit move costs, so a breadth-first
// sweep from the goal gives the backward Dijkstra distances.
class HeuristicTable {
 public:
  HeuristicTable(const GridMap& map, Vertex goal) : goal_(goal), dist_(map.size(), kInfDist) {
    if (!map.passable(goal)) throw std::invalid_argument("heuristic goal must be passable");
    std::vector<Vertex> frontier{goal};
    dist_[goal] = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const Vertex v = frontier[head];
      const int d = dist_[v] + 1;
      for (Vertex u : map.neighbors(v)) {
        if (dist_[u] != kInfDist) continue;
        dist_[u] = d;
        frontier.push_back(u);
      }
    }
  }

  Vertex goal() const noexcept { return goal_; }
  int dist(Vertex v) const noexcept { return dist_[v]; }
  bool reachable(Vertex v) const noexcept { return dist_[v] != kInfDist; }

 private:
  Vertex goal_;
  std::vector<int> dist_;
};

inline HeuristicTable compute_table(const GridMap& map, Cell goal) { return HeuristicTable(map, map.index(goal)); }

// Resting on the goal is free; every other action costs one timestep.
constexpr int step_cost(Vertex s, Vertex s_next, Vertex goal) noexcept {
  return (s == goal && s_next == goal) ? 0 : 1;
}

// Single-step f-value c(s, s') + h*(s'); nullopt when s' cannot reach the goal.
inline std::optional<int> fvalue(const HeuristicTable& table, Vertex s, Vertex s_next) noexcept {
  const int h = table.dist(s_next);
  if (h == kInfDist) return std::nullopt;
  return step_cost(s, s_next, table.goal()) + h;
}

}  // namespace apibt
