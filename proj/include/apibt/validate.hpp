#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <vector>

#include "apibt/grid.hpp"
#include "apibt/heuristics.hpp"
#include "apibt/instance.hpp"

namespace apibt {

// Configuration at every timestep, solution[0] = starts.
using Solution = std::vector<Configuration>;

enum class ViolationKind {
  none,
  size_mismatch,
  wrong_start,
  blocked_cell,
  illegal_move,
  vertex_collision,
  edge_collision,
  goal_not_reached,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::none: return "none";
    case ViolationKind::size_mismatch: return "size mismatch";
    case ViolationKind::wrong_start: return "wrong start";
    case ViolationKind::blocked_cell: return "blocked cell";
    case ViolationKind::illegal_move: return "illegal move";
    case ViolationKind::vertex_collision: return "vertex collision";
    case ViolationKind::edge_collision: return "edge collision";
    case ViolationKind::goal_not_reached: return "goal not reached";
  }
  return "?";
}

struct ValidationReport {
  ViolationKind kind = ViolationKind::none;
  int t = -1;
  int agent = -1;
  int other = -1;
  Vertex cell = kNoVertex;

  bool ok() const noexcept { return kind == ViolationKind::none; }
  std::string message() const {
    if (ok()) return "ok";
    std::string m = std::string(to_string(kind)) + " at t=" + std::to_string(t) + " agent " + std::to_string(agent);
    if (other >= 0) m += " / agent " + std::to_string(other);
    if (cell != kNoVertex) m += " cell " + std::to_string(cell);
    return m;
  }
};

// Checks the one transition config -> next: legal moves and no vertex or
// edge collisions. Reported t is `t`.
inline ValidationReport validate_transition(const GridMap& map, const Configuration& config, const Configuration& next,
                                            int t = 0) {
  ValidationReport r;
  r.t = t;
  if (config.size() != next.size()) {
    r.kind = ViolationKind::size_mismatch;
    return r;
  }
  std::unordered_map<Vertex, int> now, after;
  for (std::size_t i = 0; i < config.size(); ++i) now.emplace(config[i], static_cast<int>(i));
  for (std::size_t i = 0; i < next.size(); ++i) {
    const int a = static_cast<int>(i);
    if (!map.passable(next[i])) return {ViolationKind::blocked_cell, t + 1, a, -1, next[i]};
    const Cell from = map.cell(config[i]), to = map.cell(next[i]);
    if (std::abs(from.row - to.row) + std::abs(from.col - to.col) > 1)
      return {ViolationKind::illegal_move, t, a, -1, next[i]};
    if (auto [it, fresh] = after.emplace(next[i], a); !fresh)
      return {ViolationKind::vertex_collision, t + 1, it->second, a, next[i]};
  }
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (next[i] == config[i]) continue;
    const auto it = now.find(next[i]);
    if (it == now.end()) continue;
    const int j = it->second;
    if (next[j] == config[i]) return {ViolationKind::edge_collision, t, static_cast<int>(i), j, next[i]};
  }
  return {};
}

// Full check of a solution against an instance: starts, passability, unit
// moves, vertex and edge collisions at every t, goals at the final step.
inline ValidationReport validate_paths(const Instance& inst, const Solution& solution) {
  const auto& map = *inst.map;
  if (solution.empty()) return {ViolationKind::size_mismatch, 0, -1, -1, kNoVertex};
  for (std::size_t t = 0; t < solution.size(); ++t)
    if (static_cast<int>(solution[t].size()) != inst.num_agents())
      return {ViolationKind::size_mismatch, static_cast<int>(t), -1, -1, kNoVertex};
  for (int a = 0; a < inst.num_agents(); ++a) {
    if (solution[0][a] != inst.starts[a]) return {ViolationKind::wrong_start, 0, a, -1, solution[0][a]};
    if (!map.passable(solution[0][a])) return {ViolationKind::blocked_cell, 0, a, -1, solution[0][a]};
  }
  {
    std::unordered_map<Vertex, int> seen;
    for (int a = 0; a < inst.num_agents(); ++a)
      if (auto [it, fresh] = seen.emplace(solution[0][a], a); !fresh)
        return {ViolationKind::vertex_collision, 0, it->second, a, solution[0][a]};
  }
  for (std::size_t t = 0; t + 1 < solution.size(); ++t) {
    const auto r = validate_transition(map, solution[t], solution[t + 1], static_cast<int>(t));
    if (!r.ok()) return r;
  }
  const auto& last = solution.back();
  for (int a = 0; a < inst.num_agents(); ++a)
    if (last[a] != inst.goals[a])
      return {ViolationKind::goal_not_reached, static_cast<int>(solution.size()) - 1, a, -1, last[a]};
  return {};
}

// Forward cost recount: one unit per agent per step unless it stays on its goal.
inline long solution_cost(const Instance& inst, const Solution& solution) {
  long cost = 0;
  for (std::size_t t = 0; t + 1 < solution.size(); ++t) {
    for (int a = 0; a < inst.num_agents(); ++a) {
      const bool resting = solution[t][a] == inst.goals[a] && solution[t + 1][a] == inst.goals[a];
      if (!resting) ++cost;
    }
  }
  return cost;
}

}  // namespace apibt
