#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "apibt/grid.hpp"
#include "apibt/heuristics.hpp"

namespace apibt {

// One cell per agent, indexed by agent id.
using Configuration = std::vector<Vertex>;

// A MAPF problem: shared map, per-agent starts and goals, and one cost-to-go
// table per agent computed once at load time.
struct Instance {
  std::shared_ptr<const GridMap> map;
  Configuration starts;
  Configuration goals;
  std::vector<HeuristicTable> tables;

  Instance(std::shared_ptr<const GridMap> grid, Configuration start_cells, Configuration goal_cells)
      : map(std::move(grid)), starts(std::move(start_cells)), goals(std::move(goal_cells)) {
    if (!map) throw std::invalid_argument("instance needs a map");
    if (starts.size() != goals.size()) throw std::invalid_argument("starts and goals differ in length");
    check_distinct(starts, "start");
    check_distinct(goals, "goal");
    tables.reserve(goals.size());
    for (std::size_t i = 0; i < goals.size(); ++i) {
      if (!map->passable(starts[i])) throw std::invalid_argument("start of agent " + std::to_string(i) + " is blocked");
      tables.emplace_back(*map, goals[i]);
      if (!tables.back().reachable(starts[i]))
        throw std::invalid_argument("goal of agent " + std::to_string(i) + " is unreachable from its start");
    }
  }

  int num_agents() const noexcept { return static_cast<int>(starts.size()); }

  // Sum of h*(start): the full-horizon cost lower bound.
  long cost_lowerbound() const {
    long sum = 0;
    for (int i = 0; i < num_agents(); ++i) sum += tables[i].dist(starts[i]);
    return sum;
  }

 private:
  static void check_distinct(const Configuration& cells, const char* what) {
    std::unordered_set<Vertex> seen;
    for (Vertex v : cells)
      if (!seen.insert(v).second) throw std::invalid_argument(std::string("duplicate ") + what + " cell");
  }
};

// First `count` scenario entries as an instance.
inline Instance make_instance(std::shared_ptr<const GridMap> map, const std::vector<ScenarioEntry>& scenario,
                              int count) {
  if (count < 0 || count > static_cast<int>(scenario.size()))
    throw std::invalid_argument("scenario has " + std::to_string(scenario.size()) + " entries, " +
                                std::to_string(count) + " requested");
  Configuration starts, goals;
  for (int i = 0; i < count; ++i) {
    starts.push_back(map->index(scenario[i].start));
    goals.push_back(map->index(scenario[i].goal));
  }
  return Instance(std::move(map), std::move(starts), std::move(goals));
}

}  // namespace apibt
