#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "apibt/grid.hpp"
#include "apibt/heuristics.hpp"
#include "apibt/instance.hpp"

// Seeded generators for benchmark-style maps and scenarios in the MovingAI
// formats, used where the public benchmark files are not available.

namespace apibt {

// Cells of the largest 4-connected passable component.
inline std::vector<Vertex> largest_component(const GridMap& map) {
  std::vector<int> label(map.size(), -1);
  std::vector<Vertex> best;
  for (Vertex s = 0; s < map.size(); ++s) {
    if (!map.passable(s) || label[s] != -1) continue;
    std::vector<Vertex> comp{s};
    label[s] = s;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex u : map.neighbors(comp[i]))
        if (label[u] == -1) {
          label[u] = s;
          comp.push_back(u);
        }
    if (comp.size() > best.size()) best = std::move(comp);
  }
  std::sort(best.begin(), best.end());
  return best;
}

// Uniform random obstacles: exactly round(ratio * W * H) blocked cells, the
// way the random-W-H-P benchmark maps are built.
inline GridMap random_map(int width, int height, double obstacle_ratio, std::uint64_t seed) {
  const int cells = width * height;
  const int blocked = static_cast<int>(std::lround(obstacle_ratio * cells));
  std::vector<int> ids(cells);
  std::iota(ids.begin(), ids.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<bool> passable(cells, true);
  for (int i = 0; i < blocked; ++i) passable[ids[i]] = false;
  return GridMap(width, height, std::move(passable));
}

// Cave-like map (open chambers joined by narrow passages) from a smoothed
// cellular automaton; everything outside the largest component is walled
// off. Stand-in for game maps such as den520d.
inline GridMap cave_map(int width, int height, std::uint64_t seed, double fill = 0.45, int smoothing = 5) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution wall(fill);
  std::vector<bool> solid(static_cast<std::size_t>(width) * height);
  auto at = [&](int r, int c) -> bool {
    if (r < 0 || c < 0 || r >= height || c >= width) return true;
    return solid[static_cast<std::size_t>(r) * width + c];
  };
  for (std::size_t i = 0; i < solid.size(); ++i) solid[i] = wall(rng);
  for (int it = 0; it < smoothing; ++it) {
    std::vector<bool> next(solid.size());
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) {
        int walls = 0;
        for (int dr = -1; dr <= 1; ++dr)
          for (int dc = -1; dc <= 1; ++dc)
            if ((dr || dc) && at(r + dr, c + dc)) ++walls;
        next[static_cast<std::size_t>(r) * width + c] = walls >= 5 || (walls == 4 && at(r, c));
      }
    solid = std::move(next);
  }
  std::vector<bool> passable(solid.size());
  for (std::size_t i = 0; i < solid.size(); ++i) passable[i] = !solid[i];
  const GridMap raw(width, height, passable);
  std::vector<bool> keep(solid.size(), false);
  for (Vertex v : largest_component(raw)) keep[v] = true;
  return GridMap(width, height, std::move(keep));
}

// `count` start/goal pairs inside the largest component; starts pairwise
// distinct, goals pairwise distinct. The distance field is the exact
// shortest-path length.
inline std::vector<ScenarioEntry> random_scenario(const GridMap& map, int count, std::uint64_t seed) {
  const auto cells = largest_component(map);
  if (static_cast<int>(cells.size()) < count) throw std::invalid_argument("map too small for requested agents");
  std::mt19937_64 rng(seed);
  auto starts = cells, goals = cells;
  std::shuffle(starts.begin(), starts.end(), rng);
  std::shuffle(goals.begin(), goals.end(), rng);
  std::vector<ScenarioEntry> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const HeuristicTable table(map, goals[i]);
    out.push_back({map.cell(starts[i]), map.cell(goals[i]), static_cast<double>(table.dist(starts[i]))});
  }
  return out;
}

// Random instance on the largest component of `map`.
inline Instance random_instance(std::shared_ptr<const GridMap> map, int agents, std::uint64_t seed) {
  const auto cells = largest_component(*map);
  if (static_cast<int>(cells.size()) < agents) throw std::invalid_argument("map too small for requested agents");
  std::mt19937_64 rng(seed);
  auto starts = cells, goals = cells;
  std::shuffle(starts.begin(), starts.end(), rng);
  std::shuffle(goals.begin(), goals.end(), rng);
  starts.resize(agents);
  goals.resize(agents);
  return Instance(std::move(map), std::move(starts), std::move(goals));
}

}  // namespace apibt
