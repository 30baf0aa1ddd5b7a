#pragma once

#include <initializer_list>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "apibt/grid.hpp"
#include "apibt/instance.hpp"

namespace apibt::test {

// Builds a map from character rows ('.' free, '@' blocked).
inline std::shared_ptr<const GridMap> grid(std::initializer_list<std::string> rows) {
  std::ostringstream text;
  text << "type octile\nheight " << rows.size() << "\nwidth " << rows.begin()->size() << "\nmap\n";
  for (const auto& r : rows) text << r << '\n';
  std::istringstream in(text.str());
  return std::make_shared<const GridMap>(parse_map(in));
}

inline std::shared_ptr<const GridMap> open_grid(int height, int width) {
  return std::make_shared<const GridMap>(width, height, std::vector<bool>(static_cast<std::size_t>(width) * height, true));
}

inline Vertex at(const GridMap& map, int row, int col) { return map.index(Cell{row, col}); }

// Instance from (row, col) pairs.
inline Instance instance(std::shared_ptr<const GridMap> map, std::initializer_list<std::pair<Cell, Cell>> agents) {
  Configuration starts, goals;
  for (const auto& [s, g] : agents) {
    starts.push_back(map->index(s));
    goals.push_back(map->index(g));
  }
  return Instance(std::move(map), std::move(starts), std::move(goals));
}

}  // namespace apibt::test
