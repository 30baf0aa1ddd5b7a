#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace apibt {

// Flat cell index (row * width + col). kNoVertex marks "unplanned" / "none".
using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// 4-connected grid. Neighbor lists are precomputed once; the map is immutable
// after construction and can be shared between solver instances.
class GridMap {
 public:
  GridMap(int width, int height, std::vector<bool> passable)
      : width_(width), height_(height), passable_(std::move(passable)) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("grid dimensions must be positive");
    if (passable_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
      throw std::invalid_argument("passability array does not match grid dimensions");
    build_neighbors();
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int size() const noexcept { return width_ * height_; }

  bool in_bounds(Cell c) const noexcept {
    return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_;
  }
  bool passable(Vertex v) const noexcept { return v >= 0 && v < size() && passable_[v]; }
  bool passable(Cell c) const noexcept { return in_bounds(c) && passable_[index(c)]; }

  Vertex index(Cell c) const noexcept { return c.row * width_ + c.col; }
  Cell cell(Vertex v) const noexcept { return {v / width_, v % width_}; }

  int passable_count() const noexcept {
    int n = 0;
    for (bool p : passable_) n += p ? 1 : 0;
    return n;
  }

  // Stay first, then up, right, down, left; blocked and out-of-bounds cells
  // are omitted. Empty for blocked v.
  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    const auto& n = adjacency_[v];
    return {n.cells.data(), n.count};
  }

 private:
  struct Adjacency {
    std::array<Vertex, 5> cells{};
    std::size_t count = 0;
  };

  void build_neighbors() {
    adjacency_.assign(passable_.size(), {});
    static constexpr std::array<std::array<int, 2>, 4> kMoves{{{-1, 0}, {0, 1}, {1, 0}, {0, -1}}};
    for (Vertex v = 0; v < size(); ++v) {
      if (!passable_[v]) continue;
      auto& adj = adjacency_[v];
      adj.cells[adj.count++] = v;
      const Cell c = cell(v);
      for (const auto& [dr, dc] : kMoves) {
        const Cell n{c.row + dr, c.col + dc};
        if (passable(n)) adj.cells[adj.count++] = index(n);
      }
    }
  }

  int width_;
  int height_;
  std::vector<bool> passable_;
  std::vector<Adjacency> adjacency_;
};

inline std::vector<Vertex> neighbors(const GridMap& map, Cell s) {
  if (!map.passable(s)) return {};
  const auto n = map.neighbors(map.index(s));
  return {n.begin(), n.end()};
}

namespace detail {

inline std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

inline int parse_header_int(const std::string& line, const std::string& key, int line_no) {
  std::istringstream in(line);
  std::string k;
  long value = 0;
  if (!(in >> k >> value) || k != key) throw ParseError(line_no, "expected '" + key + " <int>'");
  std::string rest;
  if (in >> rest) throw ParseError(line_no, "trailing characters after '" + key + "'");
  if (value <= 0 || value > 1'000'000) throw ParseError(line_no, key + " out of range");
  return static_cast<int>(value);
}

}  // namespace detail

// MovingAI .map format. '.' and 'G' are passable; every other character blocks.
inline GridMap parse_map(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw ParseError(line_no + 1, std::string("missing ") + what);
    ++line_no;
    line = detail::rstrip(line);
  };

  next_line("'type' header");
  if (line.rfind("type", 0) != 0) throw ParseError(line_no, "expected 'type octile'");
  next_line("'height' header");
  const int height = detail::parse_header_int(line, "height", line_no);
  next_line("'width' header");
  const int width = detail::parse_header_int(line, "width", line_no);
  next_line("'map' header");
  if (line != "map") throw ParseError(line_no, "expected 'map'");

  std::vector<bool> passable;
  passable.reserve(static_cast<std::size_t>(width) * height);
  for (int r = 0; r < height; ++r) {
    if (!std::getline(in, line))
      throw ParseError(line_no + 1, "expected " + std::to_string(height) + " rows, found " + std::to_string(r));
    ++line_no;
    line = detail::rstrip(line);
    if (static_cast<int>(line.size()) != width)
      throw ParseError(line_no, "row length " + std::to_string(line.size()) + " != width " + std::to_string(width));
    for (char ch : line) passable.push_back(ch == '.' || ch == 'G');
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::rstrip(line).empty()) throw ParseError(line_no, "more rows than declared height");
  }
  return GridMap(width, height, std::move(passable));
}

inline std::string to_map_string(const GridMap& map) {
  std::string out = "type octile\nheight " + std::to_string(map.height()) + "\nwidth " +
                    std::to_string(map.width()) + "\nmap\n";
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) out += map.passable(Cell{r, c}) ? '.' : '@';
    out += '\n';
  }
  return out;
}

struct ScenarioEntry {
  Cell start;
  Cell goal;
  double reference_distance = 0.0;
};

// MovingAI .scen format: "version 1" then 9 tab-separated fields per line.
// x is the column, y is the row.
inline std::vector<ScenarioEntry> parse_scenario(std::istream& in, const GridMap& map) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing 'version' line");
  ++line_no;
  {
    std::istringstream hs(detail::rstrip(line));
    std::string key;
    double version = 0;
    if (!(hs >> key >> version) || key != "version") throw ParseError(1, "expected 'version 1'");
  }

  std::vector<ScenarioEntry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::rstrip(line);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const auto tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (fields.size() != 9)
      throw ParseError(line_no, "expected 9 tab-separated fields, found " + std::to_string(fields.size()));
    auto to_int = [&](const std::string& s, const char* name) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(name);
        return v;
      } catch (const std::exception&) {
        throw ParseError(line_no, std::string("bad integer field '") + name + "'");
      }
    };
    const int w = to_int(fields[2], "map width");
    const int h = to_int(fields[3], "map height");
    if (w != map.width() || h != map.height()) throw ParseError(line_no, "map dimensions do not match scenario");
    ScenarioEntry e;
    e.start = Cell{to_int(fields[5], "start-y"), to_int(fields[4], "start-x")};
    e.goal = Cell{to_int(fields[7], "goal-y"), to_int(fields[6], "goal-x")};
    try {
      e.reference_distance = std::stod(fields[8]);
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad optimal distance field");
    }
    if (!map.passable(e.start)) throw ParseError(line_no, "start is not a passable cell");
    if (!map.passable(e.goal)) throw ParseError(line_no, "goal is not a passable cell");
    entries.push_back(e);
  }
  return entries;
}

inline std::string to_scenario_string(const std::vector<ScenarioEntry>& entries, const GridMap& map,
                                      const std::string& map_name) {
  std::ostringstream out;
  out << "version 1\n";
  out.setf(std::ios::fixed);
  out.precision(8);
  for (const auto& e : entries) {
    out << static_cast<int>(e.reference_distance / 4) << '\t' << map_name << '\t' << map.width() << '\t'
        << map.height() << '\t' << e.start.col << '\t' << e.start.row << '\t' << e.goal.col << '\t' << e.goal.row
        << '\t' << e.reference_distance << '\n';
  }
  return out.str();
}

inline GridMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  return parse_map(in);
}

inline std::vector<ScenarioEntry> load_scenario(const std::string& path, const GridMap& map) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  return parse_scenario(in, map);
}

}  // namespace apibt
