#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "apibt/anytime.hpp"
#include "apibt/pibt.hpp"
#include "apibt/validate.hpp"

namespace apibt {

// Input to a single-step configuration generator.
struct StepQuery {
  const Instance& instance;
  const Configuration& config;
  const PriorityState& priorities;
  std::span<const ForcedMove> forced;
  std::uint64_t seed = 0;
  int timestep = 0;
};

// Produces a complete collision-free next configuration honoring the forced
// moves, or nullopt when no such configuration is found.
class StepGenerator {
 public:
  virtual ~StepGenerator() = default;
  virtual std::optional<Configuration> generate(const StepQuery& query) = 0;
  virtual std::string name() const = 0;
};

class PibtGenerator final : public StepGenerator {
 public:
  std::optional<Configuration> generate(const StepQuery& q) override {
    const StepContext ctx(q.instance, q.config, q.priorities, q.seed, q.timestep);
    auto plan = pibt_step(ctx, nullptr, q.forced);
    if (!plan) return std::nullopt;
    return plan->cells();
  }
  std::string name() const override { return "pibt"; }
};

// Forced agents are frozen non-group agents; the budget applies to every call.
class AnytimePibtGenerator final : public StepGenerator {
 public:
  AnytimePibtGenerator(StepBudget budget, AnytimeOptions options) : budget_(budget), options_(std::move(options)) {}

  std::optional<Configuration> generate(const StepQuery& q) override {
    const StepContext ctx(q.instance, q.config, q.priorities, q.seed, q.timestep);
    auto result = anytime_pibt(ctx, budget_, options_, q.forced);
    if (!result.success) return std::nullopt;
    return std::move(result.next);
  }
  std::string name() const override { return options_.mode == SolveMode::tiebreak ? "apibt-tb" : "apibt"; }

 private:
  StepBudget budget_;
  AnytimeOptions options_;
};

struct LacamOptions {
  double time_limit_ms = 60'000.0;
  std::uint64_t seed = 0;
};

struct LacamResult {
  bool success = false;
  Solution solution;
  std::string failure;  // "timeout" or "exhausted" on failure
  std::size_t high_level_nodes = 0;
  std::size_t low_level_nodes = 0;
  std::size_t generator_calls = 0;
  std::size_t generator_failures = 0;
  double elapsed_ms = 0.0;
};

// Vanilla LaCAM: depth-first search over configurations. Each high-level
// node lazily grows a tree of constraints (agent i must move to cell v) and
// asks the generator for a successor under each constraint in turn.
class Lacam {
 public:
  Lacam(const Instance& inst, StepGenerator& generator, LacamOptions options = {})
      : inst_(inst), generator_(generator), options_(options), rng_(options.seed) {}

  LacamResult solve() {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };
    LacamResult result;
    const int n = inst_.num_agents();
    base_ = PriorityState::initial(n, options_.seed);

    std::vector<int> open;  // stack of high-level node ids
    open.push_back(add_high_level(inst_.starts, -1, std::vector<std::uint16_t>(n, 0)));

    while (!open.empty()) {
      if (elapsed() > options_.time_limit_ms) {
        result.failure = "timeout";
        break;
      }
      const int h_id = open.back();
      HighLevelNode& h = nodes_[h_id];
      if (h.config == inst_.goals) {
        result.success = true;
        result.solution = backtrack(h_id);
        break;
      }
      if (h.head == h.tree.size()) {
        // exhausted: only the configuration and parent link are kept
        h.tree = {};
        h.head = 0;
        h.elapsed = {};
        open.pop_back();
        continue;
      }
      const int l = h.tree[h.head++];
      const LowLevelNode low = constraints_[l];
      const PriorityState priorities = priorities_of(h);
      if (low.depth < n) {
        const int agent = priorities.order()[low.depth];
        const auto moves = inst_.map->neighbors(h.config[agent]);
        std::vector<Vertex> cells(moves.begin(), moves.end());
        std::shuffle(cells.begin(), cells.end(), rng_);
        for (Vertex v : cells) {
          constraints_.push_back({l, agent, v, low.depth + 1});
          h.tree.push_back(static_cast<int>(constraints_.size()) - 1);
        }
      }

      const auto forced = collect_constraints(l);
      ++result.generator_calls;
      // ties are reshuffled on every call, so retries under new constraints see fresh orders
      auto next = generator_.generate(
          StepQuery{inst_, h.config, priorities, forced, options_.seed, static_cast<int>(result.generator_calls)});
      if (!next) {
        ++result.generator_failures;
        continue;
      }
      if (explored(*next)) continue;
      std::vector<std::uint16_t> counts = nodes_[h_id].elapsed;
      for (int i = 0; i < n; ++i)
        counts[i] = (*next)[i] == inst_.goals[i] ? 0 : std::min<int>(counts[i] + 1, UINT16_MAX);
      open.push_back(add_high_level(std::move(*next), h_id, std::move(counts)));
    }
    if (!result.success && result.failure.empty()) result.failure = "exhausted";
    result.high_level_nodes = nodes_.size();
    result.low_level_nodes = constraints_.size();
    result.elapsed_ms = elapsed();
    return result;
  }

 private:
  struct LowLevelNode {
    int parent;  // -1 for the root
    int agent;
    Vertex cell;
    int depth;
  };

  struct HighLevelNode {
    Configuration config;
    int parent;
    int depth;
    std::vector<std::uint16_t> elapsed;  // timesteps off goal per agent, saturating
    std::vector<int> tree;               // constraint queue; entries before head are consumed
    std::size_t head = 0;
  };

  PriorityState priorities_of(const HighLevelNode& h) const {
    PriorityState p = base_;
    for (int i = 0; i < p.size(); ++i) p.priority[i] = p.epsilon[i] + h.elapsed[i];
    return p;
  }

  static std::uint64_t hash(const Configuration& c) noexcept {
    std::uint64_t h = 0x12345678ULL;
    for (Vertex v : c) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
    return h;
  }

  bool explored(const Configuration& c) const {
    const auto [lo, hi] = explored_.equal_range(hash(c));
    for (auto it = lo; it != hi; ++it)
      if (nodes_[it->second].config == c) return true;
    return false;
  }

  int add_high_level(Configuration config, int parent, std::vector<std::uint16_t> elapsed) {
    HighLevelNode h;
    h.config = std::move(config);
    h.parent = parent;
    h.depth = parent < 0 ? 0 : nodes_[parent].depth + 1;
    h.elapsed = std::move(elapsed);
    constraints_.push_back({-1, -1, kNoVertex, 0});
    h.tree.push_back(static_cast<int>(constraints_.size()) - 1);
    const int id = static_cast<int>(nodes_.size());
    explored_.emplace(hash(h.config), id);
    nodes_.push_back(std::move(h));
    return id;
  }

  std::vector<ForcedMove> collect_constraints(int l) const {
    std::vector<ForcedMove> forced;
    for (; l >= 0 && constraints_[l].agent >= 0; l = constraints_[l].parent)
      forced.push_back({constraints_[l].agent, constraints_[l].cell});
    std::reverse(forced.begin(), forced.end());
    return forced;
  }

  Solution backtrack(int h) const {
    Solution path;
    for (; h >= 0; h = nodes_[h].parent) path.push_back(nodes_[h].config);
    std::reverse(path.begin(), path.end());
    return path;
  }

  const Instance& inst_;
  StepGenerator& generator_;
  LacamOptions options_;
  std::mt19937_64 rng_;
  PriorityState base_;
  std::deque<HighLevelNode> nodes_;
  std::vector<LowLevelNode> constraints_;
  std::unordered_multimap<std::uint64_t, int> explored_;
};

inline LacamResult lacam_solve(const Instance& inst, StepGenerator& generator, LacamOptions options = {}) {
  return Lacam(inst, generator, options).solve();
}

}  // namespace apibt
