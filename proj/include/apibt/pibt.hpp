#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "apibt/djag.hpp"
#include "apibt/heuristics.hpp"
#include "apibt/instance.hpp"
#include "apibt/priorities.hpp"

namespace apibt {

struct Candidate {
  Vertex cell = kNoVertex;
  int f = 0;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// At most five moves (stay + four directions), stored inline.
class CandidateList {
 public:
  void push_back(Candidate c) { items_[size_++] = c; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  const Candidate& operator[](std::size_t i) const noexcept { return items_[i]; }
  const Candidate* begin() const noexcept { return items_.data(); }
  const Candidate* end() const noexcept { return items_.data() + size_; }
  Candidate* begin() noexcept { return items_.data(); }
  Candidate* end() noexcept { return items_.data() + size_; }
  void truncate(std::size_t n) noexcept { size_ = std::min(size_, n); }

 private:
  std::array<Candidate, 5> items_{};
  std::size_t size_ = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Neighbors of the agent's cell sorted by f-value; cells that cannot reach
// the goal are dropped. Equal-f cells are ordered by a hash of
// (seed, timestep, agent, cell), so the order is reproducible.
inline CandidateList sorted_candidates(const Instance& inst, const Configuration& config, int agent,
                                       std::uint64_t seed, int timestep) {
  const auto& table = inst.tables[agent];
  const Vertex s = config[agent];
  CandidateList list;
  std::array<std::uint64_t, 5> keys{};
  for (Vertex u : inst.map->neighbors(s)) {
    const auto f = fvalue(table, s, u);
    if (!f) continue;
    keys[list.size()] = splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(timestep) << 32) ^
                                                     (static_cast<std::uint64_t>(agent) << 8) ^
                                                     static_cast<std::uint64_t>(u) * 0x2545f491ULL));
    list.push_back({u, *f});
  }
  // insertion sort over <= 5 items, carrying the tie keys along
  for (std::size_t i = 1; i < list.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      auto& a = list.begin()[j - 1];
      auto& b = list.begin()[j];
      if (a.f < b.f || (a.f == b.f && keys[j - 1] <= keys[j])) break;
      std::swap(a, b);
      std::swap(keys[j - 1], keys[j]);
    }
  }
  return list;
}

// Everything about one planning step that stays fixed while plans are
// searched: current configuration, priority order, candidate lists and the
// current-occupancy lookup.
class StepContext {
 public:
  StepContext(const Instance& inst, Configuration config, const PriorityState& priorities, std::uint64_t seed,
              int timestep)
      : inst_(&inst), config_(std::move(config)), priorities_(priorities), agent_at_(inst.map->size(), -1) {
    const int n = inst.num_agents();
    if (static_cast<int>(config_.size()) != n) throw std::invalid_argument("configuration size != agent count");
    if (priorities.size() != n) throw std::invalid_argument("priority size != agent count");
    order_ = priorities.order();
    candidates_.reserve(n);
    for (int a = 0; a < n; ++a) {
      const Vertex v = config_[a];
      if (!inst.map->passable(v)) throw std::invalid_argument("agent on a blocked cell");
      if (agent_at_[v] != -1) throw std::invalid_argument("two agents share a cell");
      agent_at_[v] = a;
      candidates_.push_back(sorted_candidates(inst, config_, a, seed, timestep));
      if (candidates_.back().empty()) throw std::invalid_argument("agent cannot reach its goal");
    }
  }

  const Instance& instance() const noexcept { return *inst_; }
  const Configuration& config() const noexcept { return config_; }
  const PriorityState& priorities() const noexcept { return priorities_; }
  int num_agents() const noexcept { return static_cast<int>(config_.size()); }
  const std::vector<int>& order() const noexcept { return order_; }
  const CandidateList& candidates(int agent) const noexcept { return candidates_[agent]; }
  int fmin(int agent) const noexcept { return candidates_[agent][0].f; }

  // Agent currently standing on v, or -1.
  int agent_at(Vertex v) const noexcept { return agent_at_[v]; }

  int fvalue_of(int agent, Vertex next) const {
    const auto f = fvalue(inst_->tables[agent], config_[agent], next);
    if (!f) throw std::logic_error("planned cell cannot reach the goal");
    return *f;
  }

  long lowerbound() const noexcept {
    long sum = 0;
    for (const auto& c : candidates_) sum += c[0].f;
    return sum;
  }

 private:
  const Instance* inst_;
  Configuration config_;
  PriorityState priorities_;
  std::vector<int> order_;
  std::vector<CandidateList> candidates_;
  std::vector<int> agent_at_;
};

// Next cell per agent (kNoVertex = unplanned) plus the reverse reservation
// table.
class StepPlan {
 public:
  StepPlan(int num_agents, int num_cells) : next_(num_agents, kNoVertex), reserved_by_(num_cells, -1) {}

  bool planned(int agent) const noexcept { return next_[agent] != kNoVertex; }
  Vertex next(int agent) const noexcept { return next_[agent]; }
  const Configuration& cells() const noexcept { return next_; }
  int reserved_by(Vertex v) const noexcept { return reserved_by_[v]; }

  void reserve(int agent, Vertex v) noexcept {
    next_[agent] = v;
    reserved_by_[v] = agent;
  }

  void release(int agent) noexcept {
    const Vertex v = next_[agent];
    if (v == kNoVertex) return;
    if (reserved_by_[v] == agent) reserved_by_[v] = -1;
    next_[agent] = kNoVertex;
  }

  bool complete() const noexcept {
    return std::none_of(next_.begin(), next_.end(), [](Vertex v) { return v == kNoVertex; });
  }

 private:
  Configuration next_;
  std::vector<int> reserved_by_;
};

// Planned agent that makes `next` unusable for `agent`: either it reserved
// `next` (vertex conflict) or it stands on `next` and moves onto the agent's
// cell (edge conflict). -1 when free.
inline int blocking_agent(const StepContext& ctx, const StepPlan& plan, int agent, Vertex next) noexcept {
  const int j = plan.reserved_by(next);
  if (j >= 0 && j != agent) return j;
  const int i = ctx.agent_at(next);
  if (i >= 0 && i != agent && plan.next(i) == ctx.config()[agent]) return i;
  return -1;
}

inline long plan_fsum(const StepContext& ctx, const Configuration& next) {
  long sum = 0;
  for (int a = 0; a < ctx.num_agents(); ++a) sum += ctx.fvalue_of(a, next[a]);
  return sum;
}

// PIBT's recursive helper with grouping hooks. `groups` may be null, in
// which case this is plain PIBT. Returns false when every candidate of
// `agent` is blocked. A failed agent is left unplanned, so other branches may
// retry it; on a grid packed solid with agents the backtracking is
// exponential.
inline bool pibt_gr(const StepContext& ctx, StepPlan& plan, int agent, GroupSet* groups) {
  for (const Candidate& c : ctx.candidates(agent)) {
    if (const int j = blocking_agent(ctx, plan, agent, c.cell); j >= 0) {
      if (groups) groups->group(agent, j);
      continue;
    }
    plan.reserve(agent, c.cell);
    const int j = ctx.agent_at(c.cell);
    if (j >= 0 && j != agent && !plan.planned(j)) {
      if (groups) groups->group(agent, j);
      if (pibt_gr(ctx, plan, j, groups)) return true;
      plan.release(agent);
    } else {
      return true;
    }
  }
  return false;
}

struct ForcedMove {
  int agent;
  Vertex cell;
};

// Reserves forced moves. Fails if a forced cell is not a legal move or two
// forced moves collide.
inline bool apply_forced(const StepContext& ctx, StepPlan& plan, std::span<const ForcedMove> forced,
                         GroupSet* groups) {
  const auto& map = *ctx.instance().map;
  for (const auto& [agent, cell] : forced) {
    if (plan.planned(agent)) return false;
    const auto nbrs = map.neighbors(ctx.config()[agent]);
    if (std::find(nbrs.begin(), nbrs.end(), cell) == nbrs.end()) return false;
    if (!ctx.instance().tables[agent].reachable(cell)) return false;
    if (blocking_agent(ctx, plan, agent, cell) >= 0) return false;
    plan.reserve(agent, cell);
    if (groups) groups->pin(agent);
  }
  return true;
}

// One PIBT step: agents in descending priority, each unplanned agent runs
// pibt_gr. Forced moves are reserved first and never revisited. Without
// forced moves the result is always complete.
inline std::optional<StepPlan> pibt_step(const StepContext& ctx, GroupSet* groups = nullptr,
                                         std::span<const ForcedMove> forced = {}) {
  StepPlan plan(ctx.num_agents(), ctx.instance().map->size());
  if (!apply_forced(ctx, plan, forced, groups)) return std::nullopt;
  for (int k : ctx.order()) {
    if (plan.planned(k)) continue;
    if (!pibt_gr(ctx, plan, k, groups)) {
      if (forced.empty()) throw std::logic_error("PIBT root call failed without forced moves");
      return std::nullopt;
    }
  }
  return plan;
}

}  // namespace apibt
