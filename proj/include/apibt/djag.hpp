#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "apibt/priorities.hpp"

namespace apibt {

inline constexpr long kInfCost = std::numeric_limits<long>::max();

// Union-find over agent ids recording which agents interacted during
// planning. Each root keeps its member list so a grown group can be read
// back without scanning every agent.
class GroupSet {
 public:
  explicit GroupSet(int num_agents)
      : parent_(num_agents), rank_(num_agents, 0), members_(num_agents), touched_(num_agents, false),
        pinned_(num_agents, false), order_(num_agents, std::numeric_limits<long>::max()) {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (int a = 0; a < num_agents; ++a) members_[a] = {a};
  }

  int size() const noexcept { return static_cast<int>(parent_.size()); }

  int find(int a) const {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  // Pinned agents (forced by an outer search) are never merged into groups;
  // interacting with one only marks the other agent as grouped.
  void pin(int a) { pinned_[a] = true; }
  bool pinned(int a) const noexcept { return pinned_[a]; }

  // Group(k, j): k and j affected each other's choice.
  void group(int k, int j) {
    if (pinned_[k] && pinned_[j]) return;
    if (pinned_[j]) return touch(k);
    if (pinned_[k]) return touch(j);
    touch(k);
    touch(j);
    int rk = find(k), rj = find(j);
    if (rk == rj) return;
    ++unions_;
    if (rank_[rk] < rank_[rj]) std::swap(rk, rj);
    parent_[rj] = rk;
    if (rank_[rk] == rank_[rj]) ++rank_[rk];
    auto& into = members_[rk];
    auto& from = members_[rj];
    into.insert(into.end(), from.begin(), from.end());
    from.clear();
    from.shrink_to_fit();
    order_[rk] = std::min(order_[rk], order_[rj]);
  }

  bool same(int a, int b) const { return find(a) == find(b); }
  bool grouped(int a) const noexcept { return touched_[a]; }
  std::span<const int> members(int root) const { return members_[root]; }
  std::size_t unions() const noexcept { return unions_; }

  // Position of the root's group in creation order (first Group() call).
  long creation_order(int root) const noexcept { return order_[root]; }

 private:
  void touch(int a) {
    if (touched_[a]) return;
    touched_[a] = true;
    const int r = find(a);
    order_[r] = std::min(order_[r], next_order_++);
  }

  mutable std::vector<int> parent_;
  std::vector<int> rank_;
  std::vector<std::vector<int>> members_;
  std::vector<bool> touched_;
  std::vector<bool> pinned_;
  std::vector<long> order_;
  long next_order_ = 0;
  std::size_t unions_ = 0;
};

// One disjoint agent group: its agents in descending priority and the best
// f-sum known for them.
struct Group {
  std::vector<int> agents;
  long best_f = kInfCost;

  bool contains(int agent) const { return std::find(agents.begin(), agents.end(), agent) != agents.end(); }
};

inline void sort_by_priority(std::vector<int>& agents, const PriorityState& priorities) {
  std::sort(agents.begin(), agents.end(), [&](int a, int b) {
    if (priorities.priority[a] != priorities.priority[b]) return priorities.priority[a] > priorities.priority[b];
    return a < b;
  });
}

// One group per union root that saw at least one Group() call, in creation
// order. `agent_f` (per-agent f-value of the current plan) seeds best_f when
// given; otherwise best_f stays infinite.
inline std::vector<Group> extract_groups(const GroupSet& set, const PriorityState& priorities,
                                         std::span<const int> agent_f = {}) {
  std::vector<int> roots;
  for (int a = 0; a < set.size(); ++a)
    if (set.grouped(a) && set.find(a) == a) roots.push_back(a);
  std::sort(roots.begin(), roots.end(),
            [&](int a, int b) { return set.creation_order(a) < set.creation_order(b); });
  std::vector<Group> groups;
  groups.reserve(roots.size());
  for (int root : roots) {
    Group g;
    g.agents.assign(set.members(root).begin(), set.members(root).end());
    sort_by_priority(g.agents, priorities);
    if (!agent_f.empty()) {
      g.best_f = 0;
      for (int a : g.agents) g.best_f += agent_f[a];
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

// FIFO of pairwise agent-disjoint groups awaiting (re)planning.
class GroupQueue {
 public:
  GroupQueue() = default;
  explicit GroupQueue(std::vector<Group> groups) {
    for (auto& g : groups) push(std::move(g));
  }

  bool empty() const noexcept { return queue_.empty(); }
  std::size_t size() const noexcept { return queue_.size(); }
  const std::deque<Group>& groups() const noexcept { return queue_; }

  void push(Group g) {
    total_agents_ += static_cast<long>(g.agents.size());
    queue_.push_back(std::move(g));
  }

  Group pop() {
    Group g = std::move(queue_.front());
    queue_.pop_front();
    total_agents_ -= static_cast<long>(g.agents.size());
    return g;
  }

  long total_agents() const noexcept { return total_agents_; }

  // Drops every queued group sharing an agent with `new_group`, then queues it.
  void remove_not_disjoint_with(Group new_group) {
    std::vector<bool> member;
    for (int a : new_group.agents) {
      if (a >= static_cast<int>(member.size())) member.resize(a + 1, false);
      member[a] = true;
    }
    auto overlaps = [&](const Group& g) {
      return std::any_of(g.agents.begin(), g.agents.end(),
                         [&](int a) { return a < static_cast<int>(member.size()) && member[a]; });
    };
    for (auto it = queue_.begin(); it != queue_.end();) {
      if (overlaps(*it)) {
        total_agents_ -= static_cast<long>(it->agents.size());
        it = queue_.erase(it);
      } else {
        ++it;
      }
    }
    push(std::move(new_group));
  }

 private:
  std::deque<Group> queue_;
  long total_agents_ = 0;
};

// Share of the remaining budget for a popped group of `group_size` agents,
// proportional to its size among itself plus everything still queued.
inline double time_per_group(int group_size, const GroupQueue& queue, double time_left) {
  const double total = static_cast<double>(group_size) + static_cast<double>(queue.total_agents());
  return time_left * static_cast<double>(group_size) / total;
}

}  // namespace apibt
