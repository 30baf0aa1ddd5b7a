#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "apibt/deadline.hpp"
#include "apibt/djag.hpp"
#include "apibt/pibt.hpp"

namespace apibt {

enum class SolveMode {
  optimal,   // every candidate of every agent
  tiebreak,  // only each agent's individually f-minimal candidates
};

// Candidate list restricted to the agent's f-minimal moves.
inline CandidateList tiebreak_candidates(const StepContext& ctx, int agent) {
  CandidateList c = ctx.candidates(agent);
  std::size_t ties = 1;
  while (ties < c.size() && c[ties].f == c[0].f) ++ties;
  c.truncate(ties);
  return c;
}

// Fired whenever a group's best f-sum improves.
struct ImprovementEvent {
  std::vector<int> agents;
  long previous_f;
  long new_f;
};

struct AnytimeOptions {
  SolveMode mode = SolveMode::optimal;
  // false: one group holding every (unforced) agent.
  bool grouping = true;
  // false: no F_next >= F_b cut and no early return over sorted candidates;
  // only strictly better complete assignments are recorded.
  bool prune = true;
  // Count each not-yet-planned group agent at its minimal f when comparing
  // with F_b, i.e. accumulate penalties (f - min f) instead of raw f. Never
  // changes the optimum, only how early branches are cut.
  bool penalty_bound = true;
  std::function<void(const ImprovementEvent&)> on_improvement;
};

struct GroupSolveResult {
  bool early_exit = true;
  std::vector<int> new_group;  // agents of the group after any merges seen
  std::uint64_t nodes = 0;
};

// Depth-first branch and bound over one group's joint single-step actions,
// ordered by PIBT's priority inheritance. Agents outside the group keep
// their current plans and act as obstacles.
class GroupSolver {
 public:
  GroupSolver(const StepContext& ctx, StepPlan& plan, GroupSet& sets, const AnytimeOptions& options)
      : ctx_(ctx), plan_(plan), sets_(sets), options_(options), local_(ctx.num_agents(), -1) {}

  // Replans `group` until exhausted or `deadline` expires. The group's best
  // assignment (the incumbent unless improved) is left in the plan and
  // group.best_f is updated.
  GroupSolveResult solve(Group& group, const Deadline& deadline) {
    group_ = &group;
    deadline_ = &deadline;
    aborted_ = false;
    nodes_ = 0;
    const std::size_t n = group.agents.size();

    offset_ = 0;
    if (options_.penalty_bound)
      for (int a : group.agents) offset_ += ctx_.fmin(a);

    best_cells_.assign(n, kNoVertex);
    in_aop_.assign(n, true);
    remaining_ = n;
    for (std::size_t i = 0; i < n; ++i) {
      const int a = group.agents[i];
      local_[a] = static_cast<int>(i);
      best_cells_[i] = plan_.next(a);
    }
    best_ = group.best_f == kInfCost ? kInfCost : group.best_f - offset_;

    for (int a : group.agents) plan_.release(a);
    recurse(-1, 0);

    for (std::size_t i = 0; i < n; ++i) {
      const int a = group.agents[i];
      local_[a] = -1;
      if (best_cells_[i] != kNoVertex) plan_.reserve(a, best_cells_[i]);
    }
    if (best_ != kInfCost) group.best_f = best_ + offset_;

    GroupSolveResult result;
    result.early_exit = aborted_;
    result.nodes = nodes_;
    const auto members = sets_.members(sets_.find(group.agents.front()));
    result.new_group.assign(members.begin(), members.end());
    if (result.new_group.size() < group.agents.size()) result.new_group = group.agents;
    return result;
  }

 private:
  int cost(int agent, const Candidate& c) const noexcept {
    return options_.penalty_bound ? c.f - ctx_.fmin(agent) : c.f;
  }

  int top_of_aop() const noexcept {
    for (std::size_t i = 0; i < in_aop_.size(); ++i)
      if (in_aop_[i]) return group_->agents[i];
    return -1;
  }

  void record(long value) {
    const long previous = best_ == kInfCost ? kInfCost : best_ + offset_;
    best_ = value;
    for (std::size_t i = 0; i < group_->agents.size(); ++i) best_cells_[i] = plan_.next(group_->agents[i]);
    if (options_.on_improvement) options_.on_improvement({group_->agents, previous, value + offset_});
  }

  void recurse(int agent, long accumulated) {
    if (agent < 0) agent = top_of_aop();
    const int li = local_[agent];
    in_aop_[li] = false;
    --remaining_;

    const CandidateList candidates =
        options_.mode == SolveMode::tiebreak ? tiebreak_candidates(ctx_, agent) : ctx_.candidates(agent);

    for (const Candidate& c : candidates) {
      if (deadline_->expired()) {
        aborted_ = true;
        break;
      }
      deadline_->clock().tick();
      ++nodes_;
      if (const int j = blocking_agent(ctx_, plan_, agent, c.cell); j >= 0) {
        sets_.group(agent, j);
        continue;
      }
      const long next = accumulated + cost(agent, c);
      if (options_.prune && next >= best_) break;
      plan_.reserve(agent, c.cell);
      if (remaining_ == 0) {
        if (next < best_) record(next);
      } else {
        int successor = -1;
        const int j = ctx_.agent_at(c.cell);
        if (j >= 0 && j != agent && !plan_.planned(j)) {
          sets_.group(agent, j);
          successor = j;
        }
        recurse(successor, next);
      }
      plan_.release(agent);
      if (aborted_) break;
    }

    in_aop_[li] = true;
    ++remaining_;
  }

  const StepContext& ctx_;
  StepPlan& plan_;
  GroupSet& sets_;
  const AnytimeOptions& options_;
  std::vector<int> local_;  // agent -> position in the group being solved

  Group* group_ = nullptr;
  const Deadline* deadline_ = nullptr;
  std::vector<Vertex> best_cells_;
  std::vector<bool> in_aop_;
  std::size_t remaining_ = 0;
  long best_ = kInfCost;
  long offset_ = 0;
  bool aborted_ = false;
  std::uint64_t nodes_ = 0;
};

struct AnytimeResult {
  bool success = false;  // false only when forced moves are infeasible
  Configuration next;     // best plan found
  Configuration initial;  // the PIBT plan
  long f_initial = 0;
  long f_final = 0;
  long f_lowerbound = 0;
  int groups = 0;  // groups found by the initial PIBT pass
  int merges = 0;
  int group_solves = 0;
  bool finished_all_groups = false;
  std::uint64_t nodes = 0;
};

// Anytime PIBT for one step. Runs PIBT with grouping, keeps its plan as the
// incumbent, then replans groups from a FIFO queue until the queue drains or
// the budget runs out. The budget counts only the improvement phase, so a
// zero budget returns the PIBT plan unchanged.
inline AnytimeResult anytime_pibt(const StepContext& ctx, const StepBudget& budget, const AnytimeOptions& options = {},
                                  std::span<const ForcedMove> forced = {}) {
  AnytimeResult result;
  GroupSet sets(ctx.num_agents());
  auto initial = pibt_step(ctx, &sets, forced);
  if (!initial) return result;
  StepPlan plan = std::move(*initial);

  result.success = true;
  result.initial = plan.cells();
  std::vector<int> agent_f(ctx.num_agents());
  for (int a = 0; a < ctx.num_agents(); ++a) agent_f[a] = ctx.fvalue_of(a, plan.next(a));
  result.f_initial = 0;
  for (int f : agent_f) result.f_initial += f;
  result.f_lowerbound = ctx.lowerbound();

  std::vector<Group> groups;
  if (options.grouping) {
    groups = extract_groups(sets, ctx.priorities(), agent_f);
  } else {
    Group all;
    all.best_f = 0;
    for (int a : ctx.order()) {
      if (sets.pinned(a)) continue;
      all.agents.push_back(a);
      all.best_f += agent_f[a];
    }
    if (!all.agents.empty()) groups.push_back(std::move(all));
  }
  result.groups = static_cast<int>(groups.size());

  GroupQueue queue(std::move(groups));
  PlanningClock clock(budget.mode);
  const Deadline deadline(clock, budget.amount);
  GroupSolver solver(ctx, plan, sets, options);
  while (!queue.empty() && !deadline.expired()) {
    Group group = queue.pop();
    const double share = time_per_group(static_cast<int>(group.agents.size()), queue, deadline.remaining());
    const auto outcome = solver.solve(group, deadline.child(share));
    ++result.group_solves;
    result.nodes += outcome.nodes;
    if (outcome.new_group.size() != group.agents.size()) {
      Group merged;
      merged.agents = outcome.new_group;
      sort_by_priority(merged.agents, ctx.priorities());
      merged.best_f = 0;
      for (int a : merged.agents) merged.best_f += ctx.fvalue_of(a, plan.next(a));
      queue.remove_not_disjoint_with(std::move(merged));
      ++result.merges;
    } else if (outcome.early_exit) {
      queue.push(std::move(group));
    }
  }

  result.finished_all_groups = queue.empty();
  result.next = plan.cells();
  result.f_final = plan_fsum(ctx, result.next);
  return result;
}

}  // namespace apibt
