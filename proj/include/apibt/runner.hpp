#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apibt/anytime.hpp"
#include "apibt/lacam.hpp"
#include "apibt/pibt.hpp"
#include "apibt/validate.hpp"

namespace apibt {

enum class Algorithm { pibt, apibt, apibt_tb, lacam_pibt, lacam_apibt, lacam_apibt_tb };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::pibt: return "pibt";
    case Algorithm::apibt: return "apibt";
    case Algorithm::apibt_tb: return "apibt-tb";
    case Algorithm::lacam_pibt: return "lacam+pibt";
    case Algorithm::lacam_apibt: return "lacam+apibt";
    case Algorithm::lacam_apibt_tb: return "lacam+apibt-tb";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& name) {
  for (auto a : {Algorithm::pibt, Algorithm::apibt, Algorithm::apibt_tb, Algorithm::lacam_pibt, Algorithm::lacam_apibt,
                 Algorithm::lacam_apibt_tb})
    if (to_string(a) == name) return a;
  throw std::invalid_argument("unknown algorithm: " + name);
}

inline bool uses_lacam(Algorithm a) {
  return a == Algorithm::lacam_pibt || a == Algorithm::lacam_apibt || a == Algorithm::lacam_apibt_tb;
}

inline std::string to_string(BudgetMode m) { return m == BudgetMode::nodes ? "nodes" : "wall"; }

inline BudgetMode parse_budget_mode(const std::string& name) {
  if (name == "wall") return BudgetMode::wall;
  if (name == "nodes") return BudgetMode::nodes;
  throw std::invalid_argument("unknown budget mode: " + name);
}

struct RunConfig {
  Algorithm algorithm = Algorithm::pibt;
  double step_budget_ms = 0.0;
  BudgetMode budget_mode = BudgetMode::wall;
  std::uint64_t seed = 0;
  double time_limit_s = 60.0;  // summed planning time over all steps
  int max_steps = 10'000;
  bool grouping = true;
  std::string map_name;
  std::string scen_name;
  // Forwarded to every Anytime PIBT call, including LaCAM's generator.
  std::function<void(const ImprovementEvent&)> on_improvement;
};

struct StepRecord {
  int t = 0;
  long f_initial = 0;
  long f_final = 0;
  long f_lowerbound = 0;
  int groups = 0;
  int merges = 0;
  double plan_time_ms = 0.0;
  bool finished_all_groups = true;
};

struct RunSummary {
  bool success = false;
  long total_cost = 0;
  long cost_lowerbound = 0;
  double normalized_cost = 0.0;
  int makespan = 0;
  double total_plan_time_ms = 0.0;
  std::string algorithm;
  std::string map;
  std::string scen;
  int agents = 0;
  std::uint64_t seed = 0;
  double step_budget_ms = 0.0;
  std::string budget_mode;
  std::string failure;  // empty on success
};

struct RunResult {
  RunSummary summary;
  std::vector<StepRecord> steps;
  Solution solution;
};

// Called before each standalone step with the state about to be planned.
using StepObserver = std::function<void(int t, const StepContext& ctx)>;

inline AnytimeOptions anytime_options_for(Algorithm a, bool grouping = true) {
  AnytimeOptions o;
  o.mode = (a == Algorithm::apibt_tb || a == Algorithm::lacam_apibt_tb) ? SolveMode::tiebreak : SolveMode::optimal;
  o.grouping = grouping;
  return o;
}

inline AnytimeOptions anytime_options_for(const RunConfig& cfg) {
  auto o = anytime_options_for(cfg.algorithm, cfg.grouping);
  o.on_improvement = cfg.on_improvement;
  return o;
}

namespace detail {

inline RunSummary make_summary(const Instance& inst, const RunConfig& cfg) {
  RunSummary s;
  s.algorithm = to_string(cfg.algorithm);
  s.map = cfg.map_name;
  s.scen = cfg.scen_name;
  s.agents = inst.num_agents();
  s.seed = cfg.seed;
  s.step_budget_ms = cfg.step_budget_ms;
  s.budget_mode = to_string(cfg.budget_mode);
  s.cost_lowerbound = inst.cost_lowerbound();
  return s;
}

inline void finish_summary(RunSummary& s, const Instance& inst, const Solution& solution) {
  s.makespan = static_cast<int>(solution.size()) - 1;
  s.total_cost = solution_cost(inst, solution);
  s.normalized_cost =
      s.cost_lowerbound > 0 ? static_cast<double>(s.total_cost) / static_cast<double>(s.cost_lowerbound) : 1.0;
}

inline RunResult run_lacam(const Instance& inst, const RunConfig& cfg) {
  RunResult out;
  out.summary = make_summary(inst, cfg);
  std::unique_ptr<StepGenerator> generator;
  if (cfg.algorithm == Algorithm::lacam_pibt)
    generator = std::make_unique<PibtGenerator>();
  else
    generator = std::make_unique<AnytimePibtGenerator>(StepBudget::from_ms(cfg.step_budget_ms, cfg.budget_mode),
                                                       anytime_options_for(cfg));
  LacamOptions options;
  options.time_limit_ms = cfg.time_limit_s * 1000.0;
  options.seed = cfg.seed;
  auto result = lacam_solve(inst, *generator, options);
  out.summary.total_plan_time_ms = result.elapsed_ms;
  if (!result.success) {
    out.summary.failure = "lacam " + result.failure;
    return out;
  }
  const auto report = validate_paths(inst, result.solution);
  if (!report.ok()) throw std::logic_error("lacam returned an invalid solution: " + report.message());
  out.summary.success = true;
  out.solution = std::move(result.solution);
  finish_summary(out.summary, inst, out.solution);
  return out;
}

}  // namespace detail

// Plans and executes one step at a time (standalone planners) or hands the
// whole instance to LaCAM. Cost is charged forward: one unit per agent per
// step unless it stays on its goal.
inline RunResult run_full_horizon(const Instance& inst, const RunConfig& cfg, const StepObserver& observer = {}) {
  if (uses_lacam(cfg.algorithm)) return detail::run_lacam(inst, cfg);

  RunResult out;
  out.summary = detail::make_summary(inst, cfg);
  const auto budget = StepBudget::from_ms(cfg.step_budget_ms, cfg.budget_mode);
  const auto options = anytime_options_for(cfg);
  const double limit_ms = cfg.time_limit_s * 1000.0;

  Configuration config = inst.starts;
  PriorityState priorities = PriorityState::initial(inst.num_agents(), cfg.seed);
  out.solution.push_back(config);

  for (int t = 0;; ++t) {
    if (config == inst.goals) {
      out.summary.success = true;
      break;
    }
    if (t >= cfg.max_steps) {
      out.summary.failure = "max steps";
      break;
    }
    if (out.summary.total_plan_time_ms > limit_ms) {
      out.summary.failure = "time limit";
      break;
    }

    const auto start = std::chrono::steady_clock::now();
    const StepContext ctx(inst, config, priorities, cfg.seed, t);
    StepRecord rec;
    rec.t = t;
    Configuration next;
    if (cfg.algorithm == Algorithm::pibt) {
      auto plan = pibt_step(ctx);
      next = plan->cells();
      rec.f_initial = rec.f_final = plan_fsum(ctx, next);
      rec.f_lowerbound = ctx.lowerbound();
    } else {
      auto r = anytime_pibt(ctx, budget, options);
      next = std::move(r.next);
      rec.f_initial = r.f_initial;
      rec.f_final = r.f_final;
      rec.f_lowerbound = r.f_lowerbound;
      rec.groups = r.groups;
      rec.merges = r.merges;
      rec.finished_all_groups = r.finished_all_groups;
    }
    rec.plan_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.summary.total_plan_time_ms += rec.plan_time_ms;
    // observers replay the state; their time is not charged to the run
    if (observer) observer(t, ctx);

    const auto report = validate_transition(*inst.map, config, next, t);
    if (!report.ok()) throw std::logic_error("planner produced an invalid step: " + report.message());
    if (!(rec.f_lowerbound <= rec.f_final && rec.f_final <= rec.f_initial))
      throw std::logic_error("step record violates f_lowerbound <= f_final <= f_initial");

    out.steps.push_back(rec);
    config = std::move(next);
    priorities.advance(config, inst.goals);
    out.solution.push_back(config);
  }
  detail::finish_summary(out.summary, inst, out.solution);
  return out;
}

struct StudyRow {
  int t = 0;
  double budget_ms = 0.0;
  long f_initial = 0;
  long f_final = 0;
  long f_lowerbound = 0;
  bool finished_all_groups = false;
  long improvement() const noexcept { return f_initial - f_final; }
};

// Drives an Anytime PIBT run with the largest budget and, at every step,
// replays the same state under each budget.
inline std::vector<StudyRow> run_single_step_study(const Instance& inst, std::vector<double> budgets_ms,
                                                   RunConfig cfg) {
  if (budgets_ms.empty()) throw std::invalid_argument("study needs at least one budget");
  if (!std::is_sorted(budgets_ms.begin(), budgets_ms.end()))
    throw std::invalid_argument("study budgets must be sorted ascending");
  if (uses_lacam(cfg.algorithm) || cfg.algorithm == Algorithm::pibt) cfg.algorithm = Algorithm::apibt;
  cfg.step_budget_ms = budgets_ms.back();
  const auto options = anytime_options_for(cfg);

  std::vector<StudyRow> rows;
  run_full_horizon(inst, cfg, [&](int t, const StepContext& ctx) {
    for (double b : budgets_ms) {
      const auto r = anytime_pibt(ctx, StepBudget::from_ms(b, cfg.budget_mode), options);
      rows.push_back({t, b, r.f_initial, r.f_final, r.f_lowerbound, r.finished_all_groups});
    }
  });
  return rows;
}

}  // namespace apibt
