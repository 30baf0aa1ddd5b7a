#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "apibt/anytime.hpp"
#include "apibt/benchmarks.hpp"
#include "apibt/oracle.hpp"
#include "apibt/validate.hpp"

namespace apibt {

struct OracleCheckConfig {
  int size = 8;
  double obstacle_ratio = 0.2;
  int min_agents = 2;
  int max_agents = 6;
  int trials = 1000;
  std::uint64_t seed = 0;
  StepBudget budget{BudgetMode::nodes, 1e6};
  SolveMode mode = SolveMode::optimal;
  OracleOptions oracle;
  std::function<void(const ImprovementEvent&)> on_improvement;
};

struct OracleMismatch {
  int trial;
  int agents;
  long anytime_fsum;
  long oracle_fsum;
};

struct OracleCheckReport {
  int trials = 0;
  int matches = 0;
  int improved = 0;  // trials where the optimum beat the initial PIBT plan
  int invalid_plans = 0;
  std::vector<OracleMismatch> mismatches;
  bool all_match() const noexcept { return matches == trials && invalid_plans == 0; }
};

// Random single-step instances: fresh map and agents per trial, agent count
// cycling through [min_agents, max_agents]. Anytime PIBT's f-sum is compared
// with the exhaustive optimum.
inline OracleCheckReport run_oracle_check(const OracleCheckConfig& cfg) {
  OracleCheckReport report;
  const int span = cfg.max_agents - cfg.min_agents + 1;
  AnytimeOptions options;
  options.mode = cfg.mode;
  options.on_improvement = cfg.on_improvement;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t s = splitmix64(cfg.seed * 1'000'003ULL + static_cast<std::uint64_t>(trial));
    const int n = cfg.min_agents + trial % span;
    auto map = std::make_shared<const GridMap>(random_map(cfg.size, cfg.size, cfg.obstacle_ratio, s));
    if (static_cast<int>(largest_component(*map).size()) < n) continue;
    const Instance inst = random_instance(map, n, s ^ 0xabcdefULL);
    const auto priorities = PriorityState::initial(n, s);
    const StepContext ctx(inst, inst.starts, priorities, s, 0);
    const auto r = anytime_pibt(ctx, cfg.budget, options);
    const auto best = brute_force_step(inst, inst.starts, {}, nullptr, cfg.oracle);
    ++report.trials;
    if (!validate_transition(*map, inst.starts, r.next).ok()) ++report.invalid_plans;
    if (best.fsum < r.f_initial) ++report.improved;
    if (best.feasible && r.f_final == best.fsum)
      ++report.matches;
    else
      report.mismatches.push_back({trial, n, r.f_final, best.fsum});
  }
  return report;
}

}  // namespace apibt
