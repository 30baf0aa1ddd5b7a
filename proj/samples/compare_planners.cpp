// Solves one seeded random instance with several planners and prints the
// sum of costs next to the lower bound. Optimal-mode Anytime PIBT on its own
// tends to stall once waiting becomes the cheapest single step.

#include <iomanip>
#include <iostream>
#include <memory>

#include "apibt/apibt.hpp"

int main(int argc, char** argv) {
  const int agents = argc > 1 ? std::stoi(argv[1]) : 60;
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 7;

  auto map = std::make_shared<const apibt::GridMap>(apibt::random_map(32, 32, 0.2, seed));
  const auto inst = apibt::random_instance(map, agents, seed);
  std::cout << agents << " agents on a 32x32 map, cost lower bound " << inst.cost_lowerbound() << "\n\n";

  struct Entry {
    apibt::Algorithm algorithm;
    double budget_ms;
  };
  const Entry entries[] = {
      {apibt::Algorithm::pibt, 0.0},
      {apibt::Algorithm::apibt, 1.0},
      {apibt::Algorithm::apibt_tb, 1.0},
      {apibt::Algorithm::lacam_pibt, 0.0},
      {apibt::Algorithm::lacam_apibt, 1.0},
      {apibt::Algorithm::lacam_apibt_tb, 1.0},
  };

  std::cout << std::left << std::setw(16) << "planner" << std::setw(10) << "solved" << std::setw(10) << "cost"
            << std::setw(12) << "normalized" << "plan ms\n";
  for (const auto& e : entries) {
    apibt::RunConfig cfg;
    cfg.algorithm = e.algorithm;
    cfg.step_budget_ms = e.budget_ms;
    cfg.budget_mode = apibt::BudgetMode::nodes;  // reproducible across machines
    cfg.seed = seed;
    cfg.time_limit_s = 10.0;
    cfg.max_steps = 1000;
    const auto run = apibt::run_full_horizon(inst, cfg);
    const auto& s = run.summary;
    std::cout << std::setw(16) << s.algorithm << std::setw(10) << (s.success ? "yes" : s.failure) << std::setw(10)
              << s.total_cost << std::setw(12) << std::setprecision(4) << s.normalized_cost << std::setprecision(1)
              << std::fixed << s.total_plan_time_ms << std::defaultfloat << '\n';
  }
}
