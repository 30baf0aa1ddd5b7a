// Command-line front end: solve, study, oracle-check, generate.

#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apibt/apibt.hpp"
#include "apibt/io.hpp"
#include "apibt/oracle_check.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPlanningFailure = 2;

struct InstanceArgs {
  std::string map_path;
  std::string scen_path;
  int agents = 0;
};

struct RunArgs {
  std::string algorithm = "pibt";
  double step_budget_ms = 0.0;
  std::string budget_mode = "wall";
  std::uint64_t seed = 0;
  double time_limit_s = 60.0;
  int max_steps = 10'000;
  bool no_grouping = false;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& a) {
  cmd->add_option("--map", a.map_path, "MovingAI .map file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--scen", a.scen_path, "MovingAI .scen file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--agents", a.agents, "number of agents (first N scenario entries)")
      ->required()
      ->check(CLI::PositiveNumber);
}

void add_run_options(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--seed", a.seed, "seed for priorities and tie-breaking");
  cmd->add_option("--budget-mode", a.budget_mode, "wall | nodes")->check(CLI::IsMember({"wall", "nodes"}));
  cmd->add_option("--time-limit-s", a.time_limit_s, "total planning time limit");
  cmd->add_option("--max-steps", a.max_steps, "timestep limit for standalone planners");
  cmd->add_flag("--no-grouping", a.no_grouping, "plan all agents as one group");
}

apibt::Instance load(const InstanceArgs& a) {
  auto map = std::make_shared<const apibt::GridMap>(apibt::load_map(a.map_path));
  const auto scen = apibt::load_scenario(a.scen_path, *map);
  return apibt::make_instance(map, scen, a.agents);
}

apibt::RunConfig run_config(const InstanceArgs& ia, const RunArgs& ra) {
  apibt::RunConfig cfg;
  cfg.algorithm = apibt::parse_algorithm(ra.algorithm);
  cfg.step_budget_ms = ra.step_budget_ms;
  cfg.budget_mode = apibt::parse_budget_mode(ra.budget_mode);
  cfg.seed = ra.seed;
  cfg.time_limit_s = ra.time_limit_s;
  cfg.max_steps = ra.max_steps;
  cfg.grouping = !ra.no_grouping;
  cfg.map_name = std::filesystem::path(ia.map_path).filename().string();
  cfg.scen_name = std::filesystem::path(ia.scen_path).filename().string();
  return cfg;
}

std::vector<double> parse_budget_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

// "2..6" or "4"
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = std::stoi(text);
    return {v, v};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anytime PIBT multi-agent path finding toolkit"};
  app.require_subcommand(1);

  InstanceArgs solve_inst;
  RunArgs solve_run;
  std::string out_summary, out_steps;
  auto* solve = app.add_subcommand("solve", "solve one instance over the full horizon");
  add_instance_options(solve, solve_inst);
  add_run_options(solve, solve_run);
  solve->add_option("--alg", solve_run.algorithm, "pibt | apibt | apibt-tb | lacam+pibt | lacam+apibt | lacam+apibt-tb")
      ->check(CLI::IsMember({"pibt", "apibt", "apibt-tb", "lacam+pibt", "lacam+apibt", "lacam+apibt-tb"}));
  solve->add_option("--step-budget-ms", solve_run.step_budget_ms, "per-step Anytime PIBT budget (ms)");
  solve->add_option("--out-summary", out_summary, "write the run summary JSON here");
  solve->add_option("--out-steps", out_steps, "write per-step records CSV here");

  InstanceArgs study_inst;
  RunArgs study_run;
  study_run.algorithm = "apibt";
  std::string budgets_text = "0,0.1,4,256", study_out;
  auto* study = app.add_subcommand("study", "per-step improvement at several budgets from identical states");
  add_instance_options(study, study_inst);
  add_run_options(study, study_run);
  study->add_option("--alg", study_run.algorithm, "apibt | apibt-tb")->check(CLI::IsMember({"apibt", "apibt-tb"}));
  study->add_option("--budgets", budgets_text, "comma-separated budgets in ms, ascending");
  study->add_option("--out", study_out, "write the study CSV here (stdout otherwise)");

  apibt::OracleCheckConfig oc;
  std::string agent_range = "2..6", oc_mode = "nodes";
  double oc_budget_ms = 100.0;
  auto* oracle = app.add_subcommand("oracle-check", "compare Anytime PIBT with the brute-force optimum");
  oracle->add_option("--size", oc.size, "grid side length")->check(CLI::Range(2, 64));
  oracle->add_option("--obstacles", oc.obstacle_ratio, "obstacle ratio")->check(CLI::Range(0.0, 0.9));
  oracle->add_option("--agents", agent_range, "agent count or range, e.g. 2..6");
  oracle->add_option("--trials", oc.trials, "number of random instances")->check(CLI::NonNegativeNumber);
  oracle->add_option("--seed", oc.seed, "seed");
  oracle->add_option("--budget-ms", oc_budget_ms, "Anytime PIBT budget per instance (ms)");
  oracle->add_option("--budget-mode", oc_mode, "wall | nodes")->check(CLI::IsMember({"wall", "nodes"}));
  bool oc_tiebreak = false;
  oracle->add_flag("--tiebreak", oc_tiebreak, "use the tiebreak variant");

  std::string gen_kind = "random", gen_map_out, gen_scen_out, gen_name;
  int gen_width = 32, gen_height = 32, gen_count = 500, gen_scens = 1;
  double gen_obstacles = 0.2;
  std::uint64_t gen_seed = 0;
  auto* generate = app.add_subcommand("generate", "write a seeded benchmark-style map and scenarios");
  generate->add_option("--kind", gen_kind, "random | cave")->check(CLI::IsMember({"random", "cave"}));
  generate->add_option("--width", gen_width)->check(CLI::PositiveNumber);
  generate->add_option("--height", gen_height)->check(CLI::PositiveNumber);
  generate->add_option("--obstacles", gen_obstacles, "obstacle ratio (random maps)");
  generate->add_option("--seed", gen_seed);
  generate->add_option("--entries", gen_count, "scenario entries per file");
  generate->add_option("--scens", gen_scens, "number of scenario files");
  generate->add_option("--out-map", gen_map_out, "map output path")->required();
  generate->add_option("--out-scen", gen_scen_out, "scenario path prefix; files are <prefix>-<k>.scen");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) {
      const auto inst = load(solve_inst);
      const auto cfg = run_config(solve_inst, solve_run);
      const auto result = apibt::run_full_horizon(inst, cfg);
      const auto json = apibt::to_json(result.summary);
      if (!out_summary.empty())
        apibt::write_file(out_summary, [&](std::ostream& o) { o << json.dump(2) << '\n'; });
      else
        std::cout << json.dump(2) << '\n';
      if (!out_steps.empty())
        apibt::write_file(out_steps, [&](std::ostream& o) { apibt::write_steps_csv(o, result.steps); });
      return result.summary.success ? kExitOk : kExitPlanningFailure;
    }
    if (*study) {
      const auto inst = load(study_inst);
      const auto cfg = run_config(study_inst, study_run);
      const auto rows = apibt::run_single_step_study(inst, parse_budget_list(budgets_text), cfg);
      if (!study_out.empty())
        apibt::write_file(study_out, [&](std::ostream& o) { apibt::write_study_csv(o, rows); });
      else
        apibt::write_study_csv(std::cout, rows);
      return kExitOk;
    }
    if (*oracle) {
      std::tie(oc.min_agents, oc.max_agents) = parse_range(agent_range);
      if (oc.min_agents < 1 || oc.max_agents < oc.min_agents || oc.max_agents > 8) {
        std::cerr << "agent range must lie within 1..8\n";
        return kExitUsage;
      }
      oc.budget = apibt::StepBudget::from_ms(oc_budget_ms, apibt::parse_budget_mode(oc_mode));
      oc.mode = oc_tiebreak ? apibt::SolveMode::tiebreak : apibt::SolveMode::optimal;
      const auto report = apibt::run_oracle_check(oc);
      std::cout << "trials " << report.trials << " matches " << report.matches << " improved_over_pibt "
                << report.improved << " invalid " << report.invalid_plans << '\n';
      for (const auto& m : report.mismatches)
        std::cout << "mismatch trial " << m.trial << " agents " << m.agents << " anytime " << m.anytime_fsum
                  << " oracle " << m.oracle_fsum << '\n';
      return report.all_match() ? kExitOk : kExitPlanningFailure;
    }
    if (*generate) {
      const auto map = gen_kind == "cave" ? apibt::cave_map(gen_width, gen_height, gen_seed)
                                          : apibt::random_map(gen_width, gen_height, gen_obstacles, gen_seed);
      apibt::write_file(gen_map_out, [&](std::ostream& o) { o << apibt::to_map_string(map); });
      if (!gen_scen_out.empty()) {
        const auto name = std::filesystem::path(gen_map_out).filename().string();
        for (int k = 1; k <= gen_scens; ++k) {
          const auto entries = apibt::random_scenario(map, gen_count, gen_seed * 7919 + k);
          apibt::write_file(gen_scen_out + "-" + std::to_string(k) + ".scen",
                            [&](std::ostream& o) { o << apibt::to_scenario_string(entries, map, name); });
        }
      }
      return kExitOk;
    }
  } catch (const apibt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
