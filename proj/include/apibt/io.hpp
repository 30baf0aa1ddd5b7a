#pragma once

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "apibt/runner.hpp"
#include "json.hpp"

namespace apibt {

inline constexpr int kSchemaVersion = 1;

inline const char* kStepCsvHeader = "t,f_initial,f_final,f_lowerbound,groups,merges,plan_time_ms,finished_all_groups";
inline const char* kStudyCsvHeader = "t,budget_ms,f_initial,f_final,f_lowerbound,improvement,finished_all_groups";

inline void write_steps_csv(std::ostream& out, const std::vector<StepRecord>& steps) {
  out << kStepCsvHeader << '\n';
  for (const auto& s : steps)
    out << s.t << ',' << s.f_initial << ',' << s.f_final << ',' << s.f_lowerbound << ',' << s.groups << ','
        << s.merges << ',' << s.plan_time_ms << ',' << (s.finished_all_groups ? 1 : 0) << '\n';
}

inline void write_study_csv(std::ostream& out, const std::vector<StudyRow>& rows) {
  out << kStudyCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.t << ',' << r.budget_ms << ',' << r.f_initial << ',' << r.f_final << ',' << r.f_lowerbound << ','
        << r.improvement() << ',' << (r.finished_all_groups ? 1 : 0) << '\n';
}

inline nlohmann::json to_json(const RunSummary& s) {
  return {
      {"schema_version", kSchemaVersion},
      {"success", s.success},
      {"total_cost", s.total_cost},
      {"cost_lowerbound", s.cost_lowerbound},
      {"normalized_cost", s.normalized_cost},
      {"makespan", s.makespan},
      {"total_plan_time_ms", s.total_plan_time_ms},
      {"algorithm", s.algorithm},
      {"map", s.map},
      {"scen", s.scen},
      {"agents", s.agents},
      {"seed", s.seed},
      {"step_budget_ms", s.step_budget_ms},
      {"budget_mode", s.budget_mode},
      {"failure", s.failure},
  };
}

inline RunSummary summary_from_json(const nlohmann::json& j) {
  if (j.at("schema_version").get<int>() != kSchemaVersion) throw std::runtime_error("unsupported schema_version");
  RunSummary s;
  s.success = j.at("success").get<bool>();
  s.total_cost = j.at("total_cost").get<long>();
  s.cost_lowerbound = j.at("cost_lowerbound").get<long>();
  s.normalized_cost = j.at("normalized_cost").get<double>();
  s.makespan = j.at("makespan").get<int>();
  s.total_plan_time_ms = j.at("total_plan_time_ms").get<double>();
  s.algorithm = j.at("algorithm").get<std::string>();
  s.map = j.at("map").get<std::string>();
  s.scen = j.at("scen").get<std::string>();
  s.agents = j.at("agents").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.step_budget_ms = j.at("step_budget_ms").get<double>();
  s.budget_mode = j.at("budget_mode").get<std::string>();
  s.failure = j.value("failure", "");
  return s;
}

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  writer(out);
}

}  // namespace apibt
