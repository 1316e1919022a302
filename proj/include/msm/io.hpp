#pragma once

// JSON instance and experiment files, and JSON renderings of reports.

#include <string>
#include <vector>

#include "json.hpp"
#include "msm/analysis.hpp"
#include "msm/engine.hpp"
#include "msm/experiments.hpp"
#include "msm/fleet.hpp"

namespace msm {

/// Instance file contents. Agents without a "policy" entry get the default
/// policy for their objective.
struct InstanceFile {
  Instance instance;
  std::vector<PolicyKind> policies;
  ProtocolConfig config;
};

/// {
///   "m": 3,
///   "agents": [{"objective": {...}, "constraint": {...},
///               "monotone": true, "policy": {"kind": "greedy"}}, ...],
///   "protocol": {"order": [...], "rule": "as_written", "rounds": "ceil_m_over_n"}
/// }
/// Throws InvalidArgument with the offending path on malformed input.
InstanceFile parse_instance(const std::string& text);
InstanceFile load_instance(const std::string& path);

nlohmann::json objective_to_json(const ObjectiveSpec& spec);
nlohmann::json constraint_to_json(const Constraint& c);
nlohmann::json policy_to_json(const PolicyKind& kind);
std::string instance_to_json(const Instance& instance, const std::vector<PolicyKind>& policies,
                             const ProtocolConfig& config = {});

/// {"graph": {"vertices", "avg_degree", "regime", "seed"}, "agents", "cardinality",
///  "q", "runs", "sweep": "agents"|"cardinality", "values", "protocol"}
ExperimentSpec parse_experiment(const std::string& text);
ExperimentSpec load_experiment(const std::string& path);
std::string experiment_to_json(const ExperimentSpec& spec);

nlohmann::json to_json(const BenchmarkReport& report);
nlohmann::json to_json(const FairnessReport& report);
nlohmann::json to_json(const ExanteReport& report);
nlohmann::json to_json(const SaturationReport& report);
nlohmann::json to_json(const FleetSummary& summary);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace msm
