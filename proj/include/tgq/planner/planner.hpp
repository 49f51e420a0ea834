#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "tgq/mr/runtime.hpp"
#include "tgq/query/ast.hpp"
#include "tgq/rdf/dictionary.hpp"

namespace tgq::planner {

enum class Engine { Ntga, RelationalUnion, RelationalMqo };

std::string toString(Engine e);  // "ntga", "union", "mqo"
Engine parseEngine(const std::string& name);

struct PlanChoice {
  Engine engine = Engine::Ntga;
  size_t predictedJobs = 0;
  size_t predictedSourceScans = 0;
  /// Set when the engine cannot run the query (MQO without a common root).
  std::optional<std::string> notApplicable;

  nlohmann::json toJson() const;
};

/// union = Σ(2n_b − 1) + 1 jobs and Σ n_b scans; ntga = 1 + join classes
/// jobs and 1 scan; mqo = optional groups + 2 jobs and 1 scan.
PlanChoice predictJobCount(const query::UCQ& q, Engine engine);

/// Compiled workflow skeletons; constants are resolved against `dict`.
mr::Workflow planNtga(const query::UCQ& q, const rdf::Dictionary& dict, std::uint32_t partitions = 1);
mr::Workflow planRelational(const query::UCQ& q, Engine kind, const rdf::Dictionary& dict,
                            std::uint32_t partitions = 1);

/// Indented listing: one line per job with inputs and phases.
std::string describeWorkflow(const mr::Workflow& w);

}  // namespace tgq::planner
