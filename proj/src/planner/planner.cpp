#include "tgq/planner/planner.hpp"

#include <sstream>
#include <stdexcept>

#include "tgq/ntga/engine.hpp"
#include "tgq/relational/mqo_plan.hpp"
#include "tgq/relational/union_plan.hpp"

namespace tgq::planner {

std::string toString(Engine e) {
  switch (e) {
    case Engine::Ntga:
      return "ntga";
    case Engine::RelationalUnion:
      return "union";
    case Engine::RelationalMqo:
      return "mqo";
  }
  return "?";
}

Engine parseEngine(const std::string& name) {
  if (name == "ntga") return Engine::Ntga;
  if (name == "union" || name == "relational-union") return Engine::RelationalUnion;
  if (name == "mqo" || name == "relational-mqo") return Engine::RelationalMqo;
  throw std::invalid_argument("unknown engine '" + name + "'");
}

nlohmann::json PlanChoice::toJson() const {
  nlohmann::json j{{"engine", toString(engine)}, {"predictedJobs", predictedJobs},
                   {"predictedSourceScans", predictedSourceScans}};
  if (notApplicable) j["notApplicable"] = *notApplicable;
  return j;
}

PlanChoice predictJobCount(const query::UCQ& q, Engine engine) {
  PlanChoice c;
  c.engine = engine;
  switch (engine) {
    case Engine::RelationalUnion: {
      relational::requireNoOptionals(q);
      for (const auto& b : q.branches) {
        c.predictedJobs += 2 * b.stars.size() - 1;
        c.predictedSourceScans += b.stars.size();
      }
      c.predictedJobs += 1;
      break;
    }
    case Engine::Ntga: {
      relational::requireNoOptionals(q);
      rdf::Dictionary empty;
      auto plan = ntga::compileNtga(q, empty);
      c.predictedJobs = plan.predictedJobs();
      c.predictedSourceScans = plan.predictedScans();
      break;
    }
    case Engine::RelationalMqo: {
      auto built = relational::buildMqoPlan(q);
      if (const auto* na = std::get_if<relational::NotApplicable>(&built)) {
        c.notApplicable = na->reason;
      } else {
        const auto& plan = std::get<relational::MqoPlan>(built);
        c.predictedJobs = plan.predictedJobs();
        c.predictedSourceScans = plan.predictedScans();
      }
      break;
    }
  }
  return c;
}

mr::Workflow planNtga(const query::UCQ& q, const rdf::Dictionary& dict, std::uint32_t partitions) {
  relational::requireNoOptionals(q);
  return ntga::compileNtga(q, dict, partitions).workflow;
}

mr::Workflow planRelational(const query::UCQ& q, Engine kind, const rdf::Dictionary& dict,
                            std::uint32_t partitions) {
  if (kind == Engine::RelationalUnion) return relational::compileUnionPlan(q, dict, partitions).workflow;
  if (kind == Engine::RelationalMqo) {
    auto built = relational::buildMqoPlan(q);
    if (const auto* na = std::get_if<relational::NotApplicable>(&built))
      throw std::invalid_argument("MQO plan not applicable: " + na->reason);
    return relational::compileMqoPlan(std::get<relational::MqoPlan>(built), dict, partitions).workflow;
  }
  throw std::invalid_argument("not a relational engine");
}

std::string describeWorkflow(const mr::Workflow& w) {
  std::ostringstream os;
  os << "workflow (" << w.jobs.size() << " jobs)\n";
  for (size_t i = 0; i < w.jobs.size(); ++i) {
    const auto& j = w.jobs[i];
    os << "  job " << i + 1 << ": " << j.id << (j.mapOnly() ? " [map-only]" : " [map+reduce]") << "\n";
    os << "    inputs:";
    for (const auto& in : j.inputs) os << " " << in;
    os << "\n";
  }
  return os.str();
}

}  // namespace tgq::planner
