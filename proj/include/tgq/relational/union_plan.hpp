#pragma once

#include <memory>
#include <vector>

#include "tgq/exec/engine_api.hpp"

namespace tgq::relational {

using rdf::IdTriple;
using rdf::TermId;

struct UnionPlan {
  std::shared_ptr<const exec::BoundQuery> bound;
  mr::Workflow workflow;
  /// Branch each job belongs to; the merge job maps to -1.
  std::vector<long> branchOfJob;

  size_t predictedJobs() const { return workflow.jobs.size(); }
  size_t predictedScans() const;
};

/// Per branch: one star-join job per star (a source scan keyed on subject)
/// and one job per inter-star join, left-deep; then a map-only merge job.
UnionPlan compileUnionPlan(const query::UCQ& q, const rdf::Dictionary& dict, std::uint32_t partitions = 1);

exec::EngineResult executeUnionPlan(const query::UCQ& q, const rdf::Graph& g, const exec::ExecOptions& opts = {});
exec::EngineResult executeUnionPlan(const UnionPlan& plan, mr::Registry& registry, const rdf::Dictionary& dict,
                                    const exec::ExecOptions& opts = {});

/// Rejects OPTIONAL groups, which only the MQO plan accepts.
void requireNoOptionals(const query::UCQ& q);

}  // namespace tgq::relational
