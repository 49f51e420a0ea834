#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tgq/exec/engine_api.hpp"
#include "tgq/ntga/operators.hpp"

namespace tgq::ntga {

/// Join of one star onto a branch's partial match at a given round.
struct BranchJoin {
  size_t branch = 0;
  std::uint32_t leftStar = 0;  // placed star holding the key variable
  JoinSlot leftSlot;
  std::uint32_t rightStar = 0;
  bool last = false;  // the branch is complete after this join
};

/// Joins executed together in one job (TG_UJoin when it has several
/// branches): same round, join kind, right star shape and right slot.
struct JoinClass {
  size_t round = 0;
  std::string kind;  // "S-O", "O-O" or "cross"
  std::uint32_t rightTag = 0;
  JoinSlot rightSlot;
  std::vector<BranchJoin> joins;
  std::string jobId;
};

struct NtgaPlan {
  std::shared_ptr<const exec::BoundQuery> bound;
  DisjunctiveStarFilter filter;
  LoadFilter loadFilter;
  std::vector<std::vector<std::uint32_t>> starTags;  // [branch][star]
  std::vector<std::string> tagSignatures;
  std::vector<JoinClass> classes;
  mr::Workflow workflow;

  size_t predictedJobs() const { return 1 + classes.size(); }
  size_t predictedScans() const { return 1; }
};

/// Job 1 = TG_LoadFilter (map) + TG_GroupBy and the disjunctive
/// TG_GroupFilter (reduce); one further job per join class. Single-star
/// branches are flattened in job 1, the others in their last join.
NtgaPlan compileNtga(const query::UCQ& q, const rdf::Dictionary& dict, std::uint32_t partitions = 1);

exec::EngineResult executeNtga(const query::UCQ& q, const rdf::Graph& g, const exec::ExecOptions& opts = {});
exec::EngineResult executeNtga(const NtgaPlan& plan, mr::Registry& registry, const rdf::Dictionary& dict,
                               const exec::ExecOptions& opts = {});

}  // namespace tgq::ntga
