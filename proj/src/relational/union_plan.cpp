#include "tgq/relational/union_plan.hpp"

#include <algorithm>

#include "tgq/exec/star_match.hpp"

namespace tgq::relational {

namespace {

bool scanKeeps(const exec::BoundStar& star, const IdTriple& t) {
  if (star.subjectVar < 0 && t.s != star.subject) return false;
  if (!std::binary_search(star.requiredProperties.begin(), star.requiredProperties.end(), t.p)) return false;
  for (const auto& [p, objs] : star.groundObjects)
    if (p == t.p) return std::binary_search(objs.begin(), objs.end(), t.o);
  return true;
}

// Both bindings agree wherever both are bound.
bool mergeInto(std::vector<TermId>& acc, const std::vector<TermId>& other) {
  for (size_t i = 0; i < acc.size(); ++i) {
    if (other[i] == rdf::kNoTerm) continue;
    if (acc[i] == rdf::kNoTerm)
      acc[i] = other[i];
    else if (acc[i] != other[i])
      return false;
  }
  return true;
}

using BoundPtr = std::shared_ptr<const exec::BoundQuery>;

mr::Job starJob(BoundPtr bq, size_t b, size_t s, std::uint32_t partitions) {
  mr::Job job;
  job.id = "union.b" + std::to_string(b) + ".star" + std::to_string(s);
  job.inputs = {exec::kSourceDataset};
  job.partitions = partitions;
  job.map = [bq, b, s](const mr::Record& r, mr::MapContext& ctx) {
    const auto& t = std::get<IdTriple>(r);
    if (scanKeeps(bq->branches[b].stars[s], t)) ctx.emit({t.s}, t);
  };
  job.reduce = [bq, b, s](const mr::Key& key, std::span<const mr::Record> values, mr::ReduceContext& out) {
    const auto& branch = bq->branches[b];
    std::vector<IdTriple> triples;
    for (const auto& v : values) triples.push_back(std::get<IdTriple>(v));
    std::sort(triples.begin(), triples.end());
    std::vector<TermId> binding(branch.numVars(), rdf::kNoTerm);
    exec::matchStar(branch.stars[s], key[0], triples, binding, [&](std::vector<TermId>& full) {
      out.write(mr::Row{static_cast<std::uint32_t>(b), full});
    });
  };
  return job;
}

mr::Job joinJob(BoundPtr bq, size_t b, size_t step, std::string left, std::string right,
                std::uint32_t partitions) {
  mr::Job job;
  job.id = "union.b" + std::to_string(b) + ".join" + std::to_string(step);
  job.inputs = {std::move(left), std::move(right)};
  job.partitions = partitions;
  const int keyVar = bq->branches[b].joinOrder[step].keyVar;
  job.map = [keyVar](const mr::Record& r, mr::MapContext& ctx) {
    mr::Row row = std::get<mr::Row>(r);
    row.tag = static_cast<std::uint32_t>(ctx.inputIndex());
    if (keyVar < 0) {
      ctx.emit({}, std::move(row));
    } else {
      TermId k = row.values[keyVar];
      ctx.emit({k}, std::move(row));
    }
  };
  job.reduce = [b](const mr::Key&, std::span<const mr::Record> values, mr::ReduceContext& out) {
    std::vector<const mr::Row*> left, right;
    for (const auto& v : values) {
      const auto& row = std::get<mr::Row>(v);
      (row.tag == 0 ? left : right).push_back(&row);
    }
    for (const auto* l : left)
      for (const auto* r : right) {
        std::vector<TermId> merged = l->values;
        if (mergeInto(merged, r->values)) out.write(mr::Row{static_cast<std::uint32_t>(b), std::move(merged)});
      }
  };
  return job;
}

}  // namespace

void requireNoOptionals(const query::UCQ& q) {
  for (const auto& b : q.branches)
    if (!b.optionals.empty()) throw query::UnsupportedConstruct("OPTIONAL outside an MQO plan");
}

size_t UnionPlan::predictedScans() const {
  size_t n = 0;
  for (const auto& j : workflow.jobs)
    n += std::count(j.inputs.begin(), j.inputs.end(), exec::kSourceDataset);
  return n;
}

UnionPlan compileUnionPlan(const query::UCQ& q, const rdf::Dictionary& dict, std::uint32_t partitions) {
  requireNoOptionals(q);
  UnionPlan plan;
  auto bq = std::make_shared<exec::BoundQuery>(exec::bindQuery(q, dict));
  plan.bound = bq;
  std::vector<std::string> finals;
  for (size_t b = 0; b < bq->branches.size(); ++b) {
    const auto& branch = bq->branches[b];
    if (branch.stars.empty()) throw query::UnsupportedConstruct("branch without triple patterns");
    std::vector<std::string> starHandle(branch.stars.size());
    for (const auto& step : branch.joinOrder) {
      plan.workflow.jobs.push_back(starJob(bq, b, step.star, partitions));
      plan.branchOfJob.push_back(static_cast<long>(b));
      starHandle[step.star] = plan.workflow.jobs.back().id;
    }
    std::string acc = starHandle[branch.joinOrder[0].star];
    for (size_t r = 1; r < branch.joinOrder.size(); ++r) {
      plan.workflow.jobs.push_back(joinJob(bq, b, r, acc, starHandle[branch.joinOrder[r].star], partitions));
      plan.branchOfJob.push_back(static_cast<long>(b));
      acc = plan.workflow.jobs.back().id;
    }
    finals.push_back(acc);
  }
  mr::Job merge;
  merge.id = "union.merge";
  merge.inputs = finals;
  merge.partitions = partitions;
  merge.map = [bq](const mr::Record& r, mr::MapContext& ctx) {
    const auto& row = std::get<mr::Row>(r);
    ctx.write(exec::projectRow(*bq, row.tag, row.values));
  };
  plan.workflow.jobs.push_back(std::move(merge));
  plan.branchOfJob.push_back(-1);
  return plan;
}

exec::EngineResult executeUnionPlan(const UnionPlan& plan, mr::Registry& registry, const rdf::Dictionary& dict,
                                    const exec::ExecOptions& opts) {
  auto run = mr::runWorkflow(plan.workflow, registry, {opts.threads});
  return {exec::collectSolutions(*plan.bound, run.output, dict), std::move(run.stats)};
}

exec::EngineResult executeUnionPlan(const query::UCQ& q, const rdf::Graph& g, const exec::ExecOptions& opts) {
  UnionPlan plan = compileUnionPlan(q, *g.dictionary(), opts.partitions);
  mr::Registry registry = exec::sourceRegistry(g);
  return executeUnionPlan(plan, registry, *g.dictionary(), opts);
}

}  // namespace tgq::relational
