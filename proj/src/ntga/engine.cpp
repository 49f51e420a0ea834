#include "tgq/ntga/engine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "tgq/exec/star_match.hpp"

namespace tgq::ntga {

namespace {

const std::string kGroupJob = "ntga.group";

struct Shared {
  std::shared_ptr<const exec::BoundQuery> bound;
  DisjunctiveStarFilter filter;
  LoadFilter loadFilter;
  std::vector<std::vector<std::uint32_t>> starTags;
  std::map<std::uint32_t, std::vector<size_t>> singleStarBranches;  // tag -> branches
  std::set<std::uint32_t> joinTags;
};

struct ClassState {
  JoinClass cls;
  std::map<size_t, size_t> byBranch;  // branch -> index into cls.joins
};

void emitSlot(mr::MapContext& ctx, const TripleGroup& g, const JoinSlot& slot, bool cross,
              const mr::Record& value) {
  if (cross) {
    ctx.emit({}, value);
    return;
  }
  for (TermId v : slotValues(g, slot)) ctx.emit({v}, value);
}

mr::Job groupJob(std::shared_ptr<const Shared> sh, std::uint32_t partitions) {
  mr::Job job;
  job.id = kGroupJob;
  job.inputs = {exec::kSourceDataset};
  job.partitions = partitions;
  job.map = [sh](const mr::Record& r, mr::MapContext& ctx) {
    const auto& t = std::get<IdTriple>(r);
    if (sh->loadFilter.keep(t)) ctx.emit({t.s}, t);
  };
  job.reduce = [sh](const mr::Key& key, std::span<const mr::Record> values, mr::ReduceContext& out) {
    std::vector<IdTriple> triples;
    triples.reserve(values.size());
    for (const auto& v : values) triples.push_back(std::get<IdTriple>(v));
    std::vector<TripleGroup> one;
    one.push_back(makeTripleGroup(key[0], std::move(triples)));
    auto kept = tgGroupFilter(std::move(one), sh->filter);
    if (kept.empty()) return;
    TripleGroup& g = kept.front();
    bool forJoins = false;
    for (std::uint32_t tag : g.matchTags) {
      if (sh->joinTags.count(tag)) forJoins = true;
      auto it = sh->singleStarBranches.find(tag);
      if (it == sh->singleStarBranches.end()) continue;
      for (size_t b : it->second) {
        const auto& branch = sh->bound->branches[b];
        std::vector<TermId> binding(branch.numVars(), rdf::kNoTerm);
        exec::matchStar(branch.stars[0], g.subject, g.triples, binding,
                        [&](std::vector<TermId>& full) { out.write(exec::projectRow(*sh->bound, b, full)); });
      }
    }
    if (forJoins) out.write(mr::TaggedGroup{std::make_shared<const TripleGroup>(std::move(g))});
  };
  return job;
}

mr::Job joinJob(std::shared_ptr<const Shared> sh, std::shared_ptr<const ClassState> cs,
                std::vector<std::string> inputs, std::uint32_t partitions) {
  mr::Job job;
  job.id = cs->cls.jobId;
  job.inputs = std::move(inputs);
  job.partitions = partitions;
  const bool cross = cs->cls.kind == "cross";
  job.map = [sh, cs, cross](const mr::Record& r, mr::MapContext& ctx) {
    const JoinClass& c = cs->cls;
    if (const auto* tg = std::get_if<mr::TaggedGroup>(&r)) {
      const TripleGroup& g = *tg->group;
      if (c.round == 1) {
        for (const auto& bj : c.joins) {
          if (!g.hasTag(sh->starTags[bj.branch][bj.leftStar])) continue;
          mr::PartialMatch pm;
          pm.branch = static_cast<std::uint32_t>(bj.branch);
          pm.nested.root = tg->group;
          pm.nested.rootStar = bj.leftStar;
          emitSlot(ctx, g, bj.leftSlot, cross, pm);
        }
      }
      if (g.hasTag(c.rightTag)) emitSlot(ctx, g, c.rightSlot, cross, r);
    } else if (const auto* pm = std::get_if<mr::PartialMatch>(&r)) {
      auto it = cs->byBranch.find(pm->branch);
      if (it == cs->byBranch.end()) return;
      const BranchJoin& bj = c.joins[it->second];
      const TripleGroup* g = pm->nested.groupFor(bj.leftStar);
      if (!g) throw std::logic_error("partial match lacks the joining star");
      emitSlot(ctx, *g, bj.leftSlot, cross, r);
    }
  };
  job.reduce = [sh, cs, cross](const mr::Key& key, std::span<const mr::Record> values,
                               mr::ReduceContext& out) {
    const JoinClass& c = cs->cls;
    std::vector<const mr::PartialMatch*> left;
    std::vector<const mr::TaggedGroup*> right;
    for (const auto& v : values) {
      if (const auto* pm = std::get_if<mr::PartialMatch>(&v))
        left.push_back(pm);
      else if (const auto* tg = std::get_if<mr::TaggedGroup>(&v))
        right.push_back(tg);
    }
    if (left.empty() || right.empty()) return;
    const TermId joinTerm = cross ? rdf::kNoTerm : key[0];
    for (const auto* pm : left) {
      const BranchJoin& bj = c.joins[cs->byBranch.at(pm->branch)];
      const auto& branch = sh->bound->branches[bj.branch];
      TermId prop = bj.leftSlot.subject ? c.rightSlot.property : bj.leftSlot.property;
      for (const auto* tg : right) {
        NestedTripleGroup n = pm->nested;
        n.children.push_back({bj.rightStar, prop, joinTerm, tg->group});
        if (bj.last) {
          for (const auto& binding : flatten(n, branch))
            out.write(exec::projectRow(*sh->bound, bj.branch, binding));
        } else {
          out.write(mr::PartialMatch{pm->branch, std::move(n)});
        }
      }
    }
  };
  return job;
}

JoinSlot slotFor(const query::StarPattern& star, const std::string& var, const rdf::Dictionary& dict,
                 std::string& label) {
  JoinSlot s;
  if (query::isVariable(star.subject) && query::asVariable(star.subject).name == var) {
    label = "subject";
    return s;
  }
  const rdf::Term* p = exec::objectPropertyOf(star, var);
  if (!p) throw std::logic_error("join variable ?" + var + " not in star");
  s.subject = false;
  s.property = dict.lookup(*p);
  label = p->toNTriples();
  return s;
}

}  // namespace

NtgaPlan compileNtga(const query::UCQ& q, const rdf::Dictionary& dict, std::uint32_t partitions) {
  NtgaPlan plan;
  auto bound = std::make_shared<exec::BoundQuery>(exec::bindQuery(q, dict));
  plan.bound = bound;
  auto sh = std::make_shared<Shared>();
  sh->bound = bound;

  std::map<std::string, std::uint32_t> tagOf;
  std::vector<exec::BoundStar> allStars;
  for (size_t b = 0; b < q.branches.size(); ++b) {
    const auto& gp = q.branches[b];
    if (gp.stars.empty()) throw query::UnsupportedConstruct("branch without triple patterns");
    std::vector<std::uint32_t> tags;
    for (size_t s = 0; s < gp.stars.size(); ++s) {
      std::string sig = exec::starSignature(gp.stars[s]);
      auto [it, inserted] = tagOf.emplace(sig, static_cast<std::uint32_t>(tagOf.size()));
      if (inserted) {
        plan.tagSignatures.push_back(sig);
        plan.filter.alternatives.push_back(alternativeOf(bound->branches[b].stars[s], it->second));
      }
      tags.push_back(it->second);
      allStars.push_back(bound->branches[b].stars[s]);
      if (gp.stars.size() > 1) sh->joinTags.insert(it->second);
    }
    if (gp.stars.size() == 1) sh->singleStarBranches[tags[0]].push_back(b);
    plan.starTags.push_back(std::move(tags));
  }
  plan.loadFilter = makeLoadFilter(allStars);
  sh->filter = plan.filter;
  sh->loadFilter = plan.loadFilter;
  sh->starTags = plan.starTags;

  // Classes keyed by (round, kind, right tag, right slot label).
  using ClassKey = std::tuple<size_t, std::string, std::uint32_t, std::string>;
  std::map<ClassKey, JoinClass> classes;
  for (size_t b = 0; b < q.branches.size(); ++b) {
    const auto& gp = q.branches[b];
    const auto& bb = bound->branches[b];
    for (size_t r = 1; r < bb.joinOrder.size(); ++r) {
      const exec::JoinStep& step = bb.joinOrder[r];
      BranchJoin bj;
      bj.branch = b;
      bj.rightStar = static_cast<std::uint32_t>(step.star);
      bj.last = r + 1 == bb.joinOrder.size();
      std::string kind = "cross", rightLabel = "-", leftLabel;
      JoinSlot rightSlot;
      bj.leftStar = static_cast<std::uint32_t>(bb.joinOrder[0].star);
      if (step.keyVar >= 0) {
        const std::string& var = bb.varNames[step.keyVar];
        for (size_t k = 0; k < r; ++k) {
          const auto& placed = gp.stars[bb.joinOrder[k].star];
          bool has = (query::isVariable(placed.subject) && query::asVariable(placed.subject).name == var) ||
                     exec::objectPropertyOf(placed, var);
          if (has) {
            bj.leftStar = static_cast<std::uint32_t>(bb.joinOrder[k].star);
            break;
          }
        }
        bj.leftSlot = slotFor(gp.stars[bj.leftStar], var, dict, leftLabel);
        rightSlot = slotFor(gp.stars[step.star], var, dict, rightLabel);
        kind = (rightSlot.subject || bj.leftSlot.subject) ? "S-O" : "O-O";
      }
      ClassKey key{r, kind, plan.starTags[b][step.star], rightLabel};
      JoinClass& c = classes[key];
      c.round = r;
      c.kind = kind;
      c.rightTag = plan.starTags[b][step.star];
      c.rightSlot = rightSlot;
      c.joins.push_back(bj);
    }
  }

  plan.workflow.jobs.push_back(groupJob(sh, partitions));
  plan.workflow.outputs.push_back(kGroupJob);
  std::map<size_t, std::string> lastHandle;
  size_t counter = 0;
  for (auto& [key, c] : classes) {
    c.jobId = "ntga.join.r" + std::to_string(c.round) + "." + std::to_string(counter++);
    auto cs = std::make_shared<ClassState>();
    cs->cls = c;
    std::vector<std::string> inputs{kGroupJob};
    for (size_t i = 0; i < c.joins.size(); ++i) {
      cs->byBranch[c.joins[i].branch] = i;
      if (c.round > 1) {
        const std::string& prev = lastHandle.at(c.joins[i].branch);
        if (std::find(inputs.begin(), inputs.end(), prev) == inputs.end()) inputs.push_back(prev);
      }
    }
    for (const auto& bj : c.joins) lastHandle[bj.branch] = c.jobId;
    plan.workflow.jobs.push_back(joinJob(sh, cs, std::move(inputs), partitions));
    plan.workflow.outputs.push_back(c.jobId);
    plan.classes.push_back(c);
  }
  return plan;
}

exec::EngineResult executeNtga(const NtgaPlan& plan, mr::Registry& registry, const rdf::Dictionary& dict,
                               const exec::ExecOptions& opts) {
  auto run = mr::runWorkflow(plan.workflow, registry, {opts.threads});
  return {exec::collectSolutions(*plan.bound, run.output, dict), std::move(run.stats)};
}

exec::EngineResult executeNtga(const query::UCQ& q, const rdf::Graph& g, const exec::ExecOptions& opts) {
  NtgaPlan plan = compileNtga(q, *g.dictionary(), opts.partitions);
  mr::Registry registry = exec::sourceRegistry(g);
  return executeNtga(plan, registry, *g.dictionary(), opts);
}

}  // namespace tgq::ntga
