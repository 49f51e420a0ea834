#include "tgq/relational/mqo_plan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tgq/exec/star_match.hpp"
#include "tgq/query/stars.hpp"

namespace tgq::relational {

using query::TriplePattern;
using rdf::IdTriple;
using rdf::TermId;

query::UCQ unionFromOptionalForm(const query::UCQ& q) {
  query::UCQ out;
  out.projection = q.projection;
  for (const auto& b : q.branches) {
    if (b.optionals.empty()) {
      out.branches.push_back(b);
      continue;
    }
    for (const auto& opt : b.optionals) {
      std::vector<TriplePattern> patterns = b.patterns;
      patterns.insert(patterns.end(), opt.begin(), opt.end());
      query::GraphPattern gp = query::decomposeStars(std::move(patterns), out.branches.size());
      gp.constants = b.constants;
      out.branches.push_back(std::move(gp));
    }
  }
  return out;
}

namespace {

std::string canonicalText(std::vector<TriplePattern> ps) {
  std::sort(ps.begin(), ps.end());
  std::string s;
  for (const auto& p : ps) s += p.toString() + " ";
  return s;
}

std::string residualShape(const std::vector<TriplePattern>& ps) {
  std::set<std::string> parts;
  for (const auto& p : ps) parts.insert(query::toString(p.p) + (query::isVariable(p.o) ? "|v" : "|g"));
  std::string s;
  for (const auto& p : parts) s += p + ";";
  return s;
}

}  // namespace

namespace {

// Pattern with the star subject variable masked.
std::string patternKey(const TriplePattern& tp) {
  auto side = [&](const query::PatternTerm& t) {
    return t == tp.s && query::isVariable(t) ? std::string("$S") : query::toString(t);
  };
  return side(tp.s) + " " + query::toString(tp.p) + " " + side(tp.o);
}

std::set<std::string> starKeys(const query::StarPattern& s) {
  std::set<std::string> keys;
  for (const auto& tp : s.patterns) keys.insert(patternKey(tp));
  return keys;
}

query::PatternTerm renamed(const query::PatternTerm& t, const std::map<std::string, std::string>& m) {
  if (!query::isVariable(t)) return t;
  auto it = m.find(query::asVariable(t).name);
  return it == m.end() ? t : query::PatternTerm(query::Variable{it->second});
}

}  // namespace

std::variant<MqoPlan, NotApplicable> buildMqoPlan(const query::UCQ& input) {
  query::UCQ q = unionFromOptionalForm(input);
  if (q.branches.empty()) return NotApplicable{"query has no branches"};

  std::set<std::string> bestKeys;
  std::vector<size_t> bestChoice;
  size_t bestStar = 0;
  std::string bestText;
  for (size_t s0 = 0; s0 < q.branches[0].stars.size(); ++s0) {
    std::set<std::string> common = starKeys(q.branches[0].stars[s0]);
    std::vector<size_t> choice{s0};
    for (size_t b = 1; b < q.branches.size() && !common.empty(); ++b) {
      std::set<std::string> best;
      size_t pick = 0;
      for (size_t s = 0; s < q.branches[b].stars.size(); ++s) {
        std::set<std::string> keys = starKeys(q.branches[b].stars[s]), inter;
        std::set_intersection(common.begin(), common.end(), keys.begin(), keys.end(),
                              std::inserter(inter, inter.end()));
        if (inter.size() > best.size()) {
          best = std::move(inter);
          pick = s;
        }
      }
      common = std::move(best);
      choice.push_back(pick);
    }
    if (common.empty()) continue;
    std::vector<TriplePattern> ps;
    for (const auto& tp : q.branches[0].stars[s0].patterns)
      if (common.count(patternKey(tp))) ps.push_back(tp);
    std::string text = canonicalText(ps);
    if (bestKeys.empty() || common.size() > bestKeys.size() ||
        (common.size() == bestKeys.size() && text < bestText)) {
      bestKeys = common;
      bestChoice = choice;
      bestStar = s0;
      bestText = text;
    }
  }
  if (bestKeys.empty()) return NotApplicable{"no common star subpattern across branches"};

  MqoPlan plan;
  plan.query = q;
  for (const auto& tp : q.branches[0].stars[bestStar].patterns)
    if (bestKeys.count(patternKey(tp))) plan.rootPattern.push_back(tp);
  const auto& rootSubject = q.branches[0].stars[bestStar].subject;
  std::set<TriplePattern> root(plan.rootPattern.begin(), plan.rootPattern.end());
  auto rootVars = query::variablesOf(plan.rootPattern);
  std::map<std::pair<std::string, std::string>, size_t> groupIndex;
  for (size_t b = 0; b < q.branches.size(); ++b) {
    const auto& gp = q.branches[b];
    std::map<std::string, std::string> m;
    const auto& subject = gp.stars[bestChoice[b]].subject;
    if (query::isVariable(subject) && subject != rootSubject) {
      const std::string& from = query::asVariable(subject).name;
      const std::string& to = query::asVariable(rootSubject).name;
      m[from] = to;
      auto vars = query::variablesOf(gp.patterns);
      if (std::find(vars.begin(), vars.end(), to) != vars.end()) m[to] = "_mqo" + std::to_string(b) + "_" + to;
    }
    plan.renaming.push_back(m);
    std::vector<TriplePattern> residual;
    for (const auto& tp0 : gp.patterns) {
      TriplePattern tp{renamed(tp0.s, m), tp0.p, renamed(tp0.o, m)};
      if (!root.count(tp) && std::find(residual.begin(), residual.end(), tp) == residual.end())
        residual.push_back(tp);
    }
    plan.optionalBranches.push_back(residual);
    if (residual.empty()) continue;
    const auto& rs = residual.front().s;
    bool oneStar = std::all_of(residual.begin(), residual.end(), [&](const TriplePattern& tp) { return tp.s == rs; });
    if (!oneStar || !query::isVariable(rs) ||
        std::find(rootVars.begin(), rootVars.end(), query::asVariable(rs).name) == rootVars.end())
      return NotApplicable{"residual of branch " + std::to_string(b) + " is not a single star attached to the root"};
    std::pair<std::string, std::string> key{query::asVariable(rs).name, residualShape(residual)};
    auto [it, inserted] = groupIndex.emplace(key, plan.groups.size());
    if (inserted) plan.groups.push_back({key.first, key.second, {}});
    plan.groups[it->second].branches.push_back(b);
  }
  return plan;
}

namespace {

struct Layout {
  size_t width = 0;
  std::map<std::string, int> rootCols;
  std::vector<std::map<std::string, int>> branchCols;  // non-root variables
  std::vector<int> marker;                              // -1 for an empty residual
  exec::BoundStar root;
  std::vector<exec::BoundStar> residual;  // valid where marker >= 0
  std::vector<std::vector<int>> branchVarCol;  // per branch: BoundBranch var -> column
};

exec::BoundStar bindStar(const std::vector<TriplePattern>& ps, const rdf::Dictionary& dict,
                         const std::function<int(const std::string&)>& column) {
  query::UCQ one;
  one.branches.push_back(query::decomposeStars(ps));
  exec::BoundQuery bq = exec::bindQuery(one, dict);
  const auto& bb = bq.branches.at(0);
  if (bb.stars.size() != 1) throw std::logic_error("expected a single star");
  exec::BoundStar s = bb.stars[0];
  auto remap = [&](int v) { return v < 0 ? v : column(bb.varNames[v]); };
  s.subjectVar = remap(s.subjectVar);
  for (auto& p : s.patterns) {
    p.sVar = remap(p.sVar);
    p.oVar = remap(p.oVar);
  }
  return s;
}

bool scanKeeps(const exec::BoundStar& star, const IdTriple& t) {
  if (star.subjectVar < 0 && t.s != star.subject) return false;
  if (!std::binary_search(star.requiredProperties.begin(), star.requiredProperties.end(), t.p)) return false;
  for (const auto& [p, objs] : star.groundObjects)
    if (p == t.p) return std::binary_search(objs.begin(), objs.end(), t.o);
  return true;
}

constexpr TermId kMatched = 0;

}  // namespace

CompiledMqo compileMqoPlan(const MqoPlan& plan, const rdf::Dictionary& dict, std::uint32_t partitions) {
  auto bq = std::make_shared<exec::BoundQuery>(exec::bindQuery(plan.query, dict));
  auto lay = std::make_shared<Layout>();
  for (const auto& v : query::variablesOf(plan.rootPattern)) lay->rootCols[v] = static_cast<int>(lay->width++);
  lay->root = bindStar(plan.rootPattern, dict, [&](const std::string& n) { return lay->rootCols.at(n); });
  const size_t k = plan.optionalBranches.size();
  lay->branchCols.resize(k);
  lay->marker.assign(k, -1);
  lay->residual.resize(k);
  for (size_t b = 0; b < k; ++b) {
    const auto& res = plan.optionalBranches[b];
    if (res.empty()) continue;
    for (const auto& v : query::variablesOf(res))
      if (!lay->rootCols.count(v)) lay->branchCols[b][v] = static_cast<int>(lay->width++);
    lay->marker[b] = static_cast<int>(lay->width++);
    lay->residual[b] = bindStar(res, dict, [&](const std::string& n) {
      auto it = lay->rootCols.find(n);
      return it != lay->rootCols.end() ? it->second : lay->branchCols[b].at(n);
    });
  }
  for (size_t b = 0; b < k; ++b) {
    std::vector<int> cols;
    for (const auto& original : bq->branches[b].varNames) {
      auto rn = plan.renaming[b].find(original);
      const std::string& name = rn == plan.renaming[b].end() ? original : rn->second;
      auto it = lay->rootCols.find(name);
      cols.push_back(it != lay->rootCols.end() ? it->second : lay->branchCols[b].at(name));
    }
    lay->branchVarCol.push_back(std::move(cols));
  }

  CompiledMqo out;
  out.bound = bq;
  const std::string rootJob = "mqo.root";
  auto residualKeeps = [lay](const IdTriple& t, const std::vector<size_t>* only) {
    if (only) {
      for (size_t b : *only)
        if (scanKeeps(lay->residual[b], t)) return true;
      return false;
    }
    for (size_t b = 0; b < lay->residual.size(); ++b)
      if (lay->marker[b] >= 0 && scanKeeps(lay->residual[b], t)) return true;
    return false;
  };

  mr::Job job1;
  job1.id = rootJob;
  job1.inputs = {exec::kSourceDataset};
  job1.partitions = partitions;
  job1.map = [lay, residualKeeps](const mr::Record& r, mr::MapContext& ctx) {
    const auto& t = std::get<IdTriple>(r);
    if (scanKeeps(lay->root, t) || residualKeeps(t, nullptr)) ctx.emit({t.s}, t);
  };
  job1.reduce = [lay, residualKeeps](const mr::Key& key, std::span<const mr::Record> values,
                                     mr::ReduceContext& out) {
    std::vector<IdTriple> triples;
    for (const auto& v : values) triples.push_back(std::get<IdTriple>(v));
    std::sort(triples.begin(), triples.end());
    std::vector<IdTriple> rootTriples;
    for (const auto& t : triples) {
      if (scanKeeps(lay->root, t)) rootTriples.push_back(t);
      if (residualKeeps(t, nullptr)) out.write(t);
    }
    std::vector<TermId> binding(lay->width, rdf::kNoTerm);
    exec::matchStar(lay->root, key[0], rootTriples, binding,
                    [&](std::vector<TermId>& full) { out.write(mr::Row{0, full}); });
  };
  out.workflow.jobs.push_back(std::move(job1));

  // Each optional job joins root rows with one group's residual stars; a
  // branch match sets only that branch's marker, so branches never multiply.
  std::vector<std::string> filterInputs{rootJob};
  for (size_t gi = 0; gi < plan.groups.size(); ++gi) {
    auto group = std::make_shared<const OptionalGroup>(plan.groups[gi]);
    const int joinCol = lay->rootCols.at(group->joinVariable);
    mr::Job job;
    job.id = "mqo.optional" + std::to_string(gi);
    job.inputs = {rootJob};
    job.partitions = partitions;
    job.map = [group, joinCol, residualKeeps](const mr::Record& r, mr::MapContext& ctx) {
      if (const auto* row = std::get_if<mr::Row>(&r)) {
        ctx.emit({row->values[joinCol]}, r);
      } else if (const auto* t = std::get_if<IdTriple>(&r)) {
        if (residualKeeps(*t, &group->branches)) ctx.emit({t->s}, r);
      }
    };
    job.reduce = [lay, group](const mr::Key& key, std::span<const mr::Record> values, mr::ReduceContext& out) {
      std::vector<const mr::Row*> rows;
      std::vector<IdTriple> triples;
      for (const auto& v : values) {
        if (const auto* row = std::get_if<mr::Row>(&v))
          rows.push_back(row);
        else
          triples.push_back(std::get<IdTriple>(v));
      }
      if (triples.empty()) return;
      std::sort(triples.begin(), triples.end());
      for (const auto* row : rows) {
        for (size_t b : group->branches) {
          std::vector<TermId> a = row->values;
          exec::matchStar(lay->residual[b], key[0], triples, a, [&](std::vector<TermId>& full) {
            mr::Row hit{0, full};
            hit.values[lay->marker[b]] = kMatched;
            out.write(std::move(hit));
          });
        }
      }
    };
    out.workflow.jobs.push_back(std::move(job));
    filterInputs.push_back(out.workflow.jobs.back().id);
  }

  mr::Job filter;
  filter.id = "mqo.filter";
  filter.inputs = filterInputs;
  filter.partitions = partitions;
  filter.map = [lay, bq](const mr::Record& r, mr::MapContext& ctx) {
    const auto* row = std::get_if<mr::Row>(&r);
    if (!row) return;
    // Unmarked rows come from the root job and serve branches with no residual.
    bool marked = false;
    for (int m : lay->marker)
      if (m >= 0 && row->values[m] != rdf::kNoTerm) marked = true;
    for (size_t b = 0; b < lay->marker.size(); ++b) {
      const int m = lay->marker[b];
      if (marked ? (m < 0 || row->values[m] == rdf::kNoTerm) : m >= 0) continue;
      const auto& cols = lay->branchVarCol[b];
      std::vector<TermId> binding(cols.size());
      for (size_t i = 0; i < cols.size(); ++i) binding[i] = row->values[cols[i]];
      ctx.write(exec::projectRow(*bq, b, binding));
    }
  };
  out.workflow.jobs.push_back(std::move(filter));
  return out;
}

exec::EngineResult executeMqoPlan(const CompiledMqo& compiled, mr::Registry& registry,
                                  const rdf::Dictionary& dict, const exec::ExecOptions& opts) {
  auto run = mr::runWorkflow(compiled.workflow, registry, {opts.threads});
  return {exec::collectSolutions(*compiled.bound, run.output, dict), std::move(run.stats)};
}

exec::EngineResult executeMqoPlan(const MqoPlan& plan, const rdf::Graph& g, const exec::ExecOptions& opts) {
  CompiledMqo compiled = compileMqoPlan(plan, *g.dictionary(), opts.partitions);
  mr::Registry registry = exec::sourceRegistry(g);
  return executeMqoPlan(compiled, registry, *g.dictionary(), opts);
}

}  // namespace tgq::relational
