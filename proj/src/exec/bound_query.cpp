#include "tgq/exec/bound_query.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tgq::exec {

using query::PatternTerm;

int BoundBranch::varIndex(const std::string& name) const {
  auto it = std::find(varNames.begin(), varNames.end(), name);
  return it == varNames.end() ? -1 : static_cast<int>(it - varNames.begin());
}

namespace {

class Binder {
 public:
  Binder(const rdf::Dictionary& dict, BoundBranch& out) : dict_(dict), out_(out) {}

  // Returns the variable index, or -1 with `id` set for ground terms.
  int bind(const PatternTerm& t, TermId& id) {
    if (query::isVariable(t)) {
      const std::string& name = query::asVariable(t).name;
      int v = out_.varIndex(name);
      if (v < 0) {
        out_.varNames.push_back(name);
        v = static_cast<int>(out_.varNames.size() - 1);
      }
      id = rdf::kNoTerm;
      return v;
    }
    id = dict_.lookup(query::asTerm(t));
    return -1;
  }

 private:
  const rdf::Dictionary& dict_;
  BoundBranch& out_;
};

std::vector<int> starVars(const BoundStar& s) {
  std::vector<int> vars;
  auto push = [&](int v) {
    if (v >= 0 && std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  };
  push(s.subjectVar);
  for (const auto& p : s.patterns) push(p.oVar);
  return vars;
}

void planJoins(BoundBranch& b) {
  const size_t n = b.stars.size();
  if (n == 0) return;
  std::vector<std::vector<int>> vars(n);
  for (size_t i = 0; i < n; ++i) vars[i] = starVars(b.stars[i]);

  std::vector<bool> placed(n, false);
  std::vector<int> placedVars;
  auto place = [&](size_t s) {
    placed[s] = true;
    for (int v : vars[s])
      if (std::find(placedVars.begin(), placedVars.end(), v) == placedVars.end())
        placedVars.push_back(v);
  };
  b.joinOrder.push_back(JoinStep{0, -1, false, {}});
  place(0);
  for (size_t step = 1; step < n; ++step) {
    size_t pick = n;
    std::vector<int> shared;
    for (size_t s = 0; s < n && pick == n; ++s) {
      if (placed[s]) continue;
      for (int v : vars[s])
        if (std::find(placedVars.begin(), placedVars.end(), v) != placedVars.end())
          shared.push_back(v);
      if (!shared.empty()) pick = s;
    }
    JoinStep js;
    if (pick == n) {
      for (size_t s = 0; s < n; ++s)
        if (!placed[s]) {
          pick = s;
          break;
        }
    } else {
      js.keyVar = shared.front();
      js.keyIsSubject = b.stars[pick].subjectVar == js.keyVar;
      js.checkVars.assign(shared.begin() + 1, shared.end());
    }
    js.star = pick;
    b.joinOrder.push_back(js);
    place(pick);
  }
}

}  // namespace

BoundQuery bindQuery(const query::UCQ& q, const rdf::Dictionary& dict) {
  BoundQuery out;
  for (const auto& v : q.projection) out.projection.push_back(v.name);
  for (const auto& gp : q.branches) {
    BoundBranch b;
    Binder binder(dict, b);
    for (const auto& star : gp.stars) {
      BoundStar bs;
      bs.subjectVar = binder.bind(star.subject, bs.subject);
      std::map<TermId, std::vector<TermId>> ground;
      std::set<TermId> variableObject;
      for (const auto& tp : star.patterns) {
        BoundPattern p;
        p.sVar = bs.subjectVar;
        p.s = bs.subject;
        if (query::isVariable(tp.p))
          throw query::UnsupportedConstruct("variable in property position");
        p.p = dict.lookup(query::asTerm(tp.p));
        p.oVar = binder.bind(tp.o, p.o);
        bs.patterns.push_back(p);
        bs.requiredProperties.push_back(p.p);
        if (p.oVar < 0)
          ground[p.p].push_back(p.o);
        else
          variableObject.insert(p.p);
      }
      std::sort(bs.requiredProperties.begin(), bs.requiredProperties.end());
      bs.requiredProperties.erase(
          std::unique(bs.requiredProperties.begin(), bs.requiredProperties.end()),
          bs.requiredProperties.end());
      for (auto& [prop, objs] : ground) {
        if (variableObject.count(prop)) continue;
        std::sort(objs.begin(), objs.end());
        objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
        bs.groundObjects.emplace_back(prop, objs);
      }
      b.stars.push_back(std::move(bs));
    }
    for (const auto& e : gp.joinEdges) b.edges.push_back({e.starA, e.starB, b.varIndex(e.variable), e.kind});
    planJoins(b);
    for (const auto& name : out.projection) {
      int v = b.varIndex(name);
      if (v >= 0)
        b.projection.emplace_back(v);
      else if (auto it = gp.constants.find(name); it != gp.constants.end())
        b.projection.emplace_back(it->second);
      else
        b.projection.emplace_back(std::monostate{});
    }
    out.branches.push_back(std::move(b));
  }
  return out;
}

mr::Row projectRow(const BoundQuery& q, size_t branch, const std::vector<TermId>& binding) {
  const BoundBranch& b = q.branches[branch];
  mr::Row row;
  row.tag = static_cast<std::uint32_t>(branch);
  row.values.reserve(b.projection.size());
  for (const auto& e : b.projection) {
    if (const int* v = std::get_if<int>(&e))
      row.values.push_back(binding[*v]);
    else
      row.values.push_back(rdf::kNoTerm);
  }
  return row;
}

}  // namespace tgq::exec
