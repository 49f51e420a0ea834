#include "tgq/ntga/operators.hpp"

#include <algorithm>
#include <unordered_map>

#include "tgq/exec/star_match.hpp"

namespace tgq::ntga {

TripleGroup makeTripleGroup(TermId subject, std::vector<IdTriple> triples) {
  TripleGroup g;
  g.subject = subject;
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  for (const auto& t : triples) {
    if (t.s != subject) throw std::invalid_argument("triple subject differs from the group subject");
    if (g.tgType.empty() || g.tgType.back() != t.p) g.tgType.push_back(t.p);
  }
  g.triples = std::move(triples);
  return g;
}

StarAlternative alternativeOf(const exec::BoundStar& star, std::uint32_t tag) {
  StarAlternative a;
  a.tag = tag;
  a.requiredProperties = star.requiredProperties;
  a.groundObjects = star.groundObjects;
  a.hasGroundSubject = star.subjectVar < 0;
  a.groundSubject = a.hasGroundSubject ? star.subject : rdf::kNoTerm;
  return a;
}

bool DisjunctiveStarFilter::satisfies(const TripleGroup& g, const StarAlternative& alt) const {
  if (alt.hasGroundSubject && g.subject != alt.groundSubject) return false;
  if (!std::includes(g.tgType.begin(), g.tgType.end(), alt.requiredProperties.begin(),
                     alt.requiredProperties.end()))
    return false;
  for (const auto& [p, objects] : alt.groundObjects) {
    auto [lo, hi] = g.triplesOf(p);
    for (TermId o : objects)
      if (std::none_of(lo, hi, [&](const IdTriple& t) { return t.o == o; })) return false;
  }
  return true;
}

bool LoadFilter::keep(const IdTriple& t) const {
  if (!relevantProperties.count(t.p)) return false;
  if (auto it = allowedObjects.find(t.p); it != allowedObjects.end() && !it->second.count(t.o))
    return false;
  if (auto it = allowedSubjects.find(t.p); it != allowedSubjects.end() && !it->second.count(t.s))
    return false;
  return true;
}

LoadFilter makeLoadFilter(const std::vector<exec::BoundStar>& stars) {
  LoadFilter f;
  std::set<TermId> openObject, openSubject;
  std::map<TermId, std::set<TermId>> objects, subjects;
  for (const auto& star : stars) {
    for (const auto& p : star.patterns) {
      f.relevantProperties.insert(p.p);
      if (p.oVar < 0)
        objects[p.p].insert(p.o);
      else
        openObject.insert(p.p);
      if (p.sVar < 0)
        subjects[p.p].insert(p.s);
      else
        openSubject.insert(p.p);
    }
  }
  for (auto& [p, set] : objects)
    if (!openObject.count(p)) f.allowedObjects[p] = std::move(set);
  for (auto& [p, set] : subjects)
    if (!openSubject.count(p)) f.allowedSubjects[p] = std::move(set);
  return f;
}

std::vector<IdTriple> tgLoadFilter(std::span<const IdTriple> triples, const LoadFilter& filter) {
  std::vector<IdTriple> out;
  for (const auto& t : triples)
    if (filter.keep(t)) out.push_back(t);
  return out;
}

std::vector<TripleGroup> tgGroupBy(std::span<const IdTriple> triples) {
  std::vector<IdTriple> sorted(triples.begin(), triples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<TripleGroup> out;
  for (size_t i = 0; i < sorted.size();) {
    size_t j = i;
    while (j < sorted.size() && sorted[j].s == sorted[i].s) ++j;
    out.push_back(makeTripleGroup(sorted[i].s, {sorted.begin() + i, sorted.begin() + j}));
    i = j;
  }
  return out;
}

std::vector<TripleGroup> tgGroupFilter(std::vector<TripleGroup> groups, const DisjunctiveStarFilter& f) {
  std::vector<TripleGroup> out;
  for (auto& g : groups) {
    g.matchTags.clear();
    for (const auto& alt : f.alternatives)
      if (f.satisfies(g, alt)) g.matchTags.push_back(alt.tag);
    std::sort(g.matchTags.begin(), g.matchTags.end());
    g.matchTags.erase(std::unique(g.matchTags.begin(), g.matchTags.end()), g.matchTags.end());
    if (!g.matchTags.empty()) out.push_back(std::move(g));
  }
  return out;
}

std::vector<TermId> slotValues(const TripleGroup& g, const JoinSlot& slot) {
  if (slot.subject) return {g.subject};
  std::vector<TermId> out;
  auto [lo, hi] = g.triplesOf(slot.property);
  for (auto it = lo; it != hi; ++it) out.push_back(it->o);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void joinOne(std::span<const TripleGroup> left, std::span<const TripleGroup> right,
             const JoinSpec& spec, size_t specIndex, std::vector<UJoinResult>& out) {
  std::unordered_map<TermId, std::vector<TripleGroupPtr>> index;
  for (const auto& r : right) {
    if (!r.hasTag(spec.rightTag)) continue;
    auto ptr = std::make_shared<const TripleGroup>(r);
    for (TermId v : slotValues(r, spec.rightSlot)) index[v].push_back(ptr);
  }
  for (const auto& l : left) {
    if (!l.hasTag(spec.leftTag)) continue;
    auto lptr = std::make_shared<const TripleGroup>(l);
    for (TermId v : slotValues(l, spec.leftSlot)) {
      auto it = index.find(v);
      if (it == index.end()) continue;
      for (const auto& r : it->second) {
        NestedTripleGroup n;
        n.root = lptr;
        n.rootStar = spec.leftStar;
        TermId prop = spec.leftSlot.subject ? spec.rightSlot.property : spec.leftSlot.property;
        n.children.push_back({spec.rightStar, prop, v, r});
        out.push_back({specIndex, std::move(n)});
      }
    }
  }
}

}  // namespace

std::vector<NestedTripleGroup> tgJoin(std::span<const TripleGroup> left,
                                      std::span<const TripleGroup> right, const JoinSpec& spec) {
  std::vector<UJoinResult> tmp;
  joinOne(left, right, spec, 0, tmp);
  std::vector<NestedTripleGroup> out;
  for (auto& r : tmp) out.push_back(std::move(r.nested));
  return out;
}

std::vector<UJoinResult> tgUJoin(std::span<const TripleGroup> left, std::span<const TripleGroup> right,
                                 std::span<const JoinSpec> specs) {
  if (specs.empty()) return {};
  for (const auto& s : specs) {
    if (s.leftSlot.subject != specs[0].leftSlot.subject ||
        s.rightSlot.subject != specs[0].rightSlot.subject)
      throw IncompatibleGrouping("grouped joins disagree on the join variable position");
  }
  std::vector<UJoinResult> out;
  for (size_t i = 0; i < specs.size(); ++i) joinOne(left, right, specs[i], i, out);
  return out;
}

std::vector<std::vector<TermId>> flatten(const NestedTripleGroup& ntg, const exec::BoundBranch& branch) {
  std::vector<std::vector<TermId>> out;
  std::vector<const TripleGroup*> groups;
  for (const auto& step : branch.joinOrder) {
    const TripleGroup* g = ntg.groupFor(static_cast<std::uint32_t>(step.star));
    if (!g) return out;
    groups.push_back(g);
  }
  std::vector<TermId> binding(branch.numVars(), rdf::kNoTerm);
  std::function<void(size_t)> step = [&](size_t i) {
    if (i == groups.size()) {
      out.push_back(binding);
      return;
    }
    const TripleGroup& g = *groups[i];
    exec::matchStar(branch.stars[branch.joinOrder[i].star], g.subject, g.triples, binding,
                    [&](std::vector<TermId>&) { step(i + 1); });
  };
  step(0);
  return out;
}

}  // namespace tgq::ntga
