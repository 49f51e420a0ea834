#include "tgq/inference/rewriter.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "tgq/query/stars.hpp"
#include "tgq/rdf/vocab.hpp"

namespace tgq::inference {

using query::asTerm;
using query::asVariable;
using query::isVariable;
using query::PatternTerm;
using query::TriplePattern;
namespace vocab = rdf::vocab;

namespace {

bool isFresh(const PatternTerm& t) {
  return isVariable(t) && asVariable(t).name.starts_with(kFreshPrefix);
}

bool hasProperty(const TriplePattern& tp, std::string_view iri) {
  return !isVariable(tp.p) && asTerm(tp.p).value == iri;
}

bool isSchemaPattern(const TriplePattern& tp) {
  return !isVariable(tp.p) && vocab::isSchemaProperty(asTerm(tp.p).value);
}

std::string masked(const TriplePattern& tp) {
  auto one = [](const PatternTerm& t) { return isFresh(t) ? std::string("?_") : query::toString(t); };
  return one(tp.s) + ' ' + one(tp.p) + ' ' + one(tp.o);
}

PatternTerm substitute(const PatternTerm& t, const Mapping& m) {
  if (!isVariable(t)) return t;
  if (auto it = m.find(asVariable(t).name); it != m.end()) return it->second;
  return t;
}

TriplePattern substitute(const TriplePattern& tp, const Mapping& m) {
  return {substitute(tp.s, m), substitute(tp.p, m), substitute(tp.o, m)};
}

size_t freshCount(const std::vector<TriplePattern>& patterns) {
  std::set<std::string> names;
  for (const auto& tp : patterns) {
    for (const auto* t : {&tp.s, &tp.o}) {
      if (isFresh(*t)) names.insert(asVariable(*t).name);
    }
  }
  return names.size();
}

struct Work {
  std::vector<TriplePattern> patterns;
  std::map<std::string, Term> constants;
  BranchTrace trace;
};

std::vector<Work> schemaStep(const query::GraphPattern& branch, size_t index,
                             const SchemaClosure& closure) {
  std::vector<TriplePattern> schema, data;
  for (const auto& tp : branch.patterns) (isSchemaPattern(tp) ? schema : data).push_back(tp);

  std::vector<Mapping> mappings{Mapping{}};
  for (const auto& sp : schema) {
    std::vector<Mapping> next;
    for (const auto& m : mappings) {
      for (auto& r : queryClosure(closure, substitute(sp, m))) {
        r.insert(m.begin(), m.end());
        next.push_back(std::move(r));
      }
    }
    mappings = std::move(next);
  }

  std::vector<Work> out;
  for (const auto& m : mappings) {
    Work w;
    w.trace.sourceBranch = index;
    w.trace.schemaMapping = m;
    w.constants = branch.constants;
    for (const auto& [var, value] : m) w.constants[var] = value;
    for (const auto& tp : data) w.patterns.push_back(substitute(tp, m));
    if (w.patterns.empty()) {
      throw query::UnsupportedConstruct("branch consisting only of schema patterns");
    }
    for (const auto& tp : w.patterns) {
      if (hasProperty(tp, vocab::kType) && isVariable(tp.o)) {
        throw query::UnsupportedConstruct("rdf:type with a class variable not bound by a schema pattern");
      }
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<RuleApplication> applicableRules(const std::vector<TriplePattern>& patterns,
                                             const SchemaClosure& closure) {
  std::vector<RuleApplication> out;
  PatternTerm fresh = query::Variable{std::string(kFreshPrefix) + std::to_string(freshCount(patterns))};
  for (size_t i = 0; i < patterns.size(); ++i) {
    const auto& tp = patterns[i];
    if (isVariable(tp.p)) continue;
    const Term& prop = asTerm(tp.p);
    if (prop.value == vocab::kType) {
      if (isVariable(tp.o)) continue;
      const Term& cls = asTerm(tp.o);
      for (auto& sub : closure.strictSubClasses(cls)) {
        out.push_back({"rdfs9", i, {tp.s, tp.p, sub}, {{"class", sub}}});
      }
      for (auto& p : closure.propertiesWithDomain(cls)) {
        out.push_back({"rdfs2", i, {tp.s, p, fresh}, {{"property", p}}});
      }
      for (auto& p : closure.propertiesWithRange(cls)) {
        out.push_back({"rdfs3", i, {fresh, p, tp.s}, {{"property", p}}});
      }
    } else if (!vocab::isRdfsVocabulary(prop.value)) {
      for (auto& sub : closure.strictSubProperties(prop)) {
        out.push_back({"rdfs7", i, {tp.s, sub, tp.o}, {{"property", sub}}});
      }
    }
  }
  return out;
}

}  // namespace

std::string canonicalize(std::vector<TriplePattern>& patterns,
                         const std::map<std::string, Term>& constants) {
  std::vector<std::pair<std::string, TriplePattern>> keyed;
  keyed.reserve(patterns.size());
  for (auto& tp : patterns) keyed.emplace_back(masked(tp), std::move(tp));
  std::sort(keyed.begin(), keyed.end());

  std::map<std::string, std::string> rename;
  auto renamed = [&](const PatternTerm& t) -> PatternTerm {
    if (!isFresh(t)) return t;
    auto [it, inserted] = rename.try_emplace(asVariable(t).name, "");
    if (inserted) it->second = std::string(kFreshPrefix) + std::to_string(rename.size() - 1);
    return query::Variable{it->second};
  };
  patterns.clear();
  for (auto& [_, tp] : keyed) {
    TriplePattern r{renamed(tp.s), tp.p, renamed(tp.o)};
    if (std::find(patterns.begin(), patterns.end(), r) == patterns.end()) patterns.push_back(std::move(r));
  }

  std::string key;
  for (const auto& tp : patterns) key += tp.toString() + " .\n";
  for (const auto& [var, value] : constants) key += "=" + var + ":" + value.toNTriples() + "\n";
  return key;
}

RewriteResult rewriteToUcq(const query::UCQ& q, const SchemaClosure& closure) {
  std::unordered_set<std::string> seen;
  std::deque<Work> queue;
  for (size_t b = 0; b < q.branches.size(); ++b) {
    for (auto& w : schemaStep(q.branches[b], b, closure)) {
      if (seen.insert(canonicalize(w.patterns, w.constants)).second) queue.push_back(std::move(w));
    }
  }

  RewriteResult result;
  result.ucq.projection = q.projection;
  while (!queue.empty()) {
    Work w = std::move(queue.front());
    queue.pop_front();
    for (auto& rule : applicableRules(w.patterns, closure)) {
      Work child;
      child.patterns = w.patterns;
      child.patterns[rule.patternIndex] = rule.replacement;
      child.constants = w.constants;
      if (!seen.insert(canonicalize(child.patterns, child.constants)).second) continue;
      child.trace = w.trace;
      child.trace.steps.push_back(std::move(rule));
      queue.push_back(std::move(child));
    }
    auto gp = query::decomposeStars(std::move(w.patterns), result.ucq.branches.size());
    gp.constants = std::move(w.constants);
    result.ucq.branches.push_back(std::move(gp));
    result.trace.branches.push_back(std::move(w.trace));
  }
  return result;
}

query::GraphPattern replayTrace(const query::UCQ& original, const BranchTrace& trace,
                                const SchemaClosure& closure) {
  auto fail = [](const std::string& why) { throw std::logic_error("invalid rewrite trace: " + why); };
  if (trace.sourceBranch >= original.branches.size()) fail("unknown source branch");
  const auto& src = original.branches[trace.sourceBranch];

  std::vector<TriplePattern> patterns;
  std::map<std::string, Term> constants = src.constants;
  for (const auto& tp : src.patterns) {
    if (!isSchemaPattern(tp)) {
      patterns.push_back(substitute(tp, trace.schemaMapping));
      continue;
    }
    auto ground = substitute(tp, trace.schemaMapping);
    if (isVariable(ground.s) || isVariable(ground.o)) fail("schema variable left unbound");
    if (queryClosure(closure, ground).empty()) fail("schema pattern not in closure: " + ground.toString());
  }
  for (const auto& [var, value] : trace.schemaMapping) constants[var] = value;
  canonicalize(patterns, constants);

  for (const auto& step : trace.steps) {
    if (step.patternIndex >= patterns.size()) fail("pattern index out of range");
    const auto& tp = patterns[step.patternIndex];
    const auto& rep = step.replacement;
    bool ok = false;
    if (step.rule == "rdfs9") {
      ok = hasProperty(tp, vocab::kType) && !isVariable(tp.o) && rep.s == tp.s && rep.p == tp.p &&
           !isVariable(rep.o) && asTerm(rep.o) != asTerm(tp.o) &&
           closure.isSubClassOf(asTerm(rep.o), asTerm(tp.o));
    } else if (step.rule == "rdfs2") {
      ok = hasProperty(tp, vocab::kType) && !isVariable(tp.o) && rep.s == tp.s && isFresh(rep.o) &&
           !isVariable(rep.p) && closure.hasDomain(asTerm(rep.p), asTerm(tp.o));
    } else if (step.rule == "rdfs3") {
      ok = hasProperty(tp, vocab::kType) && !isVariable(tp.o) && rep.o == tp.s && isFresh(rep.s) &&
           !isVariable(rep.p) && closure.hasRange(asTerm(rep.p), asTerm(tp.o));
    } else if (step.rule == "rdfs7") {
      ok = !isVariable(tp.p) && !isVariable(rep.p) && rep.s == tp.s && rep.o == tp.o &&
           asTerm(rep.p) != asTerm(tp.p) && closure.isSubPropertyOf(asTerm(rep.p), asTerm(tp.p));
    }
    if (!ok) fail(step.rule + " does not justify " + rep.toString());
    patterns[step.patternIndex] = rep;
    canonicalize(patterns, constants);
  }
  auto gp = query::decomposeStars(std::move(patterns));
  gp.constants = std::move(constants);
  return gp;
}

}  // namespace tgq::inference
