#include "tgq/bench/oracle.hpp"

#include <functional>
#include <map>
#include <set>

#include "tgq/rdf/vocab.hpp"

namespace tgq::bench {

using rdf::Term;
using rdf::TermTriple;

rdf::Graph forwardChain(const rdf::Graph& data, const rdf::Graph& schema) {
  namespace v = rdf::vocab;
  const Term type = Term::iri(std::string(v::kType));
  const Term sco = Term::iri(std::string(v::kSubClassOf));
  const Term spo = Term::iri(std::string(v::kSubPropertyOf));
  const Term dom = Term::iri(std::string(v::kDomain));
  const Term rng = Term::iri(std::string(v::kRange));
  std::set<TermTriple> all;
  for (const auto& t : data.termTriples()) all.insert(t);
  for (const auto& t : schema.termTriples()) all.insert(t);

  for (bool changed = true; changed;) {
    changed = false;
    std::map<Term, std::set<Term>> subClass, subProp, domain, range;
    for (const auto& t : all) {
      if (t.p == sco) subClass[t.s].insert(t.o);
      if (t.p == spo) subProp[t.s].insert(t.o);
      if (t.p == dom) domain[t.s].insert(t.o);
      if (t.p == rng) range[t.s].insert(t.o);
    }
    std::vector<TermTriple> fresh;
    auto derive = [&](const Term& s, const Term& p, const Term& o) {
      TermTriple t{s, p, o};
      if (!all.count(t)) fresh.push_back(std::move(t));
    };
    for (const auto& t : all) {
      if (auto it = subProp.find(t.p); it != subProp.end())  // rdfs7
        for (const auto& q : it->second) derive(t.s, q, t.o);
      if (auto it = domain.find(t.p); it != domain.end())  // rdfs2
        for (const auto& c : it->second) derive(t.s, type, c);
      if (auto it = range.find(t.p); it != range.end())  // rdfs3
        for (const auto& c : it->second) derive(t.o, type, c);
      if (t.p == type)  // rdfs9
        if (auto it = subClass.find(t.o); it != subClass.end())
          for (const auto& c : it->second) derive(t.s, type, c);
      if (t.p == sco)  // rdfs11
        if (auto it = subClass.find(t.o); it != subClass.end())
          for (const auto& c : it->second) derive(t.s, sco, c);
      if (t.p == spo)  // rdfs5
        if (auto it = subProp.find(t.o); it != subProp.end())
          for (const auto& c : it->second) derive(t.s, spo, c);
    }
    for (auto& t : fresh) changed |= all.insert(std::move(t)).second;
  }
  rdf::GraphBuilder b;
  for (const auto& t : all) b.add(t);
  return std::move(b).build();
}

exec::SolutionSet oracleMatch(const query::UCQ& q, const rdf::Graph& g) {
  std::vector<std::string> names;
  for (const auto& v : q.projection) names.push_back(v.name);
  exec::SolutionSet out(names);
  const auto triples = g.termTriples();
  std::map<Term, std::vector<const TermTriple*>> byProperty;
  for (const auto& t : triples) byProperty[t.p].push_back(&t);

  for (const auto& branch : q.branches) {
    std::map<std::string, Term> binding;
    std::function<void(size_t)> step = [&](size_t i) {
      if (i == branch.patterns.size()) {
        exec::SolutionRow row;
        for (const auto& n : names) {
          if (auto it = binding.find(n); it != binding.end())
            row.push_back(it->second);
          else if (auto c = branch.constants.find(n); c != branch.constants.end())
            row.push_back(c->second);
          else
            row.push_back(std::nullopt);
        }
        out.add(std::move(row));
        return;
      }
      const auto& tp = branch.patterns[i];
      std::vector<const TermTriple*> candidates;
      if (!query::isVariable(tp.p)) {
        auto it = byProperty.find(query::asTerm(tp.p));
        if (it == byProperty.end()) return;
        candidates = it->second;
      } else {
        for (const auto& t : triples) candidates.push_back(&t);
      }
      for (const TermTriple* t : candidates) {
        std::vector<std::string> added;
        bool ok = true;
        auto unify = [&](const query::PatternTerm& pt, const Term& value) {
          if (!ok) return;
          if (!query::isVariable(pt)) {
            ok = query::asTerm(pt) == value;
            return;
          }
          const std::string& n = query::asVariable(pt).name;
          auto it = binding.find(n);
          if (it == binding.end()) {
            binding.emplace(n, value);
            added.push_back(n);
          } else {
            ok = it->second == value;
          }
        };
        unify(tp.s, t->s);
        unify(tp.p, t->p);
        unify(tp.o, t->o);
        if (ok) step(i + 1);
        for (const auto& n : added) binding.erase(n);
      }
    };
    step(0);
  }
  return out;
}

}  // namespace tgq::bench
