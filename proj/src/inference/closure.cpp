#include "tgq/inference/closure.hpp"

#include "tgq/rdf/vocab.hpp"

namespace tgq::inference {

namespace vocab = rdf::vocab;
using Relation = std::map<Term, std::set<Term>>;

namespace {

// Reachability over the direct edges; a node reaches itself only through a
// cycle.
Relation transitiveClosure(const Relation& direct) {
  Relation closed;
  for (const auto& [start, _] : direct) {
    std::set<Term> seen;
    std::vector<const Term*> stack{&start};
    while (!stack.empty()) {
      const Term* node = stack.back();
      stack.pop_back();
      auto it = direct.find(*node);
      if (it == direct.end()) continue;
      for (const auto& next : it->second) {
        if (seen.insert(next).second) stack.push_back(&next);
      }
    }
    if (!seen.empty()) closed[start] = std::move(seen);
  }
  return closed;
}

Relation invert(const Relation& r) {
  Relation inv;
  for (const auto& [a, bs] : r) {
    for (const auto& b : bs) inv[b].insert(a);
  }
  return inv;
}

bool contains(const Relation& r, const Term& a, const Term& b) {
  auto it = r.find(a);
  return it != r.end() && it->second.count(b);
}

std::vector<Term> values(const Relation& r, const Term& a, const Term* exclude = nullptr) {
  std::vector<Term> out;
  if (auto it = r.find(a); it != r.end()) {
    for (const auto& b : it->second) {
      if (!exclude || b != *exclude) out.push_back(b);
    }
  }
  return out;
}

// property -> classes, inherited from super-properties and lifted to
// super-classes.
Relation inherit(const Relation& declared, const Relation& superProps, const Relation& superClasses) {
  Relation out = declared;
  for (const auto& [p, supers] : superProps) {
    for (const auto& q : supers) {
      if (auto it = declared.find(q); it != declared.end()) {
        out[p].insert(it->second.begin(), it->second.end());
      }
    }
  }
  for (auto& [p, classes] : out) {
    std::set<Term> lifted = classes;
    for (const auto& c : classes) {
      if (auto it = superClasses.find(c); it != superClasses.end()) {
        lifted.insert(it->second.begin(), it->second.end());
      }
    }
    classes = std::move(lifted);
  }
  return out;
}

}  // namespace

SchemaClosure SchemaClosure::compute(const rdf::Graph& schema) {
  SchemaClosure c;
  Relation subClass, subProp, domain, range;
  for (const auto& t : schema.triples()) {
    auto tt = schema.resolve(t);
    const auto& p = tt.p.value;
    if (p == vocab::kSubClassOf) {
      subClass[tt.s].insert(tt.o);
    } else if (p == vocab::kSubPropertyOf) {
      subProp[tt.s].insert(tt.o);
    } else if (p == vocab::kDomain) {
      domain[tt.s].insert(tt.o);
    } else if (p == vocab::kRange) {
      range[tt.s].insert(tt.o);
    } else {
      ++c.ignored_;
    }
  }
  c.superClasses_ = transitiveClosure(subClass);
  c.subClasses_ = invert(c.superClasses_);
  c.superProperties_ = transitiveClosure(subProp);
  c.subProperties_ = invert(c.superProperties_);
  c.domains_ = inherit(domain, c.superProperties_, c.superClasses_);
  c.domainOf_ = invert(c.domains_);
  c.ranges_ = inherit(range, c.superProperties_, c.superClasses_);
  c.rangeOf_ = invert(c.ranges_);
  return c;
}

bool SchemaClosure::empty() const {
  return superClasses_.empty() && superProperties_.empty() && domains_.empty() && ranges_.empty();
}

size_t SchemaClosure::size() const {
  size_t n = 0;
  for (const auto* r : {&superClasses_, &superProperties_, &domains_, &ranges_}) {
    for (const auto& [_, v] : *r) n += v.size();
  }
  return n;
}

bool SchemaClosure::isSubClassOf(const Term& sub, const Term& super) const {
  return contains(superClasses_, sub, super);
}
bool SchemaClosure::isSubPropertyOf(const Term& sub, const Term& super) const {
  return contains(superProperties_, sub, super);
}
bool SchemaClosure::hasDomain(const Term& property, const Term& cls) const {
  return contains(domains_, property, cls);
}
bool SchemaClosure::hasRange(const Term& property, const Term& cls) const {
  return contains(ranges_, property, cls);
}

std::vector<Term> SchemaClosure::strictSubClasses(const Term& cls) const {
  return values(subClasses_, cls, &cls);
}
std::vector<Term> SchemaClosure::strictSubProperties(const Term& property) const {
  return values(subProperties_, property, &property);
}
std::vector<Term> SchemaClosure::propertiesWithDomain(const Term& cls) const {
  return values(domainOf_, cls);
}
std::vector<Term> SchemaClosure::propertiesWithRange(const Term& cls) const {
  return values(rangeOf_, cls);
}

rdf::Graph SchemaClosure::toGraph() const {
  rdf::GraphBuilder b;
  auto emit = [&](const Relation& r, std::string_view prop) {
    Term p = Term::iri(std::string(prop));
    for (const auto& [a, bs] : r) {
      for (const auto& x : bs) b.add(a, p, x);
    }
  };
  emit(superClasses_, vocab::kSubClassOf);
  emit(superProperties_, vocab::kSubPropertyOf);
  emit(domains_, vocab::kDomain);
  emit(ranges_, vocab::kRange);
  return std::move(b).build();
}

std::vector<Mapping> queryClosure(const SchemaClosure& closure,
                                  const query::TriplePattern& pattern) {
  using query::asTerm;
  using query::asVariable;
  using query::isVariable;
  if (isVariable(pattern.p)) throw NonSchemaProperty("?" + asVariable(pattern.p).name);
  const auto& prop = asTerm(pattern.p).value;
  const Relation* rel = nullptr;
  if (prop == vocab::kSubClassOf) rel = &closure.superClasses();
  else if (prop == vocab::kSubPropertyOf) rel = &closure.superProperties();
  else if (prop == vocab::kDomain) rel = &closure.domains();
  else if (prop == vocab::kRange) rel = &closure.ranges();
  else throw NonSchemaProperty(prop);

  std::vector<Mapping> out;
  auto tryPair = [&](const Term& a, const Term& b) {
    Mapping m;
    auto bind = [&](const query::PatternTerm& pt, const Term& value) {
      if (!isVariable(pt)) return asTerm(pt) == value;
      auto [it, inserted] = m.try_emplace(asVariable(pt).name, value);
      return inserted || it->second == value;
    };
    if (bind(pattern.s, a) && bind(pattern.o, b)) out.push_back(std::move(m));
  };
  if (!isVariable(pattern.s)) {
    if (auto it = rel->find(asTerm(pattern.s)); it != rel->end()) {
      for (const auto& b : it->second) tryPair(it->first, b);
    }
    return out;
  }
  for (const auto& [a, bs] : *rel) {
    for (const auto& b : bs) tryPair(a, b);
  }
  return out;
}

}  // namespace tgq::inference
