#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgq/query/ast.hpp"
#include "tgq/rdf/graph.hpp"

namespace tgq::inference {

using rdf::Term;

class NonSchemaProperty : public std::runtime_error {
 public:
  explicit NonSchemaProperty(const std::string& property)
      : std::runtime_error("not an RDFS schema property: " + property) {}
};

/// Closure of the schema-level RDFS statements, with no rdf:type triples.
///
/// Holds the reflexive-only-on-cycles transitive closures of subClassOf and
/// subPropertyOf, plus domain/range sets inherited downward along
/// subPropertyOf and upward along subClassOf.
class SchemaClosure {
 public:
  /// Computes the closure offline; triples with other properties are ignored
  /// and counted in `ignoredTriples()`.
  static SchemaClosure compute(const rdf::Graph& schema);

  bool empty() const;
  size_t ignoredTriples() const { return ignored_; }

  bool isSubClassOf(const Term& sub, const Term& super) const;
  bool isSubPropertyOf(const Term& sub, const Term& super) const;
  bool hasDomain(const Term& property, const Term& cls) const;
  bool hasRange(const Term& property, const Term& cls) const;

  /// Classes C' with (C' subClassOf C) in the closure and C' != C.
  std::vector<Term> strictSubClasses(const Term& cls) const;
  std::vector<Term> strictSubProperties(const Term& property) const;
  std::vector<Term> propertiesWithDomain(const Term& cls) const;
  std::vector<Term> propertiesWithRange(const Term& cls) const;

  const std::map<Term, std::set<Term>>& superClasses() const { return superClasses_; }
  const std::map<Term, std::set<Term>>& superProperties() const { return superProperties_; }
  const std::map<Term, std::set<Term>>& domains() const { return domains_; }
  const std::map<Term, std::set<Term>>& ranges() const { return ranges_; }

  size_t size() const;

  /// The closed schema as N-Triples-ready triples.
  rdf::Graph toGraph() const;

 private:
  std::map<Term, std::set<Term>> superClasses_, subClasses_;
  std::map<Term, std::set<Term>> superProperties_, subProperties_;
  std::map<Term, std::set<Term>> domains_, domainOf_;  // property -> classes, class -> properties
  std::map<Term, std::set<Term>> ranges_, rangeOf_;
  size_t ignored_ = 0;
};

using Mapping = std::map<std::string, Term>;

/// Binds the variables of one schema triple pattern against the closure.
/// Throws NonSchemaProperty unless the property is subClassOf,
/// subPropertyOf, domain or range.
std::vector<Mapping> queryClosure(const SchemaClosure& closure,
                                  const query::TriplePattern& pattern);

}  // namespace tgq::inference
