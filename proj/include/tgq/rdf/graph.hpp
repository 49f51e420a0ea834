#pragma once

#include <compare>
#include <memory>
#include <span>
#include <vector>

#include "tgq/rdf/dictionary.hpp"
#include "tgq/rdf/term.hpp"

namespace tgq::rdf {

struct IdTriple {
  TermId s = kNoTerm;
  TermId p = kNoTerm;
  TermId o = kNoTerm;
  friend auto operator<=>(const IdTriple&, const IdTriple&) = default;
};

struct TermTriple {
  Term s, p, o;
  friend auto operator<=>(const TermTriple&, const TermTriple&) = default;
};

/// An immutable set of triples over a (possibly shared) dictionary. Triples
/// are kept sorted by (s, p, o) handle order without duplicates.
class Graph {
 public:
  Graph();
  Graph(std::shared_ptr<Dictionary> dict, std::vector<IdTriple> triples);

  const std::shared_ptr<Dictionary>& dictionary() const { return dict_; }
  std::span<const IdTriple> triples() const { return triples_; }
  size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool contains(const TermTriple& t) const;

  TermTriple resolve(const IdTriple& t) const;
  /// The triples as terms, sorted by term order.
  std::vector<TermTriple> termTriples() const;

  /// Set equality over terms; works across different dictionaries.
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::shared_ptr<Dictionary> dict_;
  std::vector<IdTriple> triples_;
};

/// Accumulates triples and produces a deduplicated Graph.
class GraphBuilder {
 public:
  GraphBuilder();
  explicit GraphBuilder(std::shared_ptr<Dictionary> dict);

  void add(const Term& s, const Term& p, const Term& o);
  void add(const TermTriple& t) { add(t.s, t.p, t.o); }
  void add(IdTriple t) { triples_.push_back(t); }
  void addAll(const Graph& g);
  Dictionary& dictionary() { return *dict_; }
  const std::shared_ptr<Dictionary>& sharedDictionary() const { return dict_; }
  size_t pending() const { return triples_.size(); }

  Graph build() &&;

 private:
  std::shared_ptr<Dictionary> dict_;
  std::vector<IdTriple> triples_;
};

}  // namespace tgq::rdf
