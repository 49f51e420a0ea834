#include "tgq/rdf/graph.hpp"

#include <algorithm>

namespace tgq::rdf {

Graph::Graph() : dict_(std::make_shared<Dictionary>()) {}

Graph::Graph(std::shared_ptr<Dictionary> dict, std::vector<IdTriple> triples)
    : dict_(std::move(dict)), triples_(std::move(triples)) {
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
}

bool Graph::contains(const TermTriple& t) const {
  auto s = dict_->find(t.s), p = dict_->find(t.p), o = dict_->find(t.o);
  if (!s || !p || !o) return false;
  return std::binary_search(triples_.begin(), triples_.end(), IdTriple{*s, *p, *o});
}

TermTriple Graph::resolve(const IdTriple& t) const {
  return {dict_->term(t.s), dict_->term(t.p), dict_->term(t.o)};
}

std::vector<TermTriple> Graph::termTriples() const {
  std::vector<TermTriple> out;
  out.reserve(triples_.size());
  for (const auto& t : triples_) out.push_back(resolve(t));
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  if (a.dict_ == b.dict_) return a.triples_ == b.triples_;
  return a.termTriples() == b.termTriples();
}

GraphBuilder::GraphBuilder() : dict_(std::make_shared<Dictionary>()) {}

GraphBuilder::GraphBuilder(std::shared_ptr<Dictionary> dict)
    : dict_(std::move(dict)) {}

void GraphBuilder::add(const Term& s, const Term& p, const Term& o) {
  triples_.push_back({dict_->intern(s), dict_->intern(p), dict_->intern(o)});
}

void GraphBuilder::addAll(const Graph& g) {
  if (g.dictionary() == dict_) {
    triples_.insert(triples_.end(), g.triples().begin(), g.triples().end());
    return;
  }
  for (const auto& t : g.triples()) add(g.resolve(t));
}

Graph GraphBuilder::build() && {
  return Graph(std::move(dict_), std::move(triples_));
}

}  // namespace tgq::rdf
