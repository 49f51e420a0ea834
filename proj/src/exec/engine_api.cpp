#include "tgq/exec/engine_api.hpp"

#include <map>
#include <set>

namespace tgq::exec {

std::shared_ptr<const mr::Dataset> sourceRecords(const rdf::Graph& g) {
  auto d = std::make_shared<mr::Dataset>();
  d->reserve(g.size());
  for (const auto& t : g.triples()) d->emplace_back(t);
  return d;
}

mr::Registry sourceRegistry(std::shared_ptr<const mr::Dataset> records) {
  mr::Registry r;
  r.add(kSourceDataset, std::move(records), true);
  return r;
}

mr::Registry sourceRegistry(const rdf::Graph& g) { return sourceRegistry(sourceRecords(g)); }

SolutionSet collectSolutions(const BoundQuery& q, const mr::Dataset& records, const rdf::Dictionary& dict) {
  mr::Dataset rows;
  for (const auto& r : records)
    if (std::holds_alternative<mr::Row>(r)) rows.push_back(r);
  return toSolutions(q, rows, dict);
}

std::string starSignature(const query::StarPattern& star) {
  std::map<std::string, std::set<std::string>> ground;
  std::set<std::string> props, open;
  for (const auto& tp : star.patterns) {
    std::string p = query::toString(tp.p);
    props.insert(p);
    if (query::isVariable(tp.o))
      open.insert(p);
    else
      ground[p].insert(query::asTerm(tp.o).toNTriples());
  }
  std::string sig;
  if (!query::isVariable(star.subject)) sig += "S=" + query::asTerm(star.subject).toNTriples() + ";";
  for (const auto& p : props) {
    sig += p;
    if (!open.count(p) && ground.count(p)) {
      sig += "=";
      for (const auto& o : ground[p]) sig += o + ",";
    }
    sig += ";";
  }
  return sig;
}

const rdf::Term* objectPropertyOf(const query::StarPattern& star, const std::string& var) {
  for (const auto& tp : star.patterns)
    if (query::isVariable(tp.o) && query::asVariable(tp.o).name == var) return &query::asTerm(tp.p);
  return nullptr;
}

}  // namespace tgq::exec
