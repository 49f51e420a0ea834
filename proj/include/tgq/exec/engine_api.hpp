#pragma once

#include <memory>
#include <string>

#include "tgq/exec/solution_set.hpp"
#include "tgq/mr/runtime.hpp"
#include "tgq/query/ast.hpp"
#include "tgq/rdf/graph.hpp"

namespace tgq::exec {

inline const std::string kSourceDataset = "triples";

struct ExecOptions {
  std::uint32_t partitions = 1;
  unsigned threads = 1;
};

struct EngineResult {
  SolutionSet solutions;
  mr::RunStats stats;
};

/// The graph as a source dataset of IdTriple records.
std::shared_ptr<const mr::Dataset> sourceRecords(const rdf::Graph& g);

/// Registry holding only the source dataset.
mr::Registry sourceRegistry(const rdf::Graph& g);
mr::Registry sourceRegistry(std::shared_ptr<const mr::Dataset> records);

/// Final Row records of a workflow result; other record kinds are skipped.
SolutionSet collectSolutions(const BoundQuery& q, const mr::Dataset& records, const rdf::Dictionary& dict);

/// Dictionary-independent identity of a star shape: its properties, ground
/// objects of fully ground properties, and a ground subject.
std::string starSignature(const query::StarPattern& star);

/// Property a variable occupies as object inside a star, if any.
const rdf::Term* objectPropertyOf(const query::StarPattern& star, const std::string& var);

}  // namespace tgq::exec
