#pragma once

#include "tgq/exec/solution_set.hpp"
#include "tgq/query/ast.hpp"
#include "tgq/rdf/graph.hpp"

namespace tgq::bench {

/// Naive fixpoint of rdfs2, rdfs3, rdfs5, rdfs7, rdfs9 and rdfs11 over
/// data ∪ schema. Range typing may put literals in subject position.
rdf::Graph forwardChain(const rdf::Graph& data, const rdf::Graph& schema);

/// Nested-loop evaluation of every branch, union of the projections.
exec::SolutionSet oracleMatch(const query::UCQ& q, const rdf::Graph& g);

}  // namespace tgq::bench
