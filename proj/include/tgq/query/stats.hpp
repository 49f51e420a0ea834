#pragma once

#include <string>
#include <vector>

#include "tgq/query/ast.hpp"

namespace tgq::query {

/// Shape statistics of a query in the style of a "query characteristics"
/// table.
///
/// Counting convention for multi-branch queries:
///  - numTriplePatterns: distinct triple patterns over all branches.
///  - numStarPatterns: distinct variable star subjects over all branches; a
///    star repeated in several branches counts once. Stars with a ground
///    subject appear in edgesCell but are not counted.
///  - numSOJoins / numOOJoins: distinct (variable, star, star) join edges.
///  - unionWidth: number of conjunctive branches.
///  - edgesCell: edge counts per star joined by ':'. When branches differ, a
///    two-branch union is shown as "(a)/(b):common-suffix" with stars aligned
///    by subject and 0 for a star a branch lacks; wider unions show the first
///    branch.
struct QueryStats {
  size_t numTriplePatterns = 0;
  size_t numStarPatterns = 0;
  std::vector<size_t> edgesPerStar;  // first branch
  std::string edgesCell;
  size_t numSOJoins = 0;
  size_t numOOJoins = 0;
  size_t unionWidth = 0;

  friend bool operator==(const QueryStats&, const QueryStats&) = default;
};

QueryStats computeStats(const UCQ& q);

/// Renders the heterogeneous-branch edges cell; isolated so the table
/// convention can be revised in one place.
std::string renderEdgesCell(const std::vector<std::vector<size_t>>& alignedPerBranch);

}  // namespace tgq::query
