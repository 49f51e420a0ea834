#pragma once

#include <vector>

#include "tgq/query/ast.hpp"

namespace tgq::query {

/// Groups a branch's triple patterns by subject (first-occurrence order) and
/// derives one join edge per variable shared by a pair of stars.
GraphPattern decomposeStars(std::vector<TriplePattern> patterns, size_t id = 0);

/// Re-runs star decomposition on every branch and renumbers branch ids.
void redecompose(UCQ& q);

}  // namespace tgq::query
