#pragma once

#include <string>
#include <vector>

#include "tgq/inference/closure.hpp"
#include "tgq/query/ast.hpp"

namespace tgq::inference {

/// One rule firing: the pattern at `patternIndex` (in the canonical pattern
/// order of the parent branch) is replaced by `replacement`.
struct RuleApplication {
  std::string rule;  // rdfs2, rdfs3, rdfs7 or rdfs9
  size_t patternIndex = 0;
  query::TriplePattern replacement;
  Mapping mapping;  // e.g. {"class" -> ObsTaxon}
};

struct BranchTrace {
  size_t sourceBranch = 0;
  /// Bindings of the schema variables found against the closure.
  Mapping schemaMapping;
  std::vector<RuleApplication> steps;
};

struct RewriteTrace {
  std::vector<BranchTrace> branches;  // parallel to the output UCQ branches
};

struct RewriteResult {
  query::UCQ ucq;
  RewriteTrace trace;
};

/// Expands each branch into the union of branches entailed by the schema.
///
/// Schema patterns (subClassOf, subPropertyOf, domain, range) are evaluated
/// against the closure first; their bindings are substituted into the data
/// patterns and the schema patterns are dropped. Then rdfs9/rdfs2/rdfs3
/// (on `?s rdf:type C`) and rdfs7 (on `?s p ?o`) are applied to a fixpoint,
/// collapsing branches equal up to renaming of the fresh variables.
RewriteResult rewriteToUcq(const query::UCQ& q, const SchemaClosure& closure);

/// Rebuilds a branch by replaying its trace, checking every step against the
/// closure. Throws std::logic_error on an unjustified step.
query::GraphPattern replayTrace(const query::UCQ& original, const BranchTrace& trace,
                                const SchemaClosure& closure);

/// Sorts patterns, removes duplicates and renames `_fresh_N` variables by
/// first occurrence. Returns the canonical key.
std::string canonicalize(std::vector<query::TriplePattern>& patterns,
                         const std::map<std::string, Term>& constants);

inline constexpr std::string_view kFreshPrefix = "_fresh_";

}  // namespace tgq::inference
