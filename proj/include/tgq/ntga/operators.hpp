#pragma once

#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "tgq/exec/bound_query.hpp"
#include "tgq/ntga/triplegroup.hpp"

namespace tgq::ntga {

TripleGroup makeTripleGroup(TermId subject, std::vector<IdTriple> triples);

/// One disjunct of the group filter: a star shape identified by `tag`.
struct StarAlternative {
  std::uint32_t tag = 0;
  std::vector<TermId> requiredProperties;  // sorted
  std::vector<std::pair<TermId, std::vector<TermId>>> groundObjects;
  TermId groundSubject = rdf::kNoTerm;
  bool hasGroundSubject = false;

  friend auto operator<=>(const StarAlternative&, const StarAlternative&) = default;
};

StarAlternative alternativeOf(const exec::BoundStar& star, std::uint32_t tag);

struct DisjunctiveStarFilter {
  std::vector<StarAlternative> alternatives;

  /// Tag completeness: properties cover the alternative and every ground
  /// constraint has a witness.
  bool satisfies(const TripleGroup& g, const StarAlternative& alt) const;
};

/// Triple-level filter pushed into the first map phase.
struct LoadFilter {
  std::set<TermId> relevantProperties;
  /// Property -> allowed objects, present only when every occurrence of the
  /// property in every alternative has a ground object.
  std::map<TermId, std::set<TermId>> allowedObjects;
  std::map<TermId, std::set<TermId>> allowedSubjects;

  bool keep(const IdTriple& t) const;
};

LoadFilter makeLoadFilter(const std::vector<exec::BoundStar>& stars);

std::vector<IdTriple> tgLoadFilter(std::span<const IdTriple> triples, const LoadFilter& filter);

/// One group per distinct subject, ordered by subject.
std::vector<TripleGroup> tgGroupBy(std::span<const IdTriple> triples);

/// Sets matchTags on every group and drops the ones matching nothing.
std::vector<TripleGroup> tgGroupFilter(std::vector<TripleGroup> groups, const DisjunctiveStarFilter& f);

/// Where a join variable sits inside a star: the subject, or the object of
/// triples with `property`.
struct JoinSlot {
  bool subject = true;
  TermId property = rdf::kNoTerm;
  friend auto operator<=>(const JoinSlot&, const JoinSlot&) = default;
};

/// Distinct values of the slot in a group.
std::vector<TermId> slotValues(const TripleGroup& g, const JoinSlot& slot);

struct JoinSpec {
  std::uint32_t leftStar = 0, rightStar = 0;  // branch-local star indexes
  std::uint32_t leftTag = 0, rightTag = 0;
  JoinSlot leftSlot, rightSlot;
};

/// Reference join of tagged groups: pairs whose slot values meet, the right
/// group nested as a child of the left one.
std::vector<NestedTripleGroup> tgJoin(std::span<const TripleGroup> left,
                                      std::span<const TripleGroup> right, const JoinSpec& spec);

class IncompatibleGrouping : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Several branch joins evaluated together. Every spec must use the same
/// left and right slot positions.
struct UJoinResult {
  size_t spec = 0;  // which branch combination produced it
  NestedTripleGroup nested;
};

std::vector<UJoinResult> tgUJoin(std::span<const TripleGroup> left, std::span<const TripleGroup> right,
                                 std::span<const JoinSpec> specs);

/// Expands a nested group into the branch's variable bindings (Cartesian
/// product over each star's per-property triples, consistent on shared
/// variables).
std::vector<std::vector<TermId>> flatten(const NestedTripleGroup& ntg, const exec::BoundBranch& branch);

}  // namespace tgq::ntga
