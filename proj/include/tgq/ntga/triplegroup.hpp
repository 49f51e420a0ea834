#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tgq/rdf/graph.hpp"

namespace tgq::ntga {

using rdf::IdTriple;
using rdf::TermId;

/// All triples of one subject, typed by its property set. Triples are sorted
/// by (property, object); `tgType` is sorted and duplicate free.
struct TripleGroup {
  TermId subject = rdf::kNoTerm;
  std::vector<IdTriple> triples;
  std::vector<TermId> tgType;
  /// Star alternatives this group satisfies; filled by the group filter.
  std::vector<std::uint32_t> matchTags;

  bool hasTag(std::uint32_t tag) const;
  /// Triples with the given property (a contiguous range).
  std::pair<const IdTriple*, const IdTriple*> triplesOf(TermId property) const;
};

using TripleGroupPtr = std::shared_ptr<const TripleGroup>;

/// A child group attached to a nested triplegroup through a join.
struct NestedChild {
  std::uint32_t star = 0;      // star of the branch the child matches
  TermId property = rdf::kNoTerm;  // joining property in the parent side
  TermId joinTerm = rdf::kNoTerm;  // value both sides agree on
  TripleGroupPtr group;
};

/// A root triplegroup plus the groups joined onto it, one per star of a
/// branch. Intermediate join results stay in this form until flattening.
struct NestedTripleGroup {
  TripleGroupPtr root;
  std::uint32_t rootStar = 0;
  std::vector<NestedChild> children;

  /// Group matched to a star of the branch, or null.
  const TripleGroup* groupFor(std::uint32_t star) const;
};

}  // namespace tgq::ntga
