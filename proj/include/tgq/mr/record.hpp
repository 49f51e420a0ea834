#pragma once

#include <compare>
#include <cstdint>
#include <variant>
#include <vector>

#include "tgq/ntga/triplegroup.hpp"
#include "tgq/rdf/graph.hpp"

namespace tgq::mr {

using rdf::IdTriple;
using rdf::TermId;

/// A flat binding row. `tag` identifies the producer (branch, join side,
/// ...); unbound slots hold rdf::kNoTerm.
struct Row {
  std::uint32_t tag = 0;
  std::vector<TermId> values;
  friend auto operator<=>(const Row&, const Row&) = default;
};

struct TaggedGroup {
  ntga::TripleGroupPtr group;
};

/// Partial match of one union branch, carried between join jobs.
struct PartialMatch {
  std::uint32_t branch = 0;
  ntga::NestedTripleGroup nested;
};

using Record = std::variant<IdTriple, Row, TaggedGroup, PartialMatch>;

/// Shuffle key; compared lexicographically.
using Key = std::vector<TermId>;

/// Seeded 64-bit FNV-1a over the little-endian bytes of the key parts.
std::uint64_t hashKey(const Key& key);

}  // namespace tgq::mr
