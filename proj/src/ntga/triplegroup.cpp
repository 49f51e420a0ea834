#include "tgq/ntga/triplegroup.hpp"

#include <algorithm>

namespace tgq::ntga {

bool TripleGroup::hasTag(std::uint32_t tag) const {
  return std::binary_search(matchTags.begin(), matchTags.end(), tag);
}

std::pair<const IdTriple*, const IdTriple*> TripleGroup::triplesOf(TermId property) const {
  auto lo = std::lower_bound(triples.begin(), triples.end(), property,
                             [](const IdTriple& t, TermId p) { return t.p < p; });
  auto hi = std::upper_bound(lo, triples.end(), property,
                             [](TermId p, const IdTriple& t) { return p < t.p; });
  return {triples.data() + (lo - triples.begin()), triples.data() + (hi - triples.begin())};
}

const TripleGroup* NestedTripleGroup::groupFor(std::uint32_t star) const {
  if (root && rootStar == star) return root.get();
  for (const auto& c : children)
    if (c.star == star) return c.group.get();
  return nullptr;
}

}  // namespace tgq::ntga
