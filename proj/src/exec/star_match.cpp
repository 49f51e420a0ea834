#include "tgq/exec/star_match.hpp"

#include <algorithm>

namespace tgq::exec {

std::span<const IdTriple> withProperty(std::span<const IdTriple> triples, TermId p) {
  auto lo = std::lower_bound(triples.begin(), triples.end(), p,
                             [](const IdTriple& t, TermId v) { return t.p < v; });
  auto hi = std::upper_bound(lo, triples.end(), p,
                             [](TermId v, const IdTriple& t) { return v < t.p; });
  return {lo, hi};
}

bool starAdmits(const BoundStar& star, std::span<const IdTriple> triples) {
  for (TermId p : star.requiredProperties)
    if (withProperty(triples, p).empty()) return false;
  for (const auto& [p, allowed] : star.groundObjects) {
    auto range = withProperty(triples, p);
    for (TermId o : allowed) {
      bool found = std::any_of(range.begin(), range.end(), [&](const IdTriple& t) { return t.o == o; });
      if (!found) return false;
    }
  }
  return true;
}

namespace {

struct Matcher {
  const BoundStar& star;
  std::span<const IdTriple> triples;
  std::vector<TermId>& binding;
  const BindingFn& onMatch;

  void step(size_t i) {
    if (i == star.patterns.size()) {
      onMatch(binding);
      return;
    }
    const BoundPattern& bp = star.patterns[i];
    for (const IdTriple& t : withProperty(triples, bp.p)) {
      if (bp.oVar < 0) {
        if (t.o != bp.o) continue;
        step(i + 1);
        continue;
      }
      TermId& slot = binding[bp.oVar];
      if (slot != rdf::kNoTerm) {
        if (slot == t.o) step(i + 1);
        continue;
      }
      slot = t.o;
      step(i + 1);
      slot = rdf::kNoTerm;
    }
  }
};

}  // namespace

void matchStar(const BoundStar& star, TermId subject, std::span<const IdTriple> triples,
               std::vector<TermId>& binding, const BindingFn& onMatch) {
  bool boundSubject = false;
  if (star.subjectVar < 0) {
    if (subject != star.subject) return;
  } else {
    TermId& slot = binding[star.subjectVar];
    if (slot != rdf::kNoTerm) {
      if (slot != subject) return;
    } else {
      slot = subject;
      boundSubject = true;
    }
  }
  Matcher{star, triples, binding, onMatch}.step(0);
  if (boundSubject) binding[star.subjectVar] = rdf::kNoTerm;
}

}  // namespace tgq::exec
