#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "tgq/rdf/term.hpp"

namespace tgq::rdf {

using TermId = std::uint32_t;

/// Sentinel used for "no term" (unbound slot) and for query constants that
/// do not occur in the data; never returned by `intern`.
inline constexpr TermId kNoTerm = std::numeric_limits<TermId>::max();

/// Interning table mapping terms to dense integer handles. Handles are
/// assigned in first-intern order, so identical input yields identical ids.
class Dictionary {
 public:
  TermId intern(const Term& term);
  std::optional<TermId> find(const Term& term) const;
  /// Like `find`, but maps unknown terms to `kNoTerm`.
  TermId lookup(const Term& term) const;
  const Term& term(TermId id) const;
  size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::deque<Term> terms_;  // deque keeps references stable across growth
  std::unordered_map<Term, TermId, TermHash> ids_;
};

}  // namespace tgq::rdf
