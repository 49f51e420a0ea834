#include "tgq/rdf/dictionary.hpp"

#include <mutex>
#include <stdexcept>

namespace tgq::rdf {

TermId Dictionary::intern(const Term& term) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = ids_.find(term); it != ids_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  auto [it, inserted] = ids_.try_emplace(term, static_cast<TermId>(terms_.size()));
  if (inserted) {
    if (terms_.size() >= kNoTerm) {
      throw std::length_error("term dictionary exhausted");
    }
    terms_.push_back(term);
  }
  return it->second;
}

std::optional<TermId> Dictionary::find(const Term& term) const {
  std::shared_lock lock(mutex_);
  if (auto it = ids_.find(term); it != ids_.end()) return it->second;
  return std::nullopt;
}

TermId Dictionary::lookup(const Term& term) const {
  return find(term).value_or(kNoTerm);
}

const Term& Dictionary::term(TermId id) const {
  std::shared_lock lock(mutex_);
  if (id >= terms_.size()) {
    throw std::out_of_range("unknown term id " + std::to_string(id));
  }
  return terms_[id];
}

size_t Dictionary::size() const {
  std::shared_lock lock(mutex_);
  return terms_.size();
}

}  // namespace tgq::rdf
