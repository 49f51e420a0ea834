#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tgq/exec/bound_query.hpp"
#include "tgq/mr/runtime.hpp"
#include "tgq/rdf/term.hpp"

namespace tgq::exec {

using SolutionRow = std::vector<std::optional<rdf::Term>>;

/// Projected bindings with set semantics.
class SolutionSet {
 public:
  SolutionSet() = default;
  explicit SolutionSet(std::vector<std::string> variables) : variables_(std::move(variables)) {}

  const std::vector<std::string>& variables() const { return variables_; }
  const std::set<SolutionRow>& rows() const { return rows_; }
  size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  void add(SolutionRow row);

  /// Header line of `?var` names, then one line per row in lexicographic
  /// order of the rendered lines; unbound cells are empty.
  void writeTsv(std::ostream& out) const;
  std::string toTsv() const;

  /// Rendered rows present here but not in `other`.
  std::vector<std::string> missingFrom(const SolutionSet& other) const;

  friend bool operator==(const SolutionSet&, const SolutionSet&) = default;

 private:
  std::vector<std::string> variables_;
  std::set<SolutionRow> rows_;
};

std::string renderRow(const SolutionRow& row);

/// Converts engine output rows (see projectRow) into solutions.
SolutionSet toSolutions(const BoundQuery& q, const mr::Dataset& rows, const rdf::Dictionary& dict);

}  // namespace tgq::exec
