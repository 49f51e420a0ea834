#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tgq/mr/record.hpp"
#include "tgq/query/ast.hpp"
#include "tgq/rdf/dictionary.hpp"

namespace tgq::exec {

using rdf::IdTriple;
using rdf::TermId;

/// Triple pattern over dictionary ids. A position with var < 0 is ground;
/// constants unknown to the dictionary become kNoTerm and never match.
struct BoundPattern {
  TermId s = rdf::kNoTerm, p = rdf::kNoTerm, o = rdf::kNoTerm;
  int sVar = -1, oVar = -1;
};

struct BoundStar {
  int subjectVar = -1;
  TermId subject = rdf::kNoTerm;
  std::vector<BoundPattern> patterns;
  std::vector<TermId> requiredProperties;  // sorted, unique
  /// Property -> allowed object constants, for properties whose every
  /// occurrence in the star has a ground object.
  std::vector<std::pair<TermId, std::vector<TermId>>> groundObjects;
};

struct BoundEdge {
  size_t starA = 0, starB = 0;
  int var = -1;
  query::JoinKind kind = query::JoinKind::SubjectObject;
};

/// One left-deep join step: `star` joins the stars placed before it.
struct JoinStep {
  size_t star = 0;
  /// Variable the step is keyed on; -1 for a cross product.
  int keyVar = -1;
  /// True when the key variable is the new star's subject.
  bool keyIsSubject = false;
  /// Further shared variables checked after the keyed join.
  std::vector<int> checkVars;
};

using ProjectionEntry = std::variant<std::monostate, int, rdf::Term>;

struct BoundBranch {
  std::vector<std::string> varNames;
  std::vector<BoundStar> stars;
  std::vector<BoundEdge> edges;
  /// stars[joinOrder[0].star] starts the plan (keyVar = -1).
  std::vector<JoinStep> joinOrder;
  /// One entry per projected variable: a variable index, a rewrite
  /// constant, or nothing when the branch leaves it unbound.
  std::vector<ProjectionEntry> projection;

  size_t numVars() const { return varNames.size(); }
  int varIndex(const std::string& name) const;
};

struct BoundQuery {
  std::vector<std::string> projection;
  std::vector<BoundBranch> branches;
};

/// Resolves constants against `dict` (without interning) and numbers the
/// variables of every branch.
BoundQuery bindQuery(const query::UCQ& q, const rdf::Dictionary& dict);

/// Final row of a branch: tag = branch, values = projected ids (kNoTerm for
/// constant or unbound entries, filled in on conversion).
mr::Row projectRow(const BoundQuery& q, size_t branch, const std::vector<TermId>& binding);

}  // namespace tgq::exec
