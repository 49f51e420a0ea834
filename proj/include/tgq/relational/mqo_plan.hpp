#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tgq/exec/engine_api.hpp"

namespace tgq::relational {

struct NotApplicable {
  std::string reason;
};

/// Residual stars of several branches joined onto the root in one job.
struct OptionalGroup {
  std::string joinVariable;
  std::string shape;
  std::vector<size_t> branches;
};

struct MqoPlan {
  query::UCQ query;
  /// Per branch: variable renames applied before matching the root (star
  /// subjects that differ only by name).
  std::vector<std::map<std::string, std::string>> renaming;
  /// Common star shared by every branch, in the first branch's names.
  std::vector<query::TriplePattern> rootPattern;
  /// Per branch: the patterns left after removing the root (possibly empty).
  std::vector<std::vector<query::TriplePattern>> optionalBranches;
  std::vector<OptionalGroup> groups;

  size_t predictedJobs() const { return groups.size() + 2; }
  size_t predictedScans() const { return 1; }
};

/// Root = the largest star subpattern common to all branches up to the name
/// of the star subject (most patterns, ties by canonical text). Each
/// residual must be empty or one star whose subject variable occurs in the
/// root.
std::variant<MqoPlan, NotApplicable> buildMqoPlan(const query::UCQ& q);

/// Branches root ∪ optional_i for OPTIONAL-form input; other branches are
/// kept as they are.
query::UCQ unionFromOptionalForm(const query::UCQ& q);

struct CompiledMqo {
  std::shared_ptr<const exec::BoundQuery> bound;
  mr::Workflow workflow;
};

CompiledMqo compileMqoPlan(const MqoPlan& plan, const rdf::Dictionary& dict, std::uint32_t partitions = 1);

exec::EngineResult executeMqoPlan(const MqoPlan& plan, const rdf::Graph& g, const exec::ExecOptions& opts = {});
exec::EngineResult executeMqoPlan(const CompiledMqo& compiled, mr::Registry& registry,
                                  const rdf::Dictionary& dict, const exec::ExecOptions& opts = {});

}  // namespace tgq::relational
