#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgq/exec/engine_api.hpp"
#include "tgq/inference/closure.hpp"
#include "tgq/planner/planner.hpp"

namespace tgq::bench {

/// Failure of one pipeline stage ("read data", "parse query", "rewrite",
/// "plan", "execute").
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

class MismatchError : public std::runtime_error {
 public:
  MismatchError(const std::string& what, std::vector<std::string> differences)
      : std::runtime_error(what), differences_(std::move(differences)) {}
  const std::vector<std::string>& differences() const { return differences_; }

 private:
  std::vector<std::string> differences_;
};

struct RunConfig {
  planner::Engine engine = planner::Engine::Ntga;
  bool inference = true;
  std::uint32_t partitions = 1;
  unsigned threads = 1;
};

struct RunOutput {
  exec::SolutionSet solutions;
  mr::RunStats stats;
  planner::PlanChoice prediction;
  query::UCQ executed;
  double millis = 0;
};

/// Rewrites `q` when inference is on and a closure is given.
query::UCQ prepareQuery(const query::UCQ& q, const inference::SchemaClosure* closure, bool inference);

/// Executes an already prepared query.
RunOutput execute(const query::UCQ& prepared, const rdf::Graph& data, const RunConfig& cfg,
                  std::shared_ptr<const mr::Dataset> source = nullptr);

RunOutput runQuery(const query::UCQ& q, const rdf::Graph& data, const inference::SchemaClosure* closure,
                   const RunConfig& cfg);

struct FileInputs {
  std::string query;
  std::string data;
  std::string schema;  // optional
  bool strict = true;
};

/// parse -> rewrite -> plan -> execute, with stage labels on failures.
RunOutput runFiles(const FileInputs& in, const RunConfig& cfg);

/// Writes results.tsv and stats.json into `dir`.
void writeRunOutputs(const RunOutput& out, const std::string& dir);

struct ReportRow {
  std::string query;
  std::string engine;
  size_t jobs = 0;
  size_t scans = 0;
  size_t shuffleRecords = 0;
  size_t results = 0;
  double millis = 0;
};

struct BenchReport {
  std::vector<ReportRow> rows;
  /// Engine -> reason it was not run.
  std::map<std::string, std::string> skipped;
  nlohmann::json stats = nlohmann::json::object();

  static constexpr const char* kCsvHeader = "query,engine,jobs,scans,shuffleRecords,results,millis";
  std::string toCsv(bool header = true) const;
};

struct CompareConfig {
  bool inference = true;
  std::uint32_t partitions = 1;
  unsigned threads = 1;
  /// Also compare against the nested-loop oracle (over the forward-chained
  /// graph when inference is on).
  bool withOracle = false;
  const rdf::Graph* schema = nullptr;
};

/// Runs every applicable engine and checks that their solutions agree.
/// Throws MismatchError listing the differing rows otherwise.
BenchReport compare(const std::string& name, const query::UCQ& q, const rdf::Graph& data,
                    const inference::SchemaClosure* closure, const CompareConfig& cfg);

}  // namespace tgq::bench
