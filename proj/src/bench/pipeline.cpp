#include "tgq/bench/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tgq/bench/oracle.hpp"
#include "tgq/inference/rewriter.hpp"
#include "tgq/ntga/engine.hpp"
#include "tgq/query/parser.hpp"
#include "tgq/rdf/ntriples.hpp"
#include "tgq/relational/mqo_plan.hpp"
#include "tgq/relational/union_plan.hpp"

namespace tgq::bench {

using planner::Engine;

query::UCQ prepareQuery(const query::UCQ& q, const inference::SchemaClosure* closure, bool inference) {
  if (!inference || !closure) return q;
  return inference::rewriteToUcq(q, *closure).ucq;
}

RunOutput execute(const query::UCQ& prepared, const rdf::Graph& data, const RunConfig& cfg,
                  std::shared_ptr<const mr::Dataset> source) {
  RunOutput out;
  out.executed = prepared;
  const rdf::Dictionary& dict = *data.dictionary();
  exec::ExecOptions opts{cfg.partitions, cfg.threads};
  if (!source) source = exec::sourceRecords(data);
  mr::Registry registry = exec::sourceRegistry(source);

  std::optional<relational::MqoPlan> mqo;
  try {
    out.prediction = planner::predictJobCount(prepared, cfg.engine);
    if (out.prediction.notApplicable) throw std::invalid_argument("not applicable: " + *out.prediction.notApplicable);
    if (cfg.engine == Engine::RelationalMqo) mqo = std::get<relational::MqoPlan>(relational::buildMqoPlan(prepared));
  } catch (const std::exception& e) {
    throw StageError("plan", e.what());
  }

  auto start = std::chrono::steady_clock::now();
  exec::EngineResult res;
  try {
    switch (cfg.engine) {
      case Engine::Ntga:
        res = ntga::executeNtga(ntga::compileNtga(prepared, dict, cfg.partitions), registry, dict, opts);
        break;
      case Engine::RelationalUnion:
        res = relational::executeUnionPlan(relational::compileUnionPlan(prepared, dict, cfg.partitions), registry,
                                           dict, opts);
        break;
      case Engine::RelationalMqo:
        res = relational::executeMqoPlan(relational::compileMqoPlan(*mqo, dict, cfg.partitions), registry, dict,
                                         opts);
        break;
    }
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("execute", e.what());
  }
  out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.solutions = std::move(res.solutions);
  out.stats = std::move(res.stats);
  return out;
}

RunOutput runQuery(const query::UCQ& q, const rdf::Graph& data, const inference::SchemaClosure* closure,
                   const RunConfig& cfg) {
  query::UCQ prepared;
  try {
    prepared = prepareQuery(q, closure, cfg.inference);
  } catch (const std::exception& e) {
    throw StageError("rewrite", e.what());
  }
  return execute(prepared, data, cfg);
}

namespace {

std::string readText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

rdf::Graph readGraph(const std::string& path, bool strict) {
  rdf::ParseOptions opts;
  opts.strict = strict;
  return rdf::readNTriplesFile(path, opts).graph;
}

}  // namespace

RunOutput runFiles(const FileInputs& in, const RunConfig& cfg) {
  query::UCQ q;
  rdf::Graph data, schema;
  try {
    q = query::parseQuery(readText(in.query));
  } catch (const std::exception& e) {
    throw StageError("parse query", e.what());
  }
  try {
    data = readGraph(in.data, in.strict);
  } catch (const std::exception& e) {
    throw StageError("read data", e.what());
  }
  std::optional<inference::SchemaClosure> closure;
  if (!in.schema.empty()) {
    try {
      closure = inference::SchemaClosure::compute(readGraph(in.schema, in.strict));
    } catch (const std::exception& e) {
      throw StageError("read schema", e.what());
    }
  }
  return runQuery(q, data, closure ? &*closure : nullptr, cfg);
}

void writeRunOutputs(const RunOutput& out, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream tsv(std::filesystem::path(dir) / "results.tsv");
  out.solutions.writeTsv(tsv);
  std::ofstream js(std::filesystem::path(dir) / "stats.json");
  nlohmann::json j = out.stats.toJson();
  j["prediction"] = out.prediction.toJson();
  j["results"] = out.solutions.size();
  js << j.dump(2) << "\n";
}

std::string BenchReport::toCsv(bool header) const {
  std::ostringstream os;
  if (header) os << kCsvHeader << "\n";
  for (const auto& r : rows) {
    os << r.query << "," << r.engine << "," << r.jobs << "," << r.scans << "," << r.shuffleRecords << ","
       << r.results << ",";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", r.millis);
    os << buf << "\n";
  }
  return os.str();
}

BenchReport compare(const std::string& name, const query::UCQ& q, const rdf::Graph& data,
                    const inference::SchemaClosure* closure, const CompareConfig& cfg) {
  BenchReport report;
  query::UCQ prepared;
  try {
    prepared = prepareQuery(q, closure, cfg.inference);
  } catch (const std::exception& e) {
    throw StageError("rewrite", e.what());
  }
  auto source = exec::sourceRecords(data);
  std::optional<exec::SolutionSet> reference;
  std::string referenceEngine;
  std::vector<std::string> differences;
  auto check = [&](const std::string& engine, const exec::SolutionSet& s) {
    if (!reference) {
      reference = s;
      referenceEngine = engine;
      return;
    }
    if (s == *reference) return;
    for (const auto& row : s.missingFrom(*reference)) differences.push_back(engine + " only: " + row);
    for (const auto& row : reference->missingFrom(s)) differences.push_back(referenceEngine + " only: " + row);
  };

  for (Engine e : {Engine::Ntga, Engine::RelationalUnion, Engine::RelationalMqo}) {
    const std::string en = planner::toString(e);
    if (e == Engine::RelationalMqo) {
      auto built = relational::buildMqoPlan(prepared);
      if (const auto* na = std::get_if<relational::NotApplicable>(&built)) {
        report.skipped[en] = na->reason;
        continue;
      }
    }
    RunConfig rc{e, cfg.inference, cfg.partitions, cfg.threads};
    RunOutput out = execute(prepared, data, rc, source);
    report.rows.push_back({name, en, out.stats.jobsExecuted, out.stats.totalSourceScans(),
                           out.stats.totalShuffleRecords(), out.solutions.size(), out.millis});
    nlohmann::json js = out.stats.toJson();
    js["prediction"] = out.prediction.toJson();
    report.stats[en] = js;
    check(en, out.solutions);
  }
  if (cfg.withOracle) {
    exec::SolutionSet expected;
    if (cfg.inference && cfg.schema)
      expected = oracleMatch(q, forwardChain(data, *cfg.schema));
    else
      expected = oracleMatch(q, data);
    check("oracle", expected);
  }
  for (const auto& [engine, reason] : report.skipped) report.stats["skipped"][engine] = reason;
  if (!differences.empty())
    throw MismatchError("engines disagree on " + name + " (" + std::to_string(differences.size()) + " rows)",
                        std::move(differences));
  return report;
}

}  // namespace tgq::bench
