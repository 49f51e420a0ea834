// tgq: parse, rewrite, plan and run union queries over N-Triples data.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tgq/bench/corpus.hpp"
#include "tgq/bench/pipeline.hpp"
#include "tgq/bench/synthetic.hpp"
#include "tgq/inference/rewriter.hpp"
#include "tgq/query/parser.hpp"
#include "tgq/query/stats.hpp"
#include "tgq/rdf/ntriples.hpp"

using namespace tgq;
namespace fs = std::filesystem;

namespace {

std::string readText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bench::StageError("read", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

query::UCQ loadQuery(const std::string& path) {
  try {
    return query::parseQuery(readText(path));
  } catch (const bench::StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw bench::StageError("parse query", e.what());
  }
}

rdf::Graph loadGraph(const std::string& path, bool strict, const std::string& stage) {
  try {
    rdf::ParseOptions opts;
    opts.strict = strict;
    auto res = rdf::readNTriplesFile(path, opts);
    if (res.skippedLines) std::cerr << path << ": skipped " << res.skippedLines << " malformed lines\n";
    return std::move(res.graph);
  } catch (const std::exception& e) {
    throw bench::StageError(stage, e.what());
  }
}

std::optional<inference::SchemaClosure> loadClosure(const std::string& path, bool strict) {
  if (path.empty()) return std::nullopt;
  return inference::SchemaClosure::compute(loadGraph(path, strict, "read schema"));
}

nlohmann::json statsJson(const query::QueryStats& s) {
  return {{"triplePatterns", s.numTriplePatterns}, {"starPatterns", s.numStarPatterns},
          {"edges", s.edgesCell},                  {"subjectObjectJoins", s.numSOJoins},
          {"objectObjectJoins", s.numOOJoins},     {"branches", s.unionWidth}};
}

void writeFile(const fs::path& p, const std::string& content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Union query engine over a simulated map-reduce runtime"};
  app.require_subcommand(1);

  bool strict = true;
  std::string schemaPath, outDir, engineName = "ntga";
  bool inference = true;
  std::uint32_t partitions = 1;
  unsigned threads = 1;
  std::uint64_t seed = 1;

  auto addStrict = [&](CLI::App* c) { c->add_option("--strict", strict, "Abort on the first malformed line"); };
  auto addSchema = [&](CLI::App* c) { c->add_option("--schema", schemaPath, "Schema or closure N-Triples file"); };
  auto addExec = [&](CLI::App* c) {
    c->add_option("--inference", inference, "Rewrite with the schema before execution");
    c->add_option("--partitions", partitions, "Reduce partitions per job")->check(CLI::PositiveNumber);
    c->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  std::string queryPath, dataPath;

  auto* parse = app.add_subcommand("parse", "Parse a query and print its shape statistics");
  parse->add_option("query", queryPath)->required();

  auto* closure = app.add_subcommand("closure", "Build or inspect a schema closure");
  closure->require_subcommand(1);
  std::string closureIn, closureOut;
  auto* cbuild = closure->add_subcommand("build", "Close a schema and write it as N-Triples");
  cbuild->add_option("schema", closureIn)->required();
  cbuild->add_option("-o,--output", closureOut, "Output file (default stdout)");
  addStrict(cbuild);
  auto* cload = closure->add_subcommand("load", "Load a closure file and print a summary");
  cload->add_option("closure", closureIn)->required();
  addStrict(cload);

  auto* rewrite = app.add_subcommand("rewrite", "Rewrite a query into a union of conjunctive queries");
  rewrite->add_option("query", queryPath)->required();
  addSchema(rewrite);
  addStrict(rewrite);

  auto* plan = app.add_subcommand("plan", "Print the workflow and its predicted cost");
  plan->add_option("query", queryPath)->required();
  plan->add_option("--engine", engineName, "ntga, union or mqo");
  addSchema(plan);
  addStrict(plan);
  plan->add_option("--inference", inference, "Rewrite with the schema first");

  auto* run = app.add_subcommand("run", "Execute a query");
  run->add_option("query", queryPath)->required();
  run->add_option("data", dataPath)->required();
  run->add_option("--engine", engineName, "ntga, union or mqo");
  run->add_option("--out-dir", outDir, "Directory for results.tsv and stats.json");
  addSchema(run);
  addStrict(run);
  addExec(run);

  auto* cmp = app.add_subcommand("compare", "Run all engines, check agreement, report costs");
  cmp->add_option("query", queryPath)->required();
  cmp->add_option("data", dataPath)->required();
  cmp->add_option("--out-dir", outDir, "Directory for report.csv and stats.json");
  bool withOracle = false;
  cmp->add_flag("--oracle", withOracle, "Also compare against the nested-loop oracle");
  addSchema(cmp);
  addStrict(cmp);
  addExec(cmp);

  auto* gen = app.add_subcommand("gen", "Generate synthetic data and schema");
  bench::SyntheticSpec spec;
  gen->add_option("--classes", spec.classes);
  gen->add_option("--depth", spec.depth);
  gen->add_option("--fanout", spec.fanout);
  gen->add_option("--instances", spec.instances);
  gen->add_option("--mvp-rate", spec.mvpRate);
  gen->add_option("--attributes", spec.attributes);
  gen->add_option("--links", spec.links);
  gen->add_option("--seed", seed);
  gen->add_option("--out-dir", outDir)->required();

  auto* corpusCmd = app.add_subcommand("corpus", "Write the reconstructed query corpus");
  corpusCmd->add_option("--out-dir", outDir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse->parsed()) {
      auto q = loadQuery(queryPath);
      std::cout << query::toQueryString(q) << "\n" << statsJson(query::computeStats(q)).dump(2) << "\n";
    } else if (cbuild->parsed()) {
      auto c = inference::SchemaClosure::compute(loadGraph(closureIn, strict, "read schema"));
      if (c.ignoredTriples()) std::cerr << "ignored " << c.ignoredTriples() << " non-schema triples\n";
      std::string nt = rdf::serializeNTriples(c.toGraph());
      if (closureOut.empty())
        std::cout << nt;
      else
        writeFile(closureOut, nt);
    } else if (cload->parsed()) {
      auto c = inference::SchemaClosure::compute(loadGraph(closureIn, strict, "read closure"));
      std::cout << nlohmann::json{{"triples", c.size()},
                                  {"classesWithSuperclasses", c.superClasses().size()},
                                  {"propertiesWithSuperproperties", c.superProperties().size()},
                                  {"propertiesWithDomain", c.domains().size()},
                                  {"propertiesWithRange", c.ranges().size()}}
                       .dump(2)
                << "\n";
    } else if (rewrite->parsed()) {
      auto q = loadQuery(queryPath);
      auto c = loadClosure(schemaPath, strict);
      inference::SchemaClosure empty;
      auto res = inference::rewriteToUcq(q, c ? *c : empty);
      std::cout << query::toQueryString(res.ucq) << "\n# branches: " << res.ucq.width() << "\n";
    } else if (plan->parsed()) {
      auto q = loadQuery(queryPath);
      auto c = loadClosure(schemaPath, strict);
      auto prepared = bench::prepareQuery(q, c ? &*c : nullptr, inference);
      auto engine = planner::parseEngine(engineName);
      auto choice = planner::predictJobCount(prepared, engine);
      if (choice.notApplicable) {
        std::cout << choice.toJson().dump() << "\n";
        return 2;
      }
      rdf::Dictionary dict;
      mr::Workflow w = engine == planner::Engine::Ntga ? planner::planNtga(prepared, dict)
                                                       : planner::planRelational(prepared, engine, dict);
      std::cout << planner::describeWorkflow(w) << choice.toJson().dump() << "\n";
    } else if (run->parsed()) {
      bench::RunConfig cfg{planner::parseEngine(engineName), inference, partitions, threads};
      auto out = bench::runFiles({queryPath, dataPath, schemaPath, strict}, cfg);
      if (outDir.empty()) {
        out.solutions.writeTsv(std::cout);
      } else {
        bench::writeRunOutputs(out, outDir);
        std::cout << out.solutions.size() << " results, " << out.stats.jobsExecuted << " jobs\n";
      }
    } else if (cmp->parsed()) {
      auto q = loadQuery(queryPath);
      auto data = loadGraph(dataPath, strict, "read data");
      std::optional<rdf::Graph> schema;
      if (!schemaPath.empty()) schema = loadGraph(schemaPath, strict, "read schema");
      std::optional<inference::SchemaClosure> c;
      if (schema) c = inference::SchemaClosure::compute(*schema);
      bench::CompareConfig cfg{inference, partitions, threads, withOracle, schema ? &*schema : nullptr};
      auto report = bench::compare(fs::path(queryPath).stem().string(), q, data, c ? &*c : nullptr, cfg);
      for (const auto& [engine, reason] : report.skipped) std::cerr << engine << " skipped: " << reason << "\n";
      std::cout << report.toCsv();
      if (!outDir.empty()) {
        writeFile(fs::path(outDir) / "report.csv", report.toCsv());
        writeFile(fs::path(outDir) / "stats.json", report.stats.dump(2) + "\n");
      }
    } else if (gen->parsed()) {
      spec.seed = seed;
      auto d = bench::genSynthetic(spec);
      writeFile(fs::path(outDir) / "data.nt", rdf::serializeNTriples(d.data));
      writeFile(fs::path(outDir) / "schema.nt", rdf::serializeNTriples(d.schema));
      std::cout << d.data.size() << " data triples, " << d.schema.size() << " schema triples, " << d.classCount
                << " classes, depth " << d.hierarchyDepth << "\n";
    } else if (corpusCmd->parsed()) {
      for (const auto& q : bench::corpus()) {
        std::string file = q.name;
        for (auto& ch : file)
          if (ch == '+') ch = 'p';
        writeFile(fs::path(outDir) / (file + ".rq"), q.text);
      }
    }
  } catch (const bench::MismatchError& e) {
    std::cerr << e.what() << "\n";
    for (const auto& d : e.differences()) std::cerr << "  " << d << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
