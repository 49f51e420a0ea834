#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "tgq/bench/corpus.hpp"
#include "tgq/bench/synthetic.hpp"
#include "tgq/ntga/engine.hpp"
#include "tgq/planner/planner.hpp"
#include "tgq/query/parser.hpp"
#include "tgq/relational/mqo_plan.hpp"
#include "tgq/relational/union_plan.hpp"

using namespace tgq;
using planner::Engine;

namespace {

query::UCQ parse(const std::string& body) { return query::parseQuery(std::string(testkit::kPrefix) + body); }

std::string starUnion(size_t k) {
  std::string text = "SELECT * WHERE { ";
  for (size_t i = 0; i < k; ++i) {
    if (i) text += " UNION ";
    text += "{ ?s" + std::to_string(i) + " a ex:C" + std::to_string(i) + " ; ex:a0 ?n }";
  }
  return text + " }";
}

size_t starsOf(const query::UCQ& q) {
  size_t m = 0;
  for (const auto& b : q.branches) m = std::max(m, b.stars.size());
  return m;
}

void checkPredictionMatches(const query::UCQ& q, const rdf::Graph& g, const std::string& label) {
  auto n = planner::predictJobCount(q, Engine::Ntga);
  auto nr = ntga::executeNtga(q, g);
  EXPECT_EQ(nr.stats.jobsExecuted, n.predictedJobs) << label;
  EXPECT_EQ(nr.stats.totalSourceScans(), n.predictedSourceScans) << label;

  auto u = planner::predictJobCount(q, Engine::RelationalUnion);
  auto ur = relational::executeUnionPlan(q, g);
  EXPECT_EQ(ur.stats.jobsExecuted, u.predictedJobs) << label;
  EXPECT_EQ(ur.stats.totalSourceScans(), u.predictedSourceScans) << label;

  auto m = planner::predictJobCount(q, Engine::RelationalMqo);
  auto plan = relational::buildMqoPlan(q);
  EXPECT_EQ(m.notApplicable.has_value(), std::holds_alternative<relational::NotApplicable>(plan)) << label;
  if (auto* p = std::get_if<relational::MqoPlan>(&plan)) {
    auto mr = relational::executeMqoPlan(*p, g);
    EXPECT_EQ(mr.stats.jobsExecuted, m.predictedJobs) << label;
    EXPECT_EQ(mr.stats.totalSourceScans(), m.predictedSourceScans) << label;
  }

  EXPECT_LE(n.predictedJobs, u.predictedJobs) << label;
  if (q.width() >= 2 || starsOf(q) >= 2) EXPECT_LT(n.predictedJobs, u.predictedJobs) << label;
}

}  // namespace

TEST(Prediction, PaperExamples) {
  auto k12 = parse(starUnion(12));
  auto u = planner::predictJobCount(k12, Engine::RelationalUnion);
  EXPECT_EQ(u.predictedJobs, 13u);
  EXPECT_EQ(u.predictedSourceScans, 12u);
  auto n = planner::predictJobCount(k12, Engine::Ntga);
  EXPECT_EQ(n.predictedJobs, 1u);
  EXPECT_EQ(n.predictedSourceScans, 1u);
  auto m = planner::predictJobCount(k12, Engine::RelationalMqo);
  EXPECT_FALSE(m.notApplicable.has_value());
  EXPECT_EQ(m.predictedSourceScans, 1u);

  auto chain = parse("SELECT * WHERE { ?x ex:l0 ?y . ?y ex:l1 ?z . ?z ex:a0 ?v }");
  auto cu = planner::predictJobCount(chain, Engine::RelationalUnion);
  EXPECT_EQ(cu.predictedJobs, 6u);
  EXPECT_EQ(cu.predictedSourceScans, 3u);
  EXPECT_EQ(planner::predictJobCount(chain, Engine::Ntga).predictedJobs, 3u);

  EXPECT_EQ(planner::predictJobCount(parse(starUnion(17)), Engine::RelationalUnion).predictedJobs, 18u);
  EXPECT_EQ(planner::predictJobCount(query::parseQuery(bench::corpusQuery("UQ1+").text), Engine::RelationalUnion)
                .predictedJobs,
            18u);
  EXPECT_EQ(planner::predictJobCount(parse("SELECT * WHERE { ?s ex:a0 ?o }"), Engine::RelationalUnion).predictedJobs,
            2u);
  EXPECT_EQ(planner::predictJobCount(parse("SELECT * WHERE { ?s ex:a0 ?o }"), Engine::Ntga).predictedJobs, 1u);
}

TEST(Prediction, NotApplicableReported) {
  auto m = planner::predictJobCount(query::parseQuery(bench::corpusQuery("UQ3").text), Engine::RelationalMqo);
  ASSERT_TRUE(m.notApplicable.has_value());
  EXPECT_TRUE(m.toJson().contains("notApplicable"));
}

TEST(Planner, EngineNames) {
  for (auto e : {Engine::Ntga, Engine::RelationalUnion, Engine::RelationalMqo})
    EXPECT_EQ(planner::parseEngine(planner::toString(e)), e);
  EXPECT_EQ(planner::parseEngine("relational-mqo"), Engine::RelationalMqo);
  EXPECT_THROW(planner::parseEngine("hive"), std::invalid_argument);
}

TEST(Planner, SkeletonsMatchPrediction) {
  rdf::Dictionary dict;
  auto q = query::parseQuery(bench::corpusQuery("UQ18").text);
  EXPECT_EQ(planner::planNtga(q, dict).jobs.size(), planner::predictJobCount(q, Engine::Ntga).predictedJobs);
  EXPECT_EQ(planner::planRelational(q, Engine::RelationalUnion, dict).jobs.size(),
            planner::predictJobCount(q, Engine::RelationalUnion).predictedJobs);
  auto k12 = parse(starUnion(12));
  auto w = planner::planRelational(k12, Engine::RelationalMqo, dict);
  size_t readers = 0;
  for (const auto& j : w.jobs)
    readers += std::count(j.inputs.begin(), j.inputs.end(), exec::kSourceDataset);
  EXPECT_EQ(readers, 1u);
  auto text = planner::describeWorkflow(w);
  EXPECT_NE(text.find("mqo.root"), std::string::npos);
}

TEST(PredictionProperty, CorpusMatchesMeasurement) {
  auto data = bench::genSynthetic(bench::corpusDataSpec(20000));
  for (const auto& cq : bench::corpus()) {
    checkPredictionMatches(query::parseQuery(cq.text), data.data, cq.name);
  }
}

TEST(PredictionProperty, RandomUcqsMatchMeasurement) {
  std::mt19937_64 rng(8);
  auto data = bench::genSynthetic({31, 4, 2, 150, 0.2, 3, 6, 4});
  for (int iter = 0; iter < 100; ++iter) {
    auto text = testkit::randomUcqText(rng, 31, 6, 4, 20, 4);
    checkPredictionMatches(query::parseQuery(text), data.data, text);
  }
}
