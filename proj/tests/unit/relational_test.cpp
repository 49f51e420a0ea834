#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "tgq/bench/corpus.hpp"
#include "tgq/bench/oracle.hpp"
#include "tgq/bench/synthetic.hpp"
#include "tgq/ntga/engine.hpp"
#include "tgq/query/parser.hpp"
#include "tgq/relational/mqo_plan.hpp"
#include "tgq/relational/union_plan.hpp"

using namespace tgq;
using namespace tgq::relational;

namespace {

query::UCQ parse(const std::string& body) { return query::parseQuery(std::string(testkit::kPrefix) + body); }

const bench::SyntheticData& smallData() {
  static const auto data = bench::genSynthetic({31, 4, 2, 300, 0.2, 9, 6, 4});
  return data;
}

MqoPlan planOrFail(const query::UCQ& q) {
  auto p = buildMqoPlan(q);
  if (auto* na = std::get_if<NotApplicable>(&p)) {
    ADD_FAILURE() << "not applicable: " << na->reason;
    return {};
  }
  return std::get<MqoPlan>(p);
}

std::string subjectKey(const query::TriplePattern& t, const std::string& subject) {
  query::TriplePattern c = t;
  if (query::isVariable(c.s) && query::asVariable(c.s).name == subject) c.s = query::Variable{"$S"};
  return c.toString();
}

// Largest subset of one star of branch 0 present in some star of every other
// branch once star subjects are identified.
size_t bruteForceRootSize(const query::UCQ& q) {
  size_t best = 0;
  for (const auto& star : q.branches[0].stars) {
    if (!query::isVariable(star.subject)) continue;
    std::string subj = query::asVariable(star.subject).name;
    size_t n = star.patterns.size();
    for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
      std::set<std::string> want;
      for (size_t i = 0; i < n; ++i)
        if (mask & (size_t{1} << i)) want.insert(subjectKey(star.patterns[i], subj));
      bool everywhere = true;
      for (size_t b = 1; b < q.branches.size() && everywhere; ++b) {
        bool found = false;
        for (const auto& other : q.branches[b].stars) {
          if (!query::isVariable(other.subject)) continue;
          std::set<std::string> have;
          for (const auto& p : other.patterns)
            have.insert(subjectKey(p, query::asVariable(other.subject).name));
          if (std::includes(have.begin(), have.end(), want.begin(), want.end())) found = true;
        }
        everywhere = found;
      }
      if (everywhere) best = std::max(best, want.size());
    }
  }
  return best;
}

// Branches sharing the root `?r a0 ?v ; l0 ?y`, each with a residual on ?r
// or ?y, or none.
std::string mqoShapedQuery(std::mt19937_64& rng) {
  std::ostringstream q;
  q << "SELECT * WHERE { ";
  size_t k = 1 + rng() % 4;
  for (size_t b = 0; b < k; ++b) {
    if (b > 0) q << " UNION ";
    std::string r = rng() % 2 ? "?r" : "?r" + std::to_string(b);
    q << "{ " << r << " ex:a0 ?v ; ex:l0 ?y . ";
    switch (rng() % 4) {
      case 0: break;
      case 1: q << r << " a ex:C" << rng() % 15 << " . "; break;
      case 2: q << "?y ex:a" << 1 + rng() % 3 << " ?w" << b << " . "; break;
      default:
        q << "?y a ex:C" << rng() % 7 << " ; ex:a" << 1 + rng() % 3 << " \"v" << rng() % 3 << "\" . ";
        break;
    }
    q << "}";
  }
  q << " }";
  return q.str();
}

}  // namespace

TEST(UnionPlan, JobFormula) {
  const auto& g = smallData().data;
  auto uq12 = query::parseQuery(bench::corpusQuery("UQ12+").text);
  auto plan = compileUnionPlan(uq12, *g.dictionary());
  EXPECT_EQ(plan.predictedJobs(), 13u);
  EXPECT_EQ(plan.predictedScans(), 12u);
  auto r = executeUnionPlan(uq12, g);
  EXPECT_EQ(r.stats.jobsExecuted, 13u);
  EXPECT_EQ(r.stats.totalSourceScans(), 12u);

  auto one = parse("SELECT * WHERE { ?s a ex:C1 ; ex:a0 ?v }");
  auto r1 = executeUnionPlan(one, g);
  EXPECT_EQ(r1.stats.jobsExecuted, 2u);

  auto chain = parse("SELECT * WHERE { ?x ex:l0 ?y . ?y ex:l1 ?z . ?z ex:a0 ?v }");
  auto r3 = executeUnionPlan(chain, g);
  EXPECT_EQ(r3.stats.jobsExecuted, 2u * 3 - 1 + 1);
  EXPECT_EQ(r3.stats.totalSourceScans(), 3u);
}

TEST(UnionPlan, RejectsOptional) {
  auto q = parse("SELECT * WHERE { ?s ex:a0 ?v OPTIONAL { ?s ex:a1 ?w } }");
  EXPECT_THROW(requireNoOptionals(q), std::exception);
}

TEST(MqoPlan, NotApplicableForUQ3) {
  auto p = buildMqoPlan(query::parseQuery(bench::corpusQuery("UQ3").text));
  ASSERT_TRUE(std::holds_alternative<NotApplicable>(p));
  EXPECT_FALSE(std::get<NotApplicable>(p).reason.empty());
}

TEST(MqoPlan, MultiStarResidualNotApplicable) {
  auto p = buildMqoPlan(query::parseQuery(bench::corpusQuery("UQ2+").text));
  EXPECT_TRUE(std::holds_alternative<NotApplicable>(p));
}

TEST(MqoPlan, IdenticalBranches) {
  auto q = parse("SELECT * WHERE { { ?s a ex:C1 ; ex:a0 ?v } UNION { ?s a ex:C1 ; ex:a0 ?v } }");
  auto plan = planOrFail(q);
  EXPECT_EQ(plan.rootPattern.size(), 2u);
  for (const auto& o : plan.optionalBranches) EXPECT_TRUE(o.empty());
  EXPECT_TRUE(plan.groups.empty());
  EXPECT_EQ(plan.predictedJobs(), 2u);
}

TEST(MqoPlan, SharedStarBecomesRoot) {
  std::vector<std::string> texts = {bench::corpusQuery("UQ12+").text, bench::corpusQuery("UQ4+").text,
                                     std::string(testkit::kPrefix) +
                                         "SELECT * WHERE { { ?a a ex:C1 ; ex:a0 ?v ; ex:a1 ?w } UNION "
                                         "{ ?b ex:a0 ?v ; ex:a1 ?w ; ex:l0 ?c } }"};
  for (const auto& text : texts) {
    auto q = query::parseQuery(text);
    auto plan = planOrFail(q);
    EXPECT_EQ(plan.rootPattern.size(), bruteForceRootSize(q)) << text;
  }
  auto uq12 = planOrFail(query::parseQuery(bench::corpusQuery("UQ12+").text));
  ASSERT_EQ(uq12.rootPattern.size(), 1u);
  EXPECT_EQ(query::toString(uq12.rootPattern[0].p), "<http://example.org/a3>");
}

TEST(MqoPlan, SingleSourceScan) {
  const auto& g = smallData().data;
  auto q = query::parseQuery(bench::corpusQuery("UQ12+").text);
  auto plan = planOrFail(q);
  auto r = executeMqoPlan(plan, g);
  EXPECT_EQ(r.stats.totalSourceScans(), 1u);
  EXPECT_EQ(r.stats.jobsExecuted, plan.predictedJobs());
  EXPECT_EQ(r.solutions, executeUnionPlan(q, g).solutions);
}

TEST(MqoPlan, FiltersFalsePositives) {
  rdf::GraphBuilder b;
  using testkit::ex;
  b.add(ex("i1"), ex("a3"), rdf::Term::literal("n1"));
  b.add(ex("i1"), testkit::rdfType(), ex("C1"));
  b.add(ex("i2"), ex("a3"), rdf::Term::literal("n2"));  // root only
  b.add(ex("i3"), ex("a3"), rdf::Term::literal("n3"));
  b.add(ex("i3"), testkit::rdfType(), ex("C2"));
  auto g = std::move(b).build();
  auto q = parse("SELECT ?s ?n WHERE { { ?s a ex:C1 ; ex:a3 ?n } UNION { ?s a ex:C2 ; ex:a3 ?n } }");
  auto plan = planOrFail(q);
  auto r = executeMqoPlan(plan, g);
  EXPECT_EQ(r.solutions.size(), 2u);
  EXPECT_EQ(r.solutions, bench::oracleMatch(q, g));
  size_t rootRows = r.stats.jobs.front().outputRecords;
  EXPECT_GE(rootRows, 3u);
  EXPECT_EQ(r.stats.jobs.back().id, "mqo.filter");
}

TEST(MqoPlan, SingleBranchEqualsRootMatches) {
  const auto& g = smallData().data;
  auto q = parse("SELECT * WHERE { ?s a ex:C3 ; ex:a0 ?v }");
  auto plan = planOrFail(q);
  EXPECT_TRUE(plan.optionalBranches[0].empty());
  EXPECT_EQ(executeMqoPlan(plan, g).solutions, bench::oracleMatch(q, g));
}

TEST(MqoPlan, OptionalFormInput) {
  const auto& g = smallData().data;
  auto q = parse("SELECT * WHERE { ?s ex:a0 ?v ; ex:l0 ?y OPTIONAL { ?y ex:a1 ?w } OPTIONAL { ?s a ex:C2 } }");
  auto u = unionFromOptionalForm(q);
  EXPECT_EQ(u.width(), 2u);
  auto plan = planOrFail(u);
  EXPECT_EQ(executeMqoPlan(plan, g).solutions, executeUnionPlan(u, g).solutions);
}

// Union, MQO (when applicable) and NTGA plans agree with each other and with
// the oracle.
TEST(RelationalProperty, TriEngineAgreement) {
  std::mt19937_64 rng(404);
  size_t mqoRuns = 0, nonEmpty = 0;
  for (int iter = 0; iter < 120; ++iter) {
    auto data = bench::genSynthetic({15, 3, 2, 20 + rng() % 60, 0.3, rng(), 4, 2});
    const auto& g = data.data;
    std::string text = iter % 2 == 0 ? std::string(testkit::kPrefix) + mqoShapedQuery(rng)
                                     : testkit::randomUcqText(rng, 15, 4, 2, 4);
    auto q = query::parseQuery(text);
    exec::ExecOptions opts{static_cast<std::uint32_t>(1 + rng() % 4), 1};
    auto expect = bench::oracleMatch(q, g);
    if (!expect.empty()) ++nonEmpty;
    EXPECT_EQ(executeUnionPlan(q, g, opts).solutions, expect) << text;
    EXPECT_EQ(ntga::executeNtga(q, g, opts).solutions, expect) << text;
    auto p = buildMqoPlan(q);
    if (auto* plan = std::get_if<MqoPlan>(&p)) {
      ++mqoRuns;
      auto r = executeMqoPlan(*plan, g, opts);
      EXPECT_EQ(r.solutions, expect) << text;
      EXPECT_EQ(r.stats.totalSourceScans(), 1u);
      EXPECT_EQ(r.stats.jobsExecuted, plan->predictedJobs());
    }
  }
  EXPECT_GE(mqoRuns, 60u);
  EXPECT_GT(nonEmpty, 30u);
}

// Branches of one optional group must not multiply: six branches over a
// subject with twenty values give 6 * 20 joined rows, not 20^6.
TEST(MqoPlan, GroupBranchesStayLinear) {
  using testkit::ex;
  rdf::GraphBuilder b;
  b.add(ex("i1"), testkit::rdfType(), ex("C1"));
  for (int v = 0; v < 20; ++v) b.add(ex("i1"), ex("a0"), rdf::Term::literal("v" + std::to_string(v)));
  auto g = std::move(b).build();
  std::string text = "SELECT * WHERE { ";
  for (int k = 0; k < 6; ++k) {
    if (k) text += " UNION ";
    text += "{ ?s a ex:C1 ; ex:a0 ?x" + std::to_string(k) + " }";
  }
  auto q = parse(text + " }");
  auto plan = planOrFail(q);
  ASSERT_EQ(plan.groups.size(), 1u);
  EXPECT_EQ(plan.groups[0].branches.size(), 6u);
  auto r = executeMqoPlan(plan, g);
  EXPECT_EQ(r.solutions, bench::oracleMatch(q, g));
  ASSERT_EQ(r.stats.jobs.size(), 3u);
  EXPECT_EQ(r.stats.jobs[1].outputRecords, 6u * 20);
}
