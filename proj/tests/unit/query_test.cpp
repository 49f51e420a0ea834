#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "tgq/bench/corpus.hpp"
#include "tgq/query/parser.hpp"
#include "tgq/query/stars.hpp"
#include "tgq/query/stats.hpp"

using namespace tgq::query;

namespace {

std::multiset<std::string> patternStrings(const std::vector<TriplePattern>& ps) {
  std::multiset<std::string> out;
  for (const auto& p : ps) out.insert(p.toString());
  return out;
}

std::set<std::multiset<std::string>> branchSet(const UCQ& q) {
  std::set<std::multiset<std::string>> out;
  for (const auto& b : q.branches) out.insert(patternStrings(b.patterns));
  return out;
}

}  // namespace

TEST(Parser, SingleStar) {
  auto q = parseQuery("SELECT ?s WHERE { ?s <type> <Taxon> . ?s <commonName> ?n }");
  ASSERT_EQ(q.width(), 1u);
  ASSERT_EQ(q.branches[0].stars.size(), 1u);
  EXPECT_EQ(q.branches[0].stars[0].patterns.size(), 2u);
  ASSERT_EQ(q.projection.size(), 1u);
  EXPECT_EQ(q.projection[0].name, "s");
}

TEST(Parser, TwoBranchUnion) {
  auto q = parseQuery(
      "SELECT ?s WHERE { { ?s <type> <Taxon> } UNION { ?s <commonName> ?n } }");
  EXPECT_EQ(q.width(), 2u);
  for (const auto& b : q.branches) EXPECT_EQ(b.stars.size(), 1u);
}

TEST(Parser, Unsupported) {
  EXPECT_THROW(parseQuery("SELECT ?s WHERE { ?s <p>+ ?o }"), UnsupportedConstruct);
  EXPECT_THROW(parseQuery("SELECT ?s WHERE { ?s <p> ?o FILTER(?o > 3) }"), UnsupportedConstruct);
  EXPECT_THROW(parseQuery("SELECT (COUNT(?s) AS ?c) WHERE { ?s <p> ?o }"), UnsupportedConstruct);
}

TEST(Parser, SyntaxErrorPosition) {
  try {
    parseQuery("SELECT ?s WHERE { ?s <p> }");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_GT(e.position(), 0u);
  }
  EXPECT_THROW(parseQuery("SELECT ?s WHERE { ?s <p> ?o "), SyntaxError);
}

TEST(Parser, PrefixesAndShorthand) {
  auto q = parseQuery(
      "PREFIX ex: <http://example.org/>\n"
      "SELECT * WHERE { ?s a ex:C ; ex:p ?o , \"lit\" }");
  ASSERT_EQ(q.width(), 1u);
  const auto& ps = q.branches[0].patterns;
  ASSERT_EQ(ps.size(), 3u);
  EXPECT_EQ(asTerm(ps[0].o), tgq::rdf::Term::iri("http://example.org/C"));
  EXPECT_EQ(asTerm(ps[2].o), tgq::rdf::Term::literal("lit"));
}

TEST(Parser, UnionFlatteningEquivalence) {
  auto a = parseQuery(
      "SELECT * WHERE { { ?s <a> ?o } UNION { { ?s <b> ?o } UNION { ?s <c> ?o } } }");
  auto b = parseQuery(
      "SELECT * WHERE { { ?s <a> ?o } UNION { ?s <b> ?o } UNION { ?s <c> ?o } }");
  EXPECT_EQ(a.width(), 3u);
  EXPECT_EQ(branchSet(a), branchSet(b));
}

TEST(Parser, UnionDistributesOverConjunction) {
  auto q = parseQuery(
      "SELECT * WHERE { ?s <k> ?x . { ?s <a> ?o } UNION { ?s <b> ?o } }");
  ASSERT_EQ(q.width(), 2u);
  for (const auto& b : q.branches) EXPECT_EQ(b.patterns.size(), 2u);
}

TEST(Parser, OptionalKept) {
  auto q = parseQuery("SELECT * WHERE { ?s <a> ?o OPTIONAL { ?s <b> ?v } }");
  ASSERT_EQ(q.width(), 1u);
  EXPECT_EQ(q.branches[0].optionals.size(), 1u);
}

TEST(Stars, SinglePattern) {
  auto q = parseQuery("SELECT * WHERE { ?s <p> ?o }");
  auto st = computeStats(q);
  EXPECT_EQ(st, (QueryStats{1, 1, {1}, "1", 0, 0, 1}));
}

TEST(Stars, UQ8Shape) {
  auto q = parseQuery(tgq::bench::corpusQuery("UQ8").text);
  const auto& b = q.branches[0];
  ASSERT_EQ(b.stars.size(), 3u);
  auto st = computeStats(q);
  EXPECT_EQ(st.edgesCell, "4:2:1");
  EXPECT_EQ(st.numSOJoins, 2u);
  EXPECT_EQ(st.numOOJoins, 0u);
}

TEST(Stars, CRQ9Shape) {
  auto q = parseQuery(tgq::bench::corpusQuery("CRQ9").text);
  auto st = computeStats(q);
  EXPECT_EQ(st.numStarPatterns, 5u);
  EXPECT_EQ(st.edgesCell, "1:3:1:1:2");
  EXPECT_EQ(st.numSOJoins, 3u);
  EXPECT_EQ(st.numOOJoins, 1u);
}

TEST(Stars, JoinEdgeOrientation) {
  auto q = parseQuery("SELECT * WHERE { ?x <l> ?y . ?y <a> ?v . ?z <b> ?v }");
  const auto& b = q.branches[0];
  ASSERT_EQ(b.joinEdges.size(), 2u);
  size_t so = 0, oo = 0;
  for (const auto& e : b.joinEdges) {
    if (e.kind == JoinKind::SubjectObject) {
      ++so;
      EXPECT_EQ(e.variable, "y");
      EXPECT_EQ(e.posA, Position::Object);
      EXPECT_EQ(e.posB, Position::Subject);
    } else {
      ++oo;
      EXPECT_EQ(e.variable, "v");
      EXPECT_LT(e.starA, e.starB);
    }
  }
  EXPECT_EQ(so, 1u);
  EXPECT_EQ(oo, 1u);
}

TEST(Stats, UnionRows) {
  auto uq4 = computeStats(parseQuery(tgq::bench::corpusQuery("UQ4+").text));
  EXPECT_EQ(uq4.numTriplePatterns, 24u);
  EXPECT_EQ(uq4.numStarPatterns, 12u);
  EXPECT_EQ(uq4.unionWidth, 12u);
  auto uq18 = computeStats(parseQuery(tgq::bench::corpusQuery("UQ18").text));
  EXPECT_EQ(uq18.numTriplePatterns, 10u);
  EXPECT_EQ(uq18.numStarPatterns, 5u);
  EXPECT_EQ(uq18.unionWidth, 6u);
}

// Every pattern lands in exactly one star; re-flattening gives the input.
TEST(StarsProperty, PartitionAndReorderInvariance) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> vars = {"a", "b", "c", "d"};
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<TriplePattern> ps;
    size_t n = 1 + rng() % 7;
    for (size_t i = 0; i < n; ++i) {
      TriplePattern t;
      t.s = Variable{vars[rng() % vars.size()]};
      t.p = tgq::rdf::Term::iri("http://p" + std::to_string(rng() % 4));
      if (rng() % 3 == 0)
        t.o = tgq::rdf::Term::literal("k");
      else
        t.o = Variable{vars[rng() % vars.size()]};
      ps.push_back(t);
    }
    auto gp = decomposeStars(ps);
    std::vector<TriplePattern> flat;
    std::set<std::string> subjects;
    for (const auto& s : gp.stars) {
      EXPECT_TRUE(subjects.insert(toString(s.subject)).second);
      for (const auto& p : s.patterns) {
        EXPECT_EQ(p.s, s.subject);
        flat.push_back(p);
      }
    }
    EXPECT_EQ(patternStrings(flat), patternStrings(ps));

    UCQ q1;
    q1.branches.push_back(gp);
    auto shuffled = ps;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    UCQ q2;
    q2.branches.push_back(decomposeStars(shuffled));
    auto s1 = computeStats(q1), s2 = computeStats(q2);
    EXPECT_EQ(s1.numTriplePatterns, s2.numTriplePatterns);
    EXPECT_EQ(s1.numStarPatterns, s2.numStarPatterns);
    EXPECT_EQ(s1.numSOJoins, s2.numSOJoins);
    EXPECT_EQ(s1.numOOJoins, s2.numOOJoins);
    auto e1 = s1.edgesPerStar, e2 = s2.edgesPerStar;
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    EXPECT_EQ(e1, e2);
  }
}
