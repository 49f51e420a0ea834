#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "tgq/rdf/ntriples.hpp"
#include "tgq/rdf/vocab.hpp"

using namespace tgq::rdf;

namespace {

const std::string kNcbi = "http://example.org/taxon/";

std::string iri(const std::string& local) { return "<" + kNcbi + local + ">"; }

}  // namespace

TEST(NTriples, ParsesSubClassOfTriple) {
  std::string text = iri("9606") + " <" + std::string(vocab::kSubClassOf) + "> " + iri("40674") + " .\n";
  auto r = parseNTriples(text);
  ASSERT_EQ(r.graph.size(), 1u);
  TermTriple expected{Term::iri(kNcbi + "9606"), Term::iri(std::string(vocab::kSubClassOf)),
                      Term::iri(kNcbi + "40674")};
  EXPECT_TRUE(r.graph.contains(expected));
}

TEST(NTriples, EmptyInput) {
  auto r = parseNTriples(std::string_view{});
  EXPECT_TRUE(r.graph.empty());
  EXPECT_EQ(serializeNTriples(r.graph), "");
}

TEST(NTriples, DuplicatesCollapse) {
  std::string line = iri("a") + " " + iri("p") + " " + iri("b") + " .\n";
  auto r = parseNTriples(line + line);
  EXPECT_EQ(r.graph.size(), 1u);
  EXPECT_EQ(r.linesRead, 2u);
}

TEST(NTriples, CommentsAndBlankLinesIgnored) {
  std::string text = "# header\n\n" + iri("a") + " " + iri("p") + " \"x\" .\n   \n";
  auto r = parseNTriples(text);
  EXPECT_EQ(r.graph.size(), 1u);
}

TEST(NTriples, LiteralSerialization) {
  GraphBuilder b;
  b.add(Term::iri(kNcbi + "8801"), Term::iri(kNcbi + "commonName"), Term::literal("Ostrich"));
  Graph g = std::move(b).build();
  std::string out = serializeNTriples(g);
  EXPECT_NE(out.find("\"Ostrich\""), std::string::npos);
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 1);
}

TEST(NTriples, LiteralVariantsAreDistinct) {
  std::string text = iri("a") + " " + iri("p") + " \"1\" .\n" +
                     iri("a") + " " + iri("p") + " \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n" +
                     iri("a") + " " + iri("p") + " \"1\"@en .\n" +
                     "_:b0 " + iri("p") + " \"tab\\there \\\"q\\\"\" .\n";
  auto r = parseNTriples(text);
  EXPECT_EQ(r.graph.size(), 4u);
  auto again = parseNTriples(serializeNTriples(r.graph));
  EXPECT_EQ(again.graph, r.graph);
}

TEST(NTriples, StrictReportsLineNumber) {
  std::string text = iri("a") + " " + iri("p") + " " + iri("b") + " .\n" +
                     iri("a") + " " + iri("p") + " " + iri("b") + "\n";
  try {
    parseNTriples(text);
    FAIL() << "expected MalformedLine";
  } catch (const MalformedLine& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(NTriples, MalformedCases) {
  std::vector<std::string> bad = {
      iri("a") + " " + iri("p") + " " + iri("b"),             // no terminator
      "<http://x " + iri("p") + " " + iri("b") + " .",         // bad IRI bracket
      iri("a") + " " + iri("p") + " \"open .",                 // unterminated literal
  };
  for (const auto& line : bad) {
    EXPECT_THROW(parseNTriples(line + "\n"), MalformedLine) << line;
  }
}

TEST(NTriples, LenientSkipsAndCounts) {
  std::string good = iri("a") + " " + iri("p") + " " + iri("b") + " .\n";
  std::string text = good + "garbage\n" + iri("c") + " " + iri("p") + " \"x .\n" + good;
  ParseOptions opts;
  opts.strict = false;
  auto r = parseNTriples(text, opts);
  EXPECT_EQ(r.graph.size(), 1u);
  EXPECT_EQ(r.skippedLines, 2u);
  ASSERT_EQ(r.errors.size(), 2u);
  EXPECT_EQ(r.errors[0].line(), 2u);
  EXPECT_EQ(r.errors[1].line(), 3u);
}

TEST(NTriples, SerializeIsSortedByTermForms) {
  GraphBuilder b;
  b.add(Term::iri("http://z"), Term::iri("http://p"), Term::iri("http://o"));
  b.add(Term::iri("http://a"), Term::iri("http://p"), Term::iri("http://o"));
  std::string out = serializeNTriples(std::move(b).build());
  EXPECT_LT(out.find("http://a"), out.find("http://z"));
}

TEST(Dictionary, InternIsStableAndLookupMisses) {
  Dictionary d;
  TermId a = d.intern(Term::iri("http://a"));
  EXPECT_EQ(d.intern(Term::iri("http://a")), a);
  EXPECT_EQ(d.term(a), Term::iri("http://a"));
  EXPECT_EQ(d.lookup(Term::iri("http://missing")), kNoTerm);
  EXPECT_FALSE(d.find(Term::literal("http://a")).has_value());
}

TEST(Graph, EqualityAcrossDictionaries) {
  GraphBuilder b1, b2;
  b2.add(Term::iri("http://unrelated"), Term::iri("http://p"), Term::iri("http://q"));
  Graph pad = std::move(b2).build();
  GraphBuilder b3(pad.dictionary());
  b1.add(Term::iri("http://s"), Term::iri("http://p"), Term::literal("v"));
  b3.add(Term::iri("http://s"), Term::iri("http://p"), Term::literal("v"));
  EXPECT_EQ(std::move(b1).build(), std::move(b3).build());
}

// Round trip and cardinality over random graphs.
TEST(NTriplesProperty, RoundTripAndCardinality) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    std::ostringstream text;
    size_t lines = rng() % 30;
    for (size_t i = 0; i < lines; ++i) {
      text << iri("s" + std::to_string(rng() % 5)) << ' ' << iri("p" + std::to_string(rng() % 3)) << ' ';
      switch (rng() % 4) {
        case 0: text << iri("o" + std::to_string(rng() % 5)); break;
        case 1: text << "\"lit " << rng() % 4 << "\""; break;
        case 2: text << "\"l\"@en"; break;
        default: text << "_:b" << rng() % 3; break;
      }
      text << " .\n";
    }
    auto r = parseNTriples(text.str());
    EXPECT_LE(r.graph.size(), lines);
    auto back = parseNTriples(serializeNTriples(r.graph));
    EXPECT_EQ(back.graph, r.graph);
  }
}
