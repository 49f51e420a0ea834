#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tgq/rdf/graph.hpp"
#include "tgq/rdf/vocab.hpp"

namespace tgq::testkit {

inline rdf::Term ex(const std::string& local) { return rdf::Term::iri("http://example.org/" + local); }
inline rdf::Term rdfType() { return rdf::Term::iri(std::string(rdf::vocab::kType)); }
inline rdf::Term subClassOf() { return rdf::Term::iri(std::string(rdf::vocab::kSubClassOf)); }
inline rdf::Term subPropertyOf() { return rdf::Term::iri(std::string(rdf::vocab::kSubPropertyOf)); }
inline rdf::Term domainOf() { return rdf::Term::iri(std::string(rdf::vocab::kDomain)); }
inline rdf::Term rangeOf() { return rdf::Term::iri(std::string(rdf::vocab::kRange)); }

inline constexpr const char* kPrefix = "PREFIX ex: <http://example.org/>\n";

struct SmallInstance {
  rdf::Graph data;
  rdf::Graph schema;
};

// Random schema over ex:K0..ex:K{classes-1} and ex:q0..ex:q3, with data over
// ex:n0..ex:n9 and a few literals.
inline SmallInstance randomInstance(std::mt19937_64& rng, size_t classes, size_t triples) {
  rdf::GraphBuilder schema, data;
  auto cls = [&] { return ex("K" + std::to_string(rng() % classes)); };
  auto prop = [&] { return ex("q" + std::to_string(rng() % 4)); };
  size_t schemaTriples = 2 + rng() % 8;
  for (size_t i = 0; i < schemaTriples; ++i) {
    switch (rng() % 4) {
      case 0: schema.add(cls(), subClassOf(), cls()); break;
      case 1: schema.add(prop(), subPropertyOf(), prop()); break;
      case 2: schema.add(prop(), domainOf(), cls()); break;
      default: schema.add(prop(), rangeOf(), cls()); break;
    }
  }
  auto node = [&] { return ex("n" + std::to_string(rng() % 10)); };
  for (size_t i = 0; i < triples; ++i) {
    if (rng() % 3 == 0) {
      data.add(node(), rdfType(), cls());
    } else if (rng() % 4 == 0) {
      data.add(node(), prop(), rdf::Term::literal("v" + std::to_string(rng() % 3)));
    } else {
      data.add(node(), prop(), node());
    }
  }
  return {std::move(data).build(), std::move(schema).build()};
}

// Conjunctive query over the vocabulary of randomInstance.
inline std::string randomSmallQuery(std::mt19937_64& rng, size_t classes) {
  const char* vars[] = {"?x", "?y", "?z"};
  std::ostringstream q;
  q << kPrefix << "SELECT * WHERE { ";
  size_t n = 1 + rng() % 3;
  for (size_t i = 0; i < n; ++i) {
    const char* s = vars[rng() % 2];
    if (rng() % 2 == 0) {
      q << s << " a ex:K" << rng() % classes << " . ";
    } else {
      q << s << " ex:q" << rng() % 4 << " " << vars[rng() % 3] << " . ";
    }
  }
  q << "}";
  return q.str();
}

// A random branch over the synthetic generator's vocabulary: a chain or tree
// of stars linked by ex:l* edges, attribute patterns with variable or
// constant objects and occasional shared attribute variables (O-O joins).
inline std::string randomBranch(std::mt19937_64& rng, size_t classes, size_t attributes, size_t links,
                                const std::string& suffix, size_t maxStars = 3) {
  std::ostringstream b;
  size_t stars = 1 + rng() % maxStars;
  std::vector<std::string> subj;
  for (size_t i = 0; i < stars; ++i) subj.push_back("?s" + std::to_string(i) + suffix);
  for (size_t i = 0; i < stars; ++i) {
    const std::string& s = subj[i];
    if (rng() % 2 == 0) b << s << " a ex:C" << rng() % classes << " . ";
    size_t attrs = rng() % 3;
    for (size_t a = 0; a < attrs; ++a) {
      size_t j = rng() % attributes;
      b << s << " ex:a" << j << " ";
      switch (rng() % 4) {
        case 0: b << "\"v" << rng() % 4 << "\""; break;
        case 1: b << "?shared" << suffix; break;
        default: b << "?v" << i << "_" << a << suffix; break;
      }
      b << " . ";
    }
    if (i + 1 < stars) {
      size_t parent = rng() % (i + 1);
      b << subj[parent] << " ex:l" << rng() % links << " " << subj[i + 1] << " . ";
    }
    if (attrs == 0 && i + 1 == stars) b << s << " ex:a" << rng() % attributes << " ?w" << i << suffix << " . ";
  }
  return b.str();
}

inline std::string randomUcqText(std::mt19937_64& rng, size_t classes, size_t attributes, size_t links,
                                 size_t maxBranches = 3, size_t maxStars = 3) {
  std::ostringstream q;
  q << "PREFIX ex: <http://example.org/>\nSELECT * WHERE { ";
  size_t branches = 1 + rng() % maxBranches;
  for (size_t b = 0; b < branches; ++b) {
    if (b > 0) q << " UNION ";
    std::string suffix = rng() % 2 == 0 ? "" : "_b" + std::to_string(b);
    q << "{ " << randomBranch(rng, classes, attributes, links, suffix, maxStars) << "}";
  }
  q << " }";
  return q.str();
}

}  // namespace tgq::testkit
