#pragma once

#include <cstdint>
#include <string>

#include "tgq/rdf/graph.hpp"

namespace tgq::bench {

inline const std::string kExampleNs = "http://example.org/";

struct SyntheticSpec {
  size_t classes = 31;
  size_t depth = 4;
  size_t fanout = 2;
  size_t instances = 1000;
  /// Probability that an instance gets 2-4 values for a property.
  double mvpRate = 0.1;
  std::uint64_t seed = 1;
  size_t attributes = 6;  // ex:a0.. with literal values
  size_t links = 3;       // ex:l0.. pointing at instances
};

struct SyntheticData {
  rdf::Graph data;
  rdf::Graph schema;
  size_t classCount = 0;
  size_t hierarchyDepth = 0;
};

/// Taxonomy ex:C0 (root) .. filled level by level, keeping one class per
/// remaining level so the requested depth is reached whenever the class
/// budget allows. Attributes get domains, links domains and ranges, and
/// some attributes a super-property. Deterministic for a fixed spec.
SyntheticData genSynthetic(const SyntheticSpec& spec);

rdf::Term exClass(size_t i);
rdf::Term exInstance(size_t i);
rdf::Term exAttribute(size_t j);
rdf::Term exLink(size_t j);
rdf::Term exValue(size_t k);

}  // namespace tgq::bench
