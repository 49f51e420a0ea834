#pragma once

#include <string>
#include <vector>

#include "tgq/bench/synthetic.hpp"

namespace tgq::bench {

/// Reconstructed testbed query over the synthetic vocabulary (ex:C*,
/// ex:a*, ex:l*). Shapes follow the reference per-query statistics.
struct CorpusQuery {
  std::string name;
  std::string text;
  bool isUnion = false;
};

const std::vector<CorpusQuery>& corpus();
const CorpusQuery& corpusQuery(const std::string& name);

/// Generator settings the corpus vocabulary needs (classes up to C29,
/// attributes a0..a5, links l0..l3) scaled to about `triples` data triples.
SyntheticSpec corpusDataSpec(size_t triples, std::uint64_t seed = 7);

}  // namespace tgq::bench
