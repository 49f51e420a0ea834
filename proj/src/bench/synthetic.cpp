#include "tgq/bench/synthetic.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "tgq/rdf/vocab.hpp"

namespace tgq::bench {

using rdf::Term;

Term exClass(size_t i) { return Term::iri(kExampleNs + "C" + std::to_string(i)); }
Term exInstance(size_t i) { return Term::iri(kExampleNs + "i" + std::to_string(i)); }
Term exAttribute(size_t j) { return Term::iri(kExampleNs + "a" + std::to_string(j)); }
Term exLink(size_t j) { return Term::iri(kExampleNs + "l" + std::to_string(j)); }
Term exValue(size_t k) { return Term::literal("v" + std::to_string(k)); }

namespace {

// mt19937_64 output is fixed by the standard; distributions are not.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  size_t below(size_t n) { return n ? static_cast<size_t>(gen() % n) : 0; }
  double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
};

}  // namespace

SyntheticData genSynthetic(const SyntheticSpec& spec) {
  if (spec.classes == 0 || spec.fanout == 0) throw std::invalid_argument("classes and fanout must be positive");
  namespace v = rdf::vocab;
  const Term type = Term::iri(std::string(v::kType));
  const Term sco = Term::iri(std::string(v::kSubClassOf));
  const Term spo = Term::iri(std::string(v::kSubPropertyOf));
  const Term dom = Term::iri(std::string(v::kDomain));
  const Term rng = Term::iri(std::string(v::kRange));

  SyntheticData out;
  Rng r(spec.seed);
  rdf::GraphBuilder schema;

  size_t made = 1;
  std::vector<size_t> frontier{0};
  size_t level = 0;
  while (level < spec.depth && made < spec.classes && !frontier.empty()) {
    ++level;
    size_t remaining = spec.classes - made;
    size_t reserve = spec.depth - level;
    size_t budget = remaining > reserve ? remaining - reserve : 1;
    size_t count = std::min(budget, frontier.size() * spec.fanout);
    count = std::max<size_t>(count, 1);
    std::vector<size_t> next;
    for (size_t i = 0; i < count; ++i) {
      size_t child = made++;
      schema.add(exClass(child), sco, exClass(frontier[i / spec.fanout]));
      next.push_back(child);
    }
    frontier = std::move(next);
  }
  out.classCount = made;
  out.hierarchyDepth = level;

  for (size_t j = 0; j < spec.attributes; ++j) {
    if (j % 3 == 0) schema.add(exAttribute(j), dom, exClass((j * 7 + 1) % made));
    if (j % 3 == 1) schema.add(exAttribute(j), spo, exAttribute(j - 1));
  }
  for (size_t j = 0; j < spec.links; ++j) {
    if (j % 2 == 0) {
      schema.add(exLink(j), dom, exClass((j * 5 + 2) % made));
      schema.add(exLink(j), rng, exClass((j * 3 + 1) % made));
    }
  }

  rdf::GraphBuilder data;
  const size_t pool = std::max<size_t>(2, spec.instances / 3);
  auto multiplicity = [&] { return r.unit() < spec.mvpRate ? 2 + r.below(3) : 1; };
  for (size_t n = 0; n < spec.instances; ++n) {
    Term s = exInstance(n);
    data.add(s, type, exClass(r.below(made)));
    for (size_t j = 0; j < spec.attributes; ++j) {
      if (r.unit() >= 0.6) continue;
      for (size_t m = multiplicity(); m > 0; --m) data.add(s, exAttribute(j), exValue(r.below(pool)));
    }
    for (size_t j = 0; j < spec.links; ++j) {
      if (r.unit() >= 0.5) continue;
      for (size_t m = multiplicity(); m > 0; --m) data.add(s, exLink(j), exInstance(r.below(spec.instances)));
    }
  }
  out.schema = std::move(schema).build();
  out.data = std::move(data).build();
  return out;
}

}  // namespace tgq::bench
