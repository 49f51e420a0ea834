#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

namespace tgq::rdf {

enum class TermKind : unsigned char { Iri, Literal, Blank };

/// An RDF resource. Literals carry an optional datatype IRI or language tag;
/// comparison is bit-exact over all components (no value-space semantics).
struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;     // IRI string, literal lexical form, or blank label
  std::string datatype;  // literals only, empty when absent
  std::string lang;      // literals only, empty when absent

  static Term iri(std::string iri);
  static Term literal(std::string lexical, std::string datatype = {},
                      std::string lang = {});
  static Term blank(std::string label);

  bool isIri() const { return kind == TermKind::Iri; }
  bool isLiteral() const { return kind == TermKind::Literal; }
  bool isBlank() const { return kind == TermKind::Blank; }

  /// N-Triples surface form, e.g. `<http://x>`, `"a"@en`, `_:b0`.
  std::string toNTriples() const;

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

struct TermHash {
  size_t operator()(const Term& t) const noexcept;
};

/// Escapes a literal lexical form for N-Triples output.
std::string escapeLiteral(std::string_view lexical);

}  // namespace tgq::rdf
