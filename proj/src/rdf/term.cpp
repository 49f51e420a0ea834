#include "tgq/rdf/term.hpp"

#include <functional>

namespace tgq::rdf {

Term Term::iri(std::string iri) {
  return Term{TermKind::Iri, std::move(iri), {}, {}};
}

Term Term::literal(std::string lexical, std::string datatype,
                   std::string lang) {
  return Term{TermKind::Literal, std::move(lexical), std::move(datatype),
              std::move(lang)};
}

Term Term::blank(std::string label) {
  return Term{TermKind::Blank, std::move(label), {}, {}};
}

std::string escapeLiteral(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size() + 2);
  for (char c : lexical) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Term::toNTriples() const {
  switch (kind) {
    case TermKind::Iri:
      return "<" + value + ">";
    case TermKind::Blank:
      return "_:" + value;
    case TermKind::Literal: {
      std::string out = "\"" + escapeLiteral(value) + "\"";
      if (!lang.empty()) {
        out += "@" + lang;
      } else if (!datatype.empty()) {
        out += "^^<" + datatype + ">";
      }
      return out;
    }
  }
  return {};
}

size_t TermHash::operator()(const Term& t) const noexcept {
  size_t h = std::hash<std::string>{}(t.value);
  h ^= std::hash<std::string>{}(t.datatype) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= std::hash<std::string>{}(t.lang) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 31 + static_cast<size_t>(t.kind);
}

}  // namespace tgq::rdf
