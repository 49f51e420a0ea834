#pragma once

#include <string_view>

namespace tgq::rdf::vocab {

inline constexpr std::string_view kRdfNs =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs =
    "http://www.w3.org/2000/01/rdf-schema#";

inline constexpr std::string_view kType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kSubClassOf =
    "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kSubPropertyOf =
    "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline constexpr std::string_view kDomain =
    "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view kRange =
    "http://www.w3.org/2000/01/rdf-schema#range";

/// True for the four schema-level properties handled by the closure.
constexpr bool isSchemaProperty(std::string_view iri) {
  return iri == kSubClassOf || iri == kSubPropertyOf || iri == kDomain ||
         iri == kRange;
}

/// True for rdf:type and the four schema-level properties.
constexpr bool isRdfsVocabulary(std::string_view iri) {
  return iri == kType || isSchemaProperty(iri);
}

}  // namespace tgq::rdf::vocab
