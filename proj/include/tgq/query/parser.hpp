#pragma once

#include <string_view>

#include "tgq/query/ast.hpp"

namespace tgq::query {

/// Parses the supported SPARQL subset:
///
///   PREFIX p: <iri>
///   SELECT [DISTINCT] (?v ... | *) [WHERE] { group }
///
/// where a group holds triple patterns (with `;` and `,` shorthand and `a`
/// for rdf:type), nested `{ } UNION { }` blocks and `OPTIONAL { }`. Unions
/// are distributed to the top level, so the result is a flat list of
/// conjunctive branches, each already decomposed into stars.
///
/// Throws SyntaxError or UnsupportedConstruct.
UCQ parseQuery(std::string_view text);

}  // namespace tgq::query
