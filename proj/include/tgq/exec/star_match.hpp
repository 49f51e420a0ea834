#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tgq/exec/bound_query.hpp"

namespace tgq::exec {

/// Triples of one subject with property `p`; `triples` sorted by (p, o).
std::span<const IdTriple> withProperty(std::span<const IdTriple> triples, TermId p);

/// True when the subject's property set covers the star and every ground
/// object constraint has a witness.
bool starAdmits(const BoundStar& star, std::span<const IdTriple> triples);

using BindingFn = std::function<void(std::vector<TermId>&)>;

/// Enumerates every extension of `binding` that maps the star onto triples
/// of `subject`. Pre-bound variables must agree. `triples` belong to
/// `subject` and are sorted by (p, o). The binding is restored on return.
void matchStar(const BoundStar& star, TermId subject, std::span<const IdTriple> triples,
               std::vector<TermId>& binding, const BindingFn& onMatch);

}  // namespace tgq::exec
