#pragma once

#include <set>
#include <string>

#include "fmw/homsearch.hpp"
#include "fmw/structure.hpp"

namespace fmw {

/// Canonical key: the lexicographically least encoding of the structure over
/// all relabelings. Two structures over the same vocabulary have equal keys
/// iff they are isomorphic. Factorial in the universe size; structures above
/// `max_elements` are rejected with a BudgetError.
std::string canonical_key(const Structure& a, int max_elements = 8);

/// Relabelings restricted to those fixing `fixed` pointwise; keys agree iff
/// the structures are isomorphic over `fixed`.
std::string canonical_key_over(const Structure& a, const std::set<std::string>& fixed,
                               int max_elements = 8);

/// The canonical representative itself: relabeled onto e00, e01, ... so that
/// serialization equals the canonical key's structure.
Structure canonical_form(const Structure& a, int max_elements = 8);

/// Isomorphism tests; key-based for small structures, search-based beyond.
bool isomorphic(const Structure& a, const Structure& b);
bool isomorphic_over(const Structure& a, const Structure& b, const std::set<std::string>& fixed);

} // namespace fmw
