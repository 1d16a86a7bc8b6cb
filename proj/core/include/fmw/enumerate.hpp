#pragma once

#include <functional>
#include <vector>

#include "fmw/structure.hpp"

namespace fmw {

/// Streams every structure over `v` with at most `max_size` elements, one
/// canonical representative per isomorphism class, in a fixed deterministic
/// order (size ascending, then by encoding). Universes are e00, e01, ...
/// The labeled configuration space is capped at `combo_cap` per size
/// (BudgetError beyond); each relation's tuple space must fit in 64 bits.
void for_each_structure(const Vocabulary& v, int max_size,
                        const std::function<void(const Structure&)>& fn,
                        long long combo_cap = 1LL << 26);

std::vector<Structure> enumerate_structures(const Vocabulary& v, int max_size,
                                            long long combo_cap = 1LL << 26);

/// Number of isomorphism classes streamed by for_each_structure.
long long count_structures(const Vocabulary& v, int max_size, long long combo_cap = 1LL << 26);

} // namespace fmw
