#pragma once

#include <vector>

namespace fmw {

/// Maximum bipartite matching via Hopcroft-Karp. `adjacency[u]` lists the
/// right-side vertices compatible with left vertex u. Returns the match per
/// left vertex (-1 if unmatched). Deterministic.
std::vector<int> maximum_bipartite_matching(const std::vector<std::vector<int>>& adjacency,
                                            int right_size);

} // namespace fmw
