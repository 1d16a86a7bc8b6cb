#pragma once

#include <map>
#include <string>
#include <vector>

#include "fmw/structure.hpp"

namespace fmw {

/// A verified homomorphism between two structures over a shared vocabulary.
/// `map[i]` is the target index of source element i.
struct Morphism {
    Structure source;
    Structure target;
    std::vector<int> map;

    bool operator==(const Morphism&) const = default;

    int apply(int source_index) const { return map.at(source_index); }
    const std::string& apply_id(const std::string& source_id) const;
    bool is_identity() const;
};

/// True iff `map` preserves all constants and relation tuples. Throws
/// InputError on vocabulary mismatch or a non-total map.
bool check_homomorphism(const std::vector<int>& map, const Structure& a, const Structure& b);
bool check_homomorphism(const Morphism& m);

/// True iff `map` is a bijective homomorphism whose inverse is also a
/// homomorphism.
bool check_isomorphism(const std::vector<int>& map, const Structure& a, const Structure& b);
bool check_isomorphism(const Morphism& m);

/// Constructs a Morphism, throwing InputError unless it is a homomorphism.
Morphism make_morphism(Structure source, Structure target, std::vector<int> map);
Morphism make_morphism(Structure source, Structure target,
                       const std::map<std::string, std::string>& map_by_id);

Morphism identity_morphism(const Structure& a);

/// g after f; throws InputError unless f.target equals g.source.
Morphism compose(const Morphism& g, const Morphism& f);

} // namespace fmw
