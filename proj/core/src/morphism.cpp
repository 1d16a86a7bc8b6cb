#include "fmw/morphism.hpp"

#include <algorithm>
#include <numeric>

#include "fmw/error.hpp"

namespace fmw {

const std::string& Morphism::apply_id(const std::string& source_id) const {
    int i = source.index_of(source_id);
    if (i < 0)
        throw InputError("dangling element: " + source_id);
    return target.id_of(map.at(i));
}

bool Morphism::is_identity() const {
    if (!(source == target)) return false;
    for (size_t i = 0; i < map.size(); ++i)
        if (map[i] != static_cast<int>(i)) return false;
    return true;
}

namespace {

void check_map_shape(const std::vector<int>& map, const Structure& a, const Structure& b) {
    if (!same_vocab(a, b))
        throw InputError("vocabulary mismatch between source and target");
    if (static_cast<int>(map.size()) != a.size())
        throw InputError("map is not total on the source universe");
    for (int v : map)
        if (v < 0 || v >= b.size())
            throw InputError("map sends an element outside the target universe");
}

bool preserves_tuples(const std::vector<int>& map, const Structure& a, const Structure& b) {
    std::vector<int> image;
    for (const auto& [name, tuples] : a.relations) {
        const auto& target_tuples = b.relations.at(name);
        for (const auto& t : tuples) {
            image.clear();
            for (int e : t) image.push_back(map[e]);
            if (!std::binary_search(target_tuples.begin(), target_tuples.end(), image))
                return false;
        }
    }
    return true;
}

} // namespace

bool check_homomorphism(const std::vector<int>& map, const Structure& a, const Structure& b) {
    check_map_shape(map, a, b);
    for (const auto& [name, index] : a.constants)
        if (map[index] != b.constants.at(name)) return false;
    return preserves_tuples(map, a, b);
}

bool check_homomorphism(const Morphism& m) {
    return check_homomorphism(m.map, m.source, m.target);
}

bool check_isomorphism(const std::vector<int>& map, const Structure& a, const Structure& b) {
    check_map_shape(map, a, b);
    if (a.size() != b.size()) return false;
    std::vector<int> inverse(b.size(), -1);
    for (int i = 0; i < a.size(); ++i) {
        if (inverse[map[i]] != -1) return false; // not injective
        inverse[map[i]] = i;
    }
    return check_homomorphism(map, a, b) && check_homomorphism(inverse, b, a);
}

bool check_isomorphism(const Morphism& m) {
    return check_isomorphism(m.map, m.source, m.target);
}

Morphism make_morphism(Structure source, Structure target, std::vector<int> map) {
    if (!check_homomorphism(map, source, target))
        throw InputError("map is not a homomorphism");
    return Morphism{std::move(source), std::move(target), std::move(map)};
}

Morphism make_morphism(Structure source, Structure target,
                       const std::map<std::string, std::string>& map_by_id) {
    std::vector<int> map(source.universe.size(), -1);
    for (const auto& [from, to] : map_by_id) {
        int i = source.index_of(from);
        if (i < 0)
            throw InputError("map mentions unknown source element: " + from);
        int j = target.index_of(to);
        if (j < 0)
            throw InputError("map sends " + from + " to unknown target element: " + to);
        map[i] = j;
    }
    for (size_t i = 0; i < map.size(); ++i)
        if (map[i] < 0)
            throw InputError("map is not total: missing " + source.universe[i]);
    return make_morphism(std::move(source), std::move(target), std::move(map));
}

Morphism identity_morphism(const Structure& a) {
    std::vector<int> map(a.universe.size());
    std::iota(map.begin(), map.end(), 0);
    return Morphism{a, a, std::move(map)};
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (!(f.target == g.source))
        throw InputError("morphisms do not compose: target of f differs from source of g");
    std::vector<int> map(f.map.size());
    for (size_t i = 0; i < f.map.size(); ++i) map[i] = g.map[f.map[i]];
    return Morphism{f.source, g.target, std::move(map)};
}

} // namespace fmw
