#include "fmw/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <tuple>

#include "fmw/error.hpp"

namespace fmw {

namespace {

// Encoding of a structure under a relabeling. `position[i]` is the new index
// of element i; fixed elements keep a stable leading block identified by id.
struct Encoding {
    std::vector<std::string> fixed_ids;
    std::vector<std::vector<std::vector<int>>> relation_tuples; // per relation, sorted
    std::vector<int> constant_positions;

    bool operator<(const Encoding& other) const {
        return std::tie(fixed_ids, relation_tuples, constant_positions) <
               std::tie(other.fixed_ids, other.relation_tuples, other.constant_positions);
    }
    bool operator==(const Encoding&) const = default;
};

Encoding encode(const Structure& a, const std::vector<int>& position,
                const std::vector<std::string>& fixed_ids) {
    Encoding e;
    e.fixed_ids = fixed_ids;
    for (const auto& [name, tuples] : a.relations) {
        std::vector<std::vector<int>> mapped;
        mapped.reserve(tuples.size());
        for (const auto& t : tuples) {
            std::vector<int> row;
            row.reserve(t.size());
            for (int v : t) row.push_back(position[v]);
            mapped.push_back(std::move(row));
        }
        std::sort(mapped.begin(), mapped.end());
        e.relation_tuples.push_back(std::move(mapped));
    }
    for (const auto& [name, index] : a.constants) {
        (void)name;
        e.constant_positions.push_back(position[index]);
    }
    return e;
}

std::string key_text(const Structure& a, const Encoding& e) {
    std::ostringstream out;
    out << a.size() << ';';
    for (const auto& id : e.fixed_ids) out << id << ',';
    out << ';';
    auto rel = e.relation_tuples.begin();
    for (const auto& [name, tuples] : a.relations) {
        (void)tuples;
        out << name << ':';
        for (const auto& t : *rel) {
            for (int v : t) out << v << '.';
            out << ' ';
        }
        out << ';';
        ++rel;
    }
    auto cp = e.constant_positions.begin();
    for (const auto& [name, index] : a.constants) {
        (void)index;
        out << name << '=' << *cp++ << ';';
    }
    return out.str();
}

// Minimizes the encoding over permutations of the non-fixed block.
Encoding minimal_encoding(const Structure& a, const std::set<std::string>& fixed,
                          int max_elements, std::vector<int>* best_position) {
    const int n = a.size();
    std::vector<int> fixed_indices;
    std::vector<int> movable;
    std::vector<std::string> fixed_ids;
    for (int i = 0; i < n; ++i) {
        if (fixed.count(a.universe[i])) {
            fixed_indices.push_back(i);
            fixed_ids.push_back(a.universe[i]);
        } else {
            movable.push_back(i);
        }
    }
    for (const auto& id : fixed)
        if (a.index_of(id) < 0)
            throw InputError("fixed element missing from universe: " + id);
    if (static_cast<int>(movable.size()) > max_elements)
        throw BudgetError("canonicalization is factorial; structure too large (" +
                          std::to_string(movable.size()) + " movable elements, cap " +
                          std::to_string(max_elements) + ")");

    std::vector<int> position(n, -1);
    for (size_t k = 0; k < fixed_indices.size(); ++k)
        position[fixed_indices[k]] = static_cast<int>(k);

    std::vector<int> order(movable.size());
    std::iota(order.begin(), order.end(), 0);
    std::optional<Encoding> best;
    do {
        for (size_t k = 0; k < movable.size(); ++k)
            position[movable[k]] = static_cast<int>(fixed_indices.size()) + order[k];
        Encoding e = encode(a, position, fixed_ids);
        if (!best || e < *best) {
            best = std::move(e);
            if (best_position) *best_position = position;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    if (!best) { // empty universe
        best = encode(a, position, fixed_ids);
        if (best_position) *best_position = position;
    }
    return *best;
}

} // namespace

std::string canonical_key(const Structure& a, int max_elements) {
    return canonical_key_over(a, {}, max_elements);
}

std::string canonical_key_over(const Structure& a, const std::set<std::string>& fixed,
                               int max_elements) {
    return key_text(a, minimal_encoding(a, fixed, max_elements, nullptr));
}

Structure canonical_form(const Structure& a, int max_elements) {
    std::vector<int> position;
    minimal_encoding(a, {}, max_elements, &position);
    const int n = a.size();
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) {
        std::string label = std::to_string(position[i]);
        if (label.size() < 2) label = "0" + label;
        names[i] = "e" + label;
    }
    std::map<std::string, std::vector<std::vector<std::string>>> rels;
    for (const auto& [name, tuples] : a.relations) {
        auto& out = rels[name];
        for (const auto& t : tuples) {
            std::vector<std::string> row;
            for (int v : t) row.push_back(names[v]);
            out.push_back(std::move(row));
        }
    }
    std::map<std::string, std::string> consts;
    for (const auto& [name, index] : a.constants) consts[name] = names[index];
    return make_structure(a.vocab, names, std::move(rels), std::move(consts));
}

bool isomorphic(const Structure& a, const Structure& b) {
    return isomorphic_over(a, b, {});
}

bool isomorphic_over(const Structure& a, const Structure& b, const std::set<std::string>& fixed) {
    if (!same_vocab(a, b) || a.size() != b.size()) return false;
    for (const auto& id : fixed)
        if (a.index_of(id) < 0 || b.index_of(id) < 0) return false;
    if (a.size() <= 8)
        return canonical_key_over(a, fixed) == canonical_key_over(b, fixed);
    SearchOptions options;
    options.injective = true;
    options.surjective = true;
    options.budget.node_limit = 0;
    for (const auto& id : fixed) {
        if (b.index_of(id) < 0) return false;
        options.pins[id] = id;
    }
    bool found = false;
    for_each_homomorphism(a, b, options, [&](const std::vector<int>& map) {
        if (check_isomorphism(map, a, b)) {
            found = true;
            return false;
        }
        return true;
    });
    return found;
}

} // namespace fmw
