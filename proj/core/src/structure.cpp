#include "fmw/structure.hpp"

#include <algorithm>

#include "fmw/error.hpp"

namespace fmw {

int Structure::index_of(const std::string& id) const {
    auto it = std::lower_bound(universe.begin(), universe.end(), id);
    if (it == universe.end() || *it != id) return -1;
    return static_cast<int>(it - universe.begin());
}

bool Structure::has_tuple(const std::string& relation, const std::vector<int>& tuple) const {
    auto it = relations.find(relation);
    if (it == relations.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), tuple);
}

void validate(const Structure& s) {
    validate(s.vocab);
    if (!std::is_sorted(s.universe.begin(), s.universe.end()))
        throw InputError("universe is not sorted");
    if (std::adjacent_find(s.universe.begin(), s.universe.end()) != s.universe.end())
        throw InputError("duplicate element in universe");
    const int n = s.size();
    for (const auto& [name, tuples] : s.relations) {
        if (!s.vocab.has_relation(name))
            throw InputError("interpretation of unknown relation symbol: " + name);
        const int arity = s.vocab.arity(name);
        for (const auto& t : tuples) {
            if (static_cast<int>(t.size()) != arity)
                throw InputError("arity mismatch: relation " + name + " expects " +
                                 std::to_string(arity) + "-tuples, got a " +
                                 std::to_string(t.size()) + "-tuple");
            for (int e : t)
                if (e < 0 || e >= n)
                    throw InputError("dangling element in a tuple of " + name);
        }
        if (!std::is_sorted(tuples.begin(), tuples.end()))
            throw InputError("tuples of " + name + " are not sorted");
        if (std::adjacent_find(tuples.begin(), tuples.end()) != tuples.end())
            throw InputError("duplicate tuple in " + name);
    }
    for (const auto& [name, arity] : s.vocab.relations)
        if (s.relations.find(name) == s.relations.end())
            throw InputError("missing interpretation for relation symbol: " + name);
    for (const auto& c : s.vocab.constants) {
        auto it = s.constants.find(c);
        if (it == s.constants.end())
            throw InputError("uninterpreted constant symbol: " + c);
        if (it->second < 0 || it->second >= n)
            throw InputError("constant " + c + " interpreted by a dangling element");
    }
    for (const auto& [name, index] : s.constants) {
        (void)index;
        if (!s.vocab.has_constant(name))
            throw InputError("interpretation of unknown constant symbol: " + name);
    }
}

Structure make_structure(Vocabulary vocab,
                         std::vector<std::string> universe,
                         std::map<std::string, std::vector<std::vector<std::string>>> relations,
                         std::map<std::string, std::string> constants) {
    Structure s;
    s.vocab = std::move(vocab);
    s.universe = std::move(universe);
    std::sort(s.universe.begin(), s.universe.end());
    s.universe.erase(std::unique(s.universe.begin(), s.universe.end()), s.universe.end());
    for (const auto& [name, arity] : s.vocab.relations) {
        (void)arity;
        s.relations[name] = {};
    }
    for (auto& [name, tuples] : relations) {
        auto& out = s.relations[name];
        if (!s.vocab.has_relation(name))
            throw InputError("interpretation of unknown relation symbol: " + name);
        for (const auto& t : tuples) {
            std::vector<int> indices;
            indices.reserve(t.size());
            for (const auto& id : t) {
                int i = s.index_of(id);
                if (i < 0)
                    throw InputError("dangling element " + id + " in a tuple of " + name);
                indices.push_back(i);
            }
            out.push_back(std::move(indices));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    for (const auto& [name, id] : constants) {
        int i = s.index_of(id);
        if (i < 0)
            throw InputError("constant " + name + " interpreted by unknown element " + id);
        s.constants[name] = i;
    }
    validate(s);
    return s;
}

Structure expand(const Structure& a, const std::vector<std::string>& tuple) {
    if (tuple.empty()) return a;
    auto [vocab, fresh] = expand_vocabulary(a.vocab, static_cast<int>(tuple.size()));
    Structure s = a;
    s.vocab = std::move(vocab);
    for (size_t i = 0; i < tuple.size(); ++i) {
        int index = a.index_of(tuple[i]);
        if (index < 0)
            throw InputError("dangling element in expansion tuple: " + tuple[i]);
        s.constants[fresh[i]] = index;
    }
    validate(s);
    return s;
}

Structure induced_substructure(const Structure& a, const std::vector<int>& keep) {
    std::vector<int> sorted_keep = keep;
    std::sort(sorted_keep.begin(), sorted_keep.end());
    sorted_keep.erase(std::unique(sorted_keep.begin(), sorted_keep.end()), sorted_keep.end());

    std::vector<int> new_index(a.universe.size(), -1);
    Structure s;
    s.vocab = a.vocab;
    for (int old : sorted_keep) {
        if (old < 0 || old >= a.size())
            throw InputError("dangling element index in induced substructure");
        new_index[old] = static_cast<int>(s.universe.size());
        s.universe.push_back(a.universe[old]);
    }
    for (const auto& [name, tuples] : a.relations) {
        auto& out = s.relations[name];
        for (const auto& t : tuples) {
            std::vector<int> mapped;
            mapped.reserve(t.size());
            bool inside = true;
            for (int e : t) {
                if (new_index[e] < 0) { inside = false; break; }
                mapped.push_back(new_index[e]);
            }
            if (inside) out.push_back(std::move(mapped));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    for (const auto& [name, index] : a.constants) {
        if (new_index[index] < 0)
            throw InputError("constant " + name + " falls outside the induced substructure");
        s.constants[name] = new_index[index];
    }
    validate(s);
    return s;
}

std::set<std::string> constant_elements(const Structure& a) {
    std::set<std::string> out;
    for (const auto& [name, index] : a.constants) {
        (void)name;
        out.insert(a.universe[index]);
    }
    return out;
}

std::vector<std::string> ids_of(const Structure& a, const std::vector<int>& tuple) {
    std::vector<std::string> out;
    out.reserve(tuple.size());
    for (int e : tuple) out.push_back(a.id_of(e));
    return out;
}

std::vector<int> indices_of(const Structure& a, const std::vector<std::string>& tuple) {
    std::vector<int> out;
    out.reserve(tuple.size());
    for (const auto& id : tuple) {
        int i = a.index_of(id);
        if (i < 0)
            throw InputError("dangling element: " + id);
        out.push_back(i);
    }
    return out;
}

bool same_vocab(const Structure& a, const Structure& b) {
    return a.vocab == b.vocab;
}

namespace {

Vocabulary graph_vocab() {
    return make_vocabulary({{"E", 2}});
}

Structure symmetric_graph(std::vector<std::string> universe,
                          const std::vector<std::pair<std::string, std::string>>& edges) {
    std::vector<std::vector<std::string>> tuples;
    for (const auto& [x, y] : edges) {
        tuples.push_back({x, y});
        tuples.push_back({y, x});
    }
    return make_structure(graph_vocab(), std::move(universe), {{"E", tuples}});
}

} // namespace

Structure fixture_k2() { return symmetric_graph({"x", "y"}, {{"x", "y"}}); }

Structure fixture_k3() {
    return symmetric_graph({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}, {"x", "z"}});
}

Structure fixture_p3() { return symmetric_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

Structure fixture_c4() {
    return symmetric_graph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"a", "d"}});
}

Structure fixture_loop1() {
    return make_structure(graph_vocab(), {"x"}, {{"E", {{"x", "x"}}}});
}

Structure fixture_pt1() { return make_structure(graph_vocab(), {"x"}, {}); }

Structure symmetric_cycle(int n) {
    if (n < 3) throw InputError("symmetric_cycle needs at least 3 vertices");
    std::vector<std::string> universe;
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < n; ++i) universe.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i) edges.emplace_back(universe[i], universe[(i + 1) % n]);
    return symmetric_graph(std::move(universe), edges);
}

} // namespace fmw
