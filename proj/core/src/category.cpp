#include "fmw/category.hpp"

#include <algorithm>
#include <numeric>

#include "fmw/error.hpp"

namespace fmw {

ProductResult product(const Structure& a, const Structure& b) {
    if (!same_vocab(a, b))
        throw InputError("vocabulary mismatch in product");

    // Pair ids, then the index maps after universe sorting.
    std::vector<std::string> universe;
    universe.reserve(a.universe.size() * b.universe.size());
    for (const auto& x : a.universe)
        for (const auto& y : b.universe)
            universe.push_back("(" + x + "," + y + ")");

    Structure p;
    p.vocab = a.vocab;
    p.universe = universe;
    std::sort(p.universe.begin(), p.universe.end());

    const int nb = b.size();
    auto pair_index = [&](int i, int j) {
        return p.index_of(universe[static_cast<size_t>(i) * nb + j]);
    };

    for (const auto& [name, tuples_a] : a.relations) {
        auto& out = p.relations[name];
        const auto& tuples_b = b.relations.at(name);
        for (const auto& ta : tuples_a) {
            for (const auto& tb : tuples_b) {
                std::vector<int> t;
                t.reserve(ta.size());
                for (size_t k = 0; k < ta.size(); ++k) t.push_back(pair_index(ta[k], tb[k]));
                out.push_back(std::move(t));
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    for (const auto& [name, ia] : a.constants)
        p.constants[name] = pair_index(ia, b.constants.at(name));
    validate(p);

    std::vector<int> proj_a(p.universe.size()), proj_b(p.universe.size());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < nb; ++j) {
            int e = pair_index(i, j);
            proj_a[e] = i;
            proj_b[e] = j;
        }
    return {p, Morphism{p, a, std::move(proj_a)}, Morphism{p, b, std::move(proj_b)}};
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void merge(int x, int y) { parent[find(x)] = find(y); }
};

/// Quotient of `s` by the equivalence generated by `pairs`; class
/// representatives are the least identifiers. Also returns the index map.
std::pair<Structure, std::vector<int>> quotient(const Structure& s,
                                                const std::vector<std::pair<int, int>>& pairs) {
    UnionFind uf(s.size());
    for (auto [x, y] : pairs) uf.merge(x, y);

    std::vector<int> rep(s.size(), -1); // class root -> least element index
    for (int i = 0; i < s.size(); ++i) {
        int r = uf.find(i);
        if (rep[r] < 0 || s.universe[i] < s.universe[rep[r]]) rep[r] = i;
    }

    Structure q;
    q.vocab = s.vocab;
    std::vector<int> to_class(s.size());
    for (int i = 0; i < s.size(); ++i) q.universe.push_back(s.universe[rep[uf.find(i)]]);
    std::sort(q.universe.begin(), q.universe.end());
    q.universe.erase(std::unique(q.universe.begin(), q.universe.end()), q.universe.end());
    for (int i = 0; i < s.size(); ++i) to_class[i] = q.index_of(s.universe[rep[uf.find(i)]]);

    for (const auto& [name, tuples] : s.relations) {
        auto& out = q.relations[name];
        for (const auto& t : tuples) {
            std::vector<int> mapped;
            mapped.reserve(t.size());
            for (int e : t) mapped.push_back(to_class[e]);
            out.push_back(std::move(mapped));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    for (const auto& [name, index] : s.constants) q.constants[name] = to_class[index];
    validate(q);
    return {std::move(q), std::move(to_class)};
}

CoproductResult glued_sum(const Structure& a, const Structure& b,
                          const std::set<std::string>& bare) {
    if (!same_vocab(a, b))
        throw InputError("vocabulary mismatch in coproduct");
    for (const auto& id : bare)
        if (a.index_of(id) < 0 || b.index_of(id) < 0)
            throw InputError("shared element missing from one side: " + id);

    auto tag = [&](const std::string& prefix, const std::string& id) {
        return bare.count(id) ? id : prefix + id;
    };

    Structure u;
    u.vocab = a.vocab;
    for (const auto& id : a.universe) u.universe.push_back(tag("l:", id));
    for (const auto& id : b.universe)
        if (!bare.count(id)) u.universe.push_back(tag("r:", id));
    std::sort(u.universe.begin(), u.universe.end());
    if (std::adjacent_find(u.universe.begin(), u.universe.end()) != u.universe.end())
        throw InputError("identifier collision while tagging coproduct elements");

    std::vector<int> from_a(a.size()), from_b(b.size());
    for (int i = 0; i < a.size(); ++i) from_a[i] = u.index_of(tag("l:", a.universe[i]));
    for (int i = 0; i < b.size(); ++i) from_b[i] = u.index_of(tag("r:", b.universe[i]));

    for (const auto& [name, tuples] : a.relations) {
        auto& out = u.relations[name];
        for (const auto& t : tuples) {
            std::vector<int> mapped;
            for (int e : t) mapped.push_back(from_a[e]);
            out.push_back(std::move(mapped));
        }
        for (const auto& t : b.relations.at(name)) {
            std::vector<int> mapped;
            for (int e : t) mapped.push_back(from_b[e]);
            out.push_back(std::move(mapped));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }

    // Constants are glued below; interpret them on the left copy for now.
    std::vector<std::pair<int, int>> glue;
    for (const auto& [name, ia] : a.constants) {
        u.constants[name] = from_a[ia];
        glue.emplace_back(from_a[ia], from_b[b.constants.at(name)]);
    }
    auto [q, to_class] = quotient(u, glue);

    std::vector<int> inj_a(a.size()), inj_b(b.size());
    for (int i = 0; i < a.size(); ++i) inj_a[i] = to_class[from_a[i]];
    for (int i = 0; i < b.size(); ++i) inj_b[i] = to_class[from_b[i]];
    return {q, Morphism{a, q, std::move(inj_a)}, Morphism{b, q, std::move(inj_b)}};
}

} // namespace

CoproductResult coproduct(const Structure& a, const Structure& b) {
    return glued_sum(a, b, {});
}

CoproductResult coproduct_over(const Structure& a, const Structure& b,
                               const std::set<std::string>& shared) {
    return glued_sum(a, b, shared);
}

EqualizerResult equalizer(const Morphism& f, const Morphism& g) {
    if (!(f.source == g.source) || !(f.target == g.target))
        throw InputError("equalizer requires a parallel pair of morphisms");
    std::vector<int> agree;
    for (int i = 0; i < f.source.size(); ++i)
        if (f.map[i] == g.map[i]) agree.push_back(i);
    // Constants are always in the agreement set (both maps preserve them),
    // so the induced substructure interprets every constant.
    Structure e = induced_substructure(f.source, agree);
    std::vector<int> inclusion(agree.size());
    for (size_t i = 0; i < agree.size(); ++i) inclusion[i] = f.source.index_of(e.universe[i]);
    return {e, Morphism{e, f.source, std::move(inclusion)}};
}

CoequalizerResult coequalizer(const Morphism& f, const Morphism& g) {
    if (!(f.source == g.source) || !(f.target == g.target))
        throw InputError("coequalizer requires a parallel pair of morphisms");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < f.source.size(); ++i) pairs.emplace_back(f.map[i], g.map[i]);
    auto [q, to_class] = quotient(f.target, pairs);
    return {q, Morphism{f.target, q, std::move(to_class)}};
}

Structure free_term_structure(const Vocabulary& v) {
    Structure s;
    s.vocab = v;
    s.universe = v.constants;
    std::sort(s.universe.begin(), s.universe.end());
    for (const auto& [name, arity] : v.relations) {
        (void)arity;
        s.relations[name] = {};
    }
    for (const auto& c : v.constants) s.constants[c] = s.index_of(c);
    validate(s);
    return s;
}

Morphism initial_morphism(const Vocabulary& v, const Structure& a) {
    if (!(a.vocab == v))
        throw InputError("vocabulary mismatch in initial morphism");
    Structure ft = free_term_structure(v);
    std::vector<int> map(ft.universe.size());
    for (int i = 0; i < ft.size(); ++i) map[i] = a.constants.at(ft.universe[i]);
    return Morphism{std::move(ft), a, std::move(map)};
}

Structure top(const Vocabulary& v) {
    Structure s;
    s.vocab = v;
    s.universe = {"1"};
    for (const auto& [name, arity] : v.relations)
        s.relations[name] = {std::vector<int>(static_cast<size_t>(arity), 0)};
    for (const auto& c : v.constants) s.constants[c] = 0;
    validate(s);
    return s;
}

} // namespace fmw
