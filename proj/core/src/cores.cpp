#include "fmw/cores.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "fmw/canonical.hpp"
#include "fmw/error.hpp"

namespace fmw {

namespace {

// A non-injective endomorphism over x, or nullopt when a is a core over x.
std::optional<std::vector<int>> non_injective_endomorphism(const Structure& a,
                                                           const std::set<std::string>& x,
                                                           const SearchBudget& budget) {
    SearchOptions options;
    options.budget = budget;
    for (const auto& id : x) {
        if (a.index_of(id) < 0)
            throw InputError("dangling element in X: " + id);
        options.pins[id] = id;
    }
    std::optional<std::vector<int>> witness;
    bool complete = for_each_homomorphism(a, a, options, [&](const std::vector<int>& map) {
        std::vector<bool> hit(map.size(), false);
        for (int v : map) {
            if (hit[v]) {
                witness = map;
                return false;
            }
            hit[v] = true;
        }
        return true;
    });
    if (!witness && !complete)
        throw BudgetError("endomorphism search exhausted its budget");
    return witness;
}

std::vector<int> compose_maps(const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> out(inner.size());
    for (size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
    return out;
}

// Idempotent power of an endomorphism: a retraction onto its eventual image.
std::vector<int> stabilize(const std::vector<int>& endo) {
    const int n = static_cast<int>(endo.size());
    std::vector<int> power = endo;
    for (int step = 1; step < n; ++step) power = compose_maps(endo, power); // image is now stable

    std::vector<bool> in_image(n, false);
    for (int v : power) in_image[v] = true;

    // The restriction to the stable image is a permutation; raise `power` to
    // kill it (order = lcm of cycle lengths, applied by repeated squaring).
    long long order = 1;
    std::vector<bool> seen(n, false);
    for (int v = 0; v < n; ++v) {
        if (!in_image[v] || seen[v]) continue;
        long long length = 0;
        int u = v;
        while (!seen[u]) {
            seen[u] = true;
            u = endo[u];
            ++length;
        }
        order = std::lcm(order, length);
    }
    // power is endo^n; compose enough extra steps that the exponent is a
    // multiple of the permutation's order
    long long extra = (order - (static_cast<long long>(n) % order)) % order;
    std::vector<int> step = endo;
    while (extra > 0) {
        if (extra & 1) power = compose_maps(step, power);
        step = compose_maps(step, step);
        extra >>= 1;
    }
    return power;
}

std::vector<int> image_indices(const std::vector<int>& map) {
    std::vector<int> out = map;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

bool is_core(const Structure& a, const std::set<std::string>& x, const SearchBudget& budget) {
    return !non_injective_endomorphism(a, x, budget).has_value();
}

CoreResult core_with_retraction(const Structure& a, const std::set<std::string>& x,
                                const SearchBudget& budget) {
    std::set<std::string> keep_always = x;
    for (const auto& [name, index] : a.constants) {
        (void)name;
        keep_always.insert(a.universe[index]);
    }
    for (const auto& id : x)
        if (a.index_of(id) < 0)
            throw InputError("dangling element in X: " + id);

    Structure current = a;
    std::vector<int> overall(a.universe.size());
    std::iota(overall.begin(), overall.end(), 0);

    // orig_index[i]: position of current.universe[i] in a.universe
    auto orig_indices = [&](const Structure& s) {
        std::vector<int> out(s.universe.size());
        for (int i = 0; i < s.size(); ++i) out[i] = a.index_of(s.universe[i]);
        return out;
    };

    auto apply_step = [&](const Structure& from, const std::vector<int>& endo) {
        // Fold an endomorphism of `from` into the overall retraction on `a`.
        std::vector<int> from_orig = orig_indices(from);
        std::vector<int> orig_to_from(a.universe.size(), -1);
        for (int i = 0; i < from.size(); ++i) orig_to_from[from_orig[i]] = i;
        for (auto& v : overall) v = from_orig[endo[orig_to_from[v]]];
    };

    while (true) {
        auto witness = non_injective_endomorphism(current, x, budget);
        if (!witness) break;

        // Prefer one-element retract descent: deterministic, small steps.
        bool stepped = false;
        for (int v = 0; v < current.size() && !stepped; ++v) {
            if (keep_always.count(current.universe[v])) continue;
            std::vector<std::string> onto;
            for (int i = 0; i < current.size(); ++i)
                if (i != v) onto.push_back(current.universe[i]);
            SearchOptions options;
            options.budget = budget;
            for (const auto& id : x) options.pins[id] = id;
            std::vector<std::string> allowed = onto;
            options.allowed[current.universe[v]] = allowed;
            for (const auto& id : onto) options.pins[id] = id;
            auto result = find_homomorphism_constrained(current, current, options);
            if (result.budget_exhausted())
                throw BudgetError("retraction search exhausted its budget");
            if (result.found()) {
                apply_step(current, result.morphism->map);
                current = induced_substructure(current, image_indices(result.morphism->map));
                stepped = true;
            }
        }
        if (!stepped) {
            // No one-element retract, but not a core either: retract onto the
            // stable image of the witness endomorphism.
            std::vector<int> retraction = stabilize(*witness);
            apply_step(current, retraction);
            current = induced_substructure(current, image_indices(retraction));
        }
    }

    Morphism retraction{a, a, overall};
    if (!check_homomorphism(retraction))
        throw InputError("internal error: core retraction is not a homomorphism");
    return {std::move(current), std::move(retraction)};
}

Structure core(const Structure& a, const std::set<std::string>& x, const SearchBudget& budget) {
    return core_with_retraction(a, x, budget).core;
}

std::vector<std::pair<int, int>> Poset::hasse_edges() const {
    std::vector<std::pair<int, int>> edges;
    const int n = static_cast<int>(classes.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !leq[i][j]) continue;
            bool covered = false;
            for (int k = 0; k < n && !covered; ++k)
                if (k != i && k != j && leq[i][k] && leq[k][j]) covered = true;
            if (!covered) edges.emplace_back(i, j);
        }
    return edges;
}

Poset quotient_poset(const std::vector<std::pair<std::string, Structure>>& collection,
                     const std::set<std::string>& x, const SearchBudget& budget) {
    const int n = static_cast<int>(collection.size());
    for (int i = 1; i < n; ++i)
        if (!same_vocab(collection[i].second, collection[0].second))
            throw InputError("quotient poset requires a shared vocabulary");

    std::vector<std::vector<bool>> arrow(n, std::vector<bool>(n, false));
    Pins pins;
    for (const auto& id : x) pins[id] = id;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                arrow[i][j] = true;
                continue;
            }
            auto r = find_homomorphism(collection[i].second, collection[j].second, pins, budget);
            if (r.budget_exhausted())
                throw BudgetError("hom search exhausted its budget while building the poset");
            arrow[i][j] = r.found();
        }

    std::vector<int> class_of(n, -1);
    Poset poset;
    for (int i = 0; i < n; ++i) {
        if (class_of[i] != -1) continue;
        int id = static_cast<int>(poset.classes.size());
        Poset::ClassInfo info;
        for (int j = i; j < n; ++j)
            if (class_of[j] == -1 && arrow[i][j] && arrow[j][i]) {
                class_of[j] = id;
                info.members.push_back(collection[j].first);
            }
        info.representative = core(collection[i].second, x, budget);
        poset.classes.push_back(std::move(info));
    }

    const int m = static_cast<int>(poset.classes.size());
    poset.leq.assign(m, std::vector<bool>(m, false));
    std::vector<int> first_of(m, -1);
    for (int i = 0; i < n; ++i)
        if (first_of[class_of[i]] == -1) first_of[class_of[i]] = i;
    for (int ci = 0; ci < m; ++ci)
        for (int cj = 0; cj < m; ++cj) poset.leq[ci][cj] = arrow[first_of[ci]][first_of[cj]];
    return poset;
}

} // namespace fmw
