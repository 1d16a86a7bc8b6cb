#include "fmw/homotopy.hpp"

#include <algorithm>

#include "fmw/category.hpp"
#include "fmw/error.hpp"
#include "fmw/games.hpp"
#include "fmw/logic.hpp"

namespace fmw {

LiftingProblem make_lifting_problem(Morphism i, Morphism p, Morphism f, Morphism g) {
    if (!(i.source == f.source))
        throw InputError("lifting problem: i and f must share a source");
    if (!(i.target == g.source))
        throw InputError("lifting problem: the target of i must be the source of g");
    if (!(f.target == p.source))
        throw InputError("lifting problem: the target of f must be the source of p");
    if (!(g.target == p.target))
        throw InputError("lifting problem: g and p must share a target");
    Morphism left = compose(g, i);
    Morphism right = compose(p, f);
    if (!(left.map == right.map))
        throw InputError("lifting problem: the square does not commute");
    return {std::move(i), std::move(p), std::move(f), std::move(g)};
}

LiftResult find_lift(const LiftingProblem& lp, const SearchBudget& budget) {
    const Structure& b = lp.i.target;
    const Structure& x = lp.p.source;

    SearchOptions options;
    options.budget = budget;
    // h(i(a)) = f(a); conflicting requirements mean no lift exists.
    std::vector<int> forced(b.size(), -1);
    for (int a = 0; a < lp.i.source.size(); ++a) {
        int via_i = lp.i.map[a];
        int want = lp.f.map[a];
        if (forced[via_i] != -1 && forced[via_i] != want)
            return {std::nullopt, true};
        forced[via_i] = want;
    }
    for (int e = 0; e < b.size(); ++e)
        if (forced[e] != -1) options.pins[b.universe[e]] = x.universe[forced[e]];
    // p(h(e)) = g(e): restrict candidates per element.
    for (int e = 0; e < b.size(); ++e) {
        std::vector<std::string> allowed;
        for (int v = 0; v < x.size(); ++v)
            if (lp.p.map[v] == lp.g.map[e]) allowed.push_back(x.universe[v]);
        options.allowed[b.universe[e]] = std::move(allowed);
    }
    auto result = find_homomorphism_constrained(b, x, options);
    return {result.morphism, result.complete};
}

bool is_weak_equivalence(const Morphism& f, const SearchBudget& budget) {
    return hom_equivalent(f.source, f.target, {}, budget);
}

bool is_acyclic_fibration(const Morphism& f, const SearchBudget& budget) {
    // a section of f: s with f(s(.)) = id on the target
    SearchOptions options;
    options.budget = budget;
    for (int e = 0; e < f.target.size(); ++e) {
        std::vector<std::string> allowed;
        for (int v = 0; v < f.source.size(); ++v)
            if (f.map[v] == e) allowed.push_back(f.source.universe[v]);
        if (allowed.empty()) return false; // not surjective
        options.allowed[f.target.universe[e]] = std::move(allowed);
    }
    auto result = find_homomorphism_constrained(f.target, f.source, options);
    if (result.budget_exhausted())
        throw BudgetError("section search exhausted its budget");
    return result.found();
}

bool is_acyclic_fibration_rlp(const Morphism& f, const std::vector<Structure>& test_objects,
                              const SearchBudget& budget) {
    // RLP against every initial inclusion: for every map g: D -> target
    // there must be h: D -> source with f(h(.)) = g.
    for (const auto& d : test_objects) {
        if (!same_vocab(d, f.source)) continue;
        bool ok = true;
        SearchOptions enumerate;
        enumerate.lexicographic_order = true;
        enumerate.budget = budget;
        bool complete = for_each_homomorphism(d, f.target, enumerate, [&](const std::vector<int>& g) {
            SearchOptions constrained;
            constrained.budget = budget;
            for (int e = 0; e < d.size(); ++e) {
                std::vector<std::string> allowed;
                for (int v = 0; v < f.source.size(); ++v)
                    if (f.map[v] == g[e]) allowed.push_back(f.source.universe[v]);
                constrained.allowed[d.universe[e]] = std::move(allowed);
            }
            auto lift = find_homomorphism_constrained(d, f.source, constrained);
            if (lift.budget_exhausted())
                throw BudgetError("lift search exhausted its budget");
            if (!lift.found()) {
                ok = false;
                return false;
            }
            return true;
        });
        if (!complete)
            throw BudgetError("hom enumeration exhausted its budget");
        if (!ok) return false;
    }
    return true;
}

bool is_section(const Morphism& f, const SearchBudget& budget) {
    // r with r(f(.)) = id on the source; f must be injective.
    Pins pins;
    std::vector<int> forced(f.target.size(), -1);
    for (int a = 0; a < f.source.size(); ++a) {
        if (forced[f.map[a]] != -1 && forced[f.map[a]] != a) return false;
        forced[f.map[a]] = a;
        pins[f.target.universe[f.map[a]]] = f.source.universe[a];
    }
    auto result = find_homomorphism(f.target, f.source, pins, budget);
    if (result.budget_exhausted())
        throw BudgetError("retraction search exhausted its budget");
    return result.found();
}

HomotopyWitness homotopic(const Morphism& f, const Morphism& g) {
    if (!(f.source == g.source) || !(f.target == g.target))
        throw InputError("homotopy requires a parallel pair of morphisms");
    auto cyl = coproduct(f.source, f.source);
    // the sum map f + g through the cylinder
    std::vector<int> h(cyl.object.size(), -1);
    for (int e = 0; e < f.source.size(); ++e) {
        h[cyl.from_left.map[e]] = f.map[e];
        h[cyl.from_right.map[e]] = g.map[e];
    }
    // glued elements (constants) receive the same value from both sides
    Morphism homotopy{cyl.object, f.target, std::move(h)};
    if (!check_homomorphism(homotopy))
        throw InputError("internal error: sum map is not a homomorphism");
    return {true, cyl.object, cyl.from_left, cyl.from_right, std::move(homotopy)};
}

bool is_weak_k_equivalence(const Morphism& f, int k, const SearchBudget& budget) {
    return is_weak_equivalence(f, budget) && k_hom_equivalent(f.source, f.target, k, {}, budget);
}

Poset homotopy_category(const std::vector<std::pair<std::string, Structure>>& collection,
                        const std::set<std::string>& x, const SearchBudget& budget) {
    return quotient_poset(collection, x, budget);
}

Theorem3Report theorem3_verify(const Structure& n1, const Structure& n2, int k, int size_cap,
                               const SearchBudget& budget) {
    if (!same_vocab(n1, n2))
        throw InputError("vocabulary mismatch");
    Theorem3Report report;
    report.k = k;
    report.size_cap = size_cap;
    report.lhs = k_hom_equivalent(n1, n2, k, {}, budget);
    auto pool = enumerate_pp_tests(n1.vocab, k, size_cap);
    auto forward = pp_separating_test(n1, n2, pool);
    auto backward = pp_separating_test(n2, n1, pool);
    report.rhs_forward = !forward.has_value();
    report.rhs_backward = !backward.has_value();
    report.rhs = report.rhs_forward && report.rhs_backward;
    report.agree = report.lhs == report.rhs;
    if (forward)
        report.separating_sentence = format_formula(canonical_sentence(*forward).formula);
    else if (backward)
        report.separating_sentence = format_formula(canonical_sentence(*backward).formula);
    return report;
}

} // namespace fmw
