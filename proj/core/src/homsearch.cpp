#include "fmw/homsearch.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <numeric>

#include "fmw/error.hpp"
#include "fmw/gaifman.hpp"

namespace fmw {

namespace {

using Clock = std::chrono::steady_clock;

struct TupleRef {
    const std::vector<std::vector<int>>* target_tuples;
    const std::vector<int>* tuple;
};

// Backtracking homomorphism search with forward checking over incident
// tuples. Target universes are limited to 64 elements so candidate sets fit
// in one word.
class Searcher {
public:
    Searcher(const Structure& a, const Structure& b, const SearchOptions& options)
        : a_(a), b_(b), options_(options) {
        if (!same_vocab(a, b))
            throw InputError("vocabulary mismatch between search source and target");
        if (b.size() > 64)
            throw BudgetError("target structure too large for the search backend (max 64 elements)");
        nb_ = b.size();
        full_mask_ = nb_ == 64 ? ~uint64_t(0) : (uint64_t(1) << nb_) - 1;
        deadline_set_ = options.budget.time_limit_ms > 0;
        if (deadline_set_)
            deadline_ = Clock::now() + std::chrono::milliseconds(options.budget.time_limit_ms);
        feasible_ = setup();
    }

    // Returns true if the search space was fully explored (or fn stopped it).
    bool run(const std::function<bool(const std::vector<int>&)>& fn) {
        if (!feasible_) return true; // proven empty during setup
        if (options_.injective && a_.size() > nb_) return true;
        if (options_.surjective && a_.size() < nb_) return true;
        fn_ = &fn;
        stopped_ = false;
        budget_hit_ = false;
        trail_.assign(order_.size(), {});
        dive(0);
        return !budget_hit_ || stopped_;
    }

    long long nodes() const { return nodes_; }

private:
    const Structure& a_;
    const Structure& b_;
    const SearchOptions& options_;
    int nb_ = 0;
    uint64_t full_mask_ = 0;
    bool feasible_ = true;

    std::vector<int> order_;
    std::vector<int> assignment_;
    std::vector<uint64_t> masks_;
    std::vector<std::vector<TupleRef>> incident_;
    std::vector<int> target_use_;
    int uncovered_ = 0;
    uint64_t used_mask_ = 0;

    struct TrailEntry {
        int element;
        uint64_t mask;
    };
    std::vector<std::vector<TrailEntry>> trail_;

    const std::function<bool(const std::vector<int>&)>* fn_ = nullptr;
    bool stopped_ = false;
    bool budget_hit_ = false;
    long long nodes_ = 0;
    bool deadline_set_ = false;
    Clock::time_point deadline_;

    bool setup() {
        const int na = a_.size();
        assignment_.assign(na, -1);
        masks_.assign(na, full_mask_);

        // Constants are forced; explicit pins must agree with them.
        std::vector<int> pinned(na, -1);
        for (const auto& [name, ia] : a_.constants) {
            int ib = b_.constants.at(name);
            if (pinned[ia] != -1 && pinned[ia] != ib) return false;
            pinned[ia] = ib;
        }
        for (const auto& [from, to] : options_.pins) {
            int ia = a_.index_of(from);
            if (ia < 0) throw InputError("pin mentions unknown source element: " + from);
            int ib = b_.index_of(to);
            if (ib < 0) throw InputError("pin sends " + from + " to unknown target element: " + to);
            if (pinned[ia] != -1 && pinned[ia] != ib) return false;
            pinned[ia] = ib;
        }
        for (int i = 0; i < na; ++i)
            if (pinned[i] != -1) masks_[i] = uint64_t(1) << pinned[i];

        for (const auto& [element, targets] : options_.allowed) {
            int ia = a_.index_of(element);
            if (ia < 0) throw InputError("candidate restriction on unknown element: " + element);
            uint64_t mask = 0;
            for (const auto& t : targets) {
                int ib = b_.index_of(t);
                if (ib < 0) throw InputError("candidate restriction names unknown target: " + t);
                mask |= uint64_t(1) << ib;
            }
            masks_[ia] &= mask;
        }

        incident_.assign(na, {});
        for (const auto& [name, tuples] : a_.relations) {
            const auto& target_tuples = b_.relations.at(name);
            for (const auto& t : tuples)
                for (int e : t) incident_[e].push_back({&target_tuples, &t});
        }
        for (auto& list : incident_) {
            std::sort(list.begin(), list.end(),
                      [](const TupleRef& x, const TupleRef& y) { return x.tuple < y.tuple; });
            list.erase(std::unique(list.begin(), list.end(),
                                   [](const TupleRef& x, const TupleRef& y) {
                                       return x.tuple == y.tuple;
                                   }),
                       list.end());
        }

        // Unary filter: b is a candidate for a only if every incident tuple
        // of a has some target row matching a's positions.
        for (int i = 0; i < na; ++i) {
            uint64_t filtered = 0;
            uint64_t remaining = masks_[i];
            while (remaining) {
                int cand = std::countr_zero(remaining);
                remaining &= remaining - 1;
                bool ok = true;
                for (const auto& ref : incident_[i]) {
                    bool match = false;
                    for (const auto& row : *ref.target_tuples) {
                        bool fits = true;
                        for (size_t k = 0; k < row.size(); ++k)
                            if ((*ref.tuple)[k] == i && row[k] != cand) {
                                fits = false;
                                break;
                            }
                        if (fits) {
                            match = true;
                            break;
                        }
                    }
                    if (!match) {
                        ok = false;
                        break;
                    }
                }
                if (ok) filtered |= uint64_t(1) << cand;
            }
            masks_[i] = filtered;
            if (masks_[i] == 0 && na > 0) return false;
        }

        order_.resize(na);
        std::iota(order_.begin(), order_.end(), 0);
        if (!options_.lexicographic_order) {
            Graph g = gaifman_graph(a_);
            std::vector<int> degree(na, 0);
            for (auto [i, j] : g.edges) {
                ++degree[i];
                ++degree[j];
            }
            std::stable_sort(order_.begin(), order_.end(),
                             [&](int x, int y) { return degree[x] > degree[y]; });
        }

        target_use_.assign(nb_, 0);
        uncovered_ = nb_;
        return true;
    }

    bool out_of_budget() {
        if (options_.budget.node_limit > 0 && nodes_ >= options_.budget.node_limit) return true;
        if (deadline_set_ && (nodes_ & 1023) == 0 && Clock::now() > deadline_) return true;
        return false;
    }

    // Candidate values for `element` supported by one incident tuple under
    // the current partial assignment (positions held by other unassigned
    // elements are unconstrained).
    uint64_t tuple_support(const TupleRef& ref, int element) const {
        uint64_t support = 0;
        for (const auto& row : *ref.target_tuples) {
            bool fits = true;
            int value = -1;
            for (size_t k = 0; k < row.size(); ++k) {
                int src = (*ref.tuple)[k];
                if (src == element) {
                    if (value == -1)
                        value = row[k];
                    else if (value != row[k]) {
                        fits = false;
                        break;
                    }
                } else if (assignment_[src] != -1 && assignment_[src] != row[k]) {
                    fits = false;
                    break;
                }
            }
            if (fits && value != -1) support |= uint64_t(1) << value;
        }
        return support;
    }

    void dive(size_t depth) {
        ++nodes_;
        if (out_of_budget()) {
            budget_hit_ = true;
            return;
        }
        if (depth == order_.size()) {
            if (options_.surjective && uncovered_ > 0) return;
            if (!(*fn_)(assignment_)) stopped_ = true;
            return;
        }
        int v = order_[depth];
        uint64_t candidates = masks_[v];
        if (options_.injective) candidates &= ~used_mask_;
        while (candidates) {
            int t = std::countr_zero(candidates);
            candidates &= candidates - 1;
            if (try_assign(v, t, depth)) {
                dive(depth + 1);
                undo_assign(v, t, depth);
            }
            if (stopped_ || budget_hit_) return;
        }
    }

    bool try_assign(int v, int t, size_t depth) {
        auto& trail = trail_[depth];
        trail.clear();

        assignment_[v] = t;
        used_mask_ |= uint64_t(1) << t;
        if (target_use_[t]++ == 0) --uncovered_;

        if (options_.surjective) {
            int remaining = static_cast<int>(order_.size() - depth - 1);
            if (uncovered_ > remaining) {
                undo_assign(v, t, depth);
                return false;
            }
        }

        for (const auto& ref : incident_[v]) {
            bool complete = true;
            for (int e : *ref.tuple)
                if (assignment_[e] == -1) {
                    complete = false;
                    uint64_t support = tuple_support(ref, e) & masks_[e];
                    if (support != masks_[e]) {
                        trail.push_back({e, masks_[e]});
                        masks_[e] = support;
                        if (support == 0) {
                            undo_assign(v, t, depth);
                            return false;
                        }
                    }
                }
            if (complete) {
                std::vector<int> image;
                image.reserve(ref.tuple->size());
                for (int e : *ref.tuple) image.push_back(assignment_[e]);
                if (!std::binary_search(ref.target_tuples->begin(), ref.target_tuples->end(),
                                        image)) {
                    undo_assign(v, t, depth);
                    return false;
                }
            }
        }
        return true;
    }

    void undo_assign(int v, int t, size_t depth) {
        auto& trail = trail_[depth];
        for (auto it = trail.rbegin(); it != trail.rend(); ++it) masks_[it->element] = it->mask;
        trail.clear();
        assignment_[v] = -1;
        if (--target_use_[t] == 0) {
            ++uncovered_;
            used_mask_ &= ~(uint64_t(1) << t);
        }
    }
};

} // namespace

bool for_each_homomorphism(const Structure& a, const Structure& b, const SearchOptions& options,
                           const std::function<bool(const std::vector<int>&)>& fn) {
    Searcher searcher(a, b, options);
    return searcher.run(fn);
}

HomSearchResult find_homomorphism_constrained(const Structure& a, const Structure& b,
                                              const SearchOptions& options) {
    HomSearchResult result;
    std::optional<std::vector<int>> found;
    result.complete = for_each_homomorphism(a, b, options, [&](const std::vector<int>& map) {
        found = map;
        return false;
    });
    if (found) {
        result.complete = true;
        if (!check_homomorphism(*found, a, b))
            throw InputError("internal error: search produced a non-homomorphism");
        result.morphism = Morphism{a, b, std::move(*found)};
    }
    return result;
}

HomSearchResult find_homomorphism(const Structure& a, const Structure& b, const Pins& pins,
                                  const SearchBudget& budget) {
    SearchOptions options;
    options.pins = pins;
    options.budget = budget;
    return find_homomorphism_constrained(a, b, options);
}

std::vector<Morphism> find_all_homomorphisms(const Structure& a, const Structure& b,
                                             const Pins& pins, long long cap) {
    double space = 1;
    for (int i = 0; i < a.size(); ++i) {
        space *= std::max(1, b.size());
        if (space > static_cast<double>(cap))
            throw BudgetError("map space |B|^|A| exceeds the enumeration cap");
    }
    SearchOptions options;
    options.pins = pins;
    options.lexicographic_order = true;
    options.budget.node_limit = 0;
    std::vector<Morphism> out;
    for_each_homomorphism(a, b, options, [&](const std::vector<int>& map) {
        out.push_back(Morphism{a, b, map});
        return true;
    });
    return out;
}

bool exists_surjective_homomorphism(const Structure& a, const Structure& b,
                                    const SearchBudget& budget) {
    SearchOptions options;
    options.surjective = true;
    options.budget = budget;
    auto result = find_homomorphism_constrained(a, b, options);
    if (result.budget_exhausted())
        throw BudgetError("surjective homomorphism search exhausted its budget");
    return result.found();
}

HomSearchResult find_retraction(const Structure& a, const std::vector<std::string>& onto,
                                const SearchBudget& budget) {
    std::set<std::string> image(onto.begin(), onto.end());
    for (const auto& id : image)
        if (a.index_of(id) < 0)
            throw InputError("retraction target mentions unknown element: " + id);
    for (const auto& [name, index] : a.constants)
        if (!image.count(a.universe[index]))
            throw InputError("retraction target must contain constant " + name);

    SearchOptions options;
    options.budget = budget;
    std::vector<std::string> allowed(image.begin(), image.end());
    for (const auto& id : a.universe) {
        if (image.count(id))
            options.pins[id] = id;
        else
            options.allowed[id] = allowed;
    }
    return find_homomorphism_constrained(a, a, options);
}

std::vector<Morphism> endomorphisms(const Structure& a, long long cap) {
    return find_all_homomorphisms(a, a, {}, cap);
}

bool hom_equivalent(const Structure& a, const Structure& b, const std::set<std::string>& x,
                    const SearchBudget& budget) {
    Pins pins;
    for (const auto& id : x) {
        if (a.index_of(id) < 0 || b.index_of(id) < 0)
            throw InputError("pinned element missing from a universe: " + id);
        pins[id] = id;
    }
    auto forward = find_homomorphism(a, b, pins, budget);
    if (forward.budget_exhausted())
        throw BudgetError("hom-equivalence search exhausted its budget");
    if (!forward.found()) return false;
    auto backward = find_homomorphism(b, a, pins, budget);
    if (backward.budget_exhausted())
        throw BudgetError("hom-equivalence search exhausted its budget");
    return backward.found();
}

std::optional<Morphism> find_isomorphism(const Structure& a, const Structure& b,
                                         const SearchBudget& budget) {
    if (a.size() != b.size() || !same_vocab(a, b)) return std::nullopt;
    SearchOptions options;
    options.injective = true;
    options.surjective = true;
    options.budget = budget;
    std::optional<Morphism> found;
    bool complete = for_each_homomorphism(a, b, options, [&](const std::vector<int>& map) {
        if (check_isomorphism(map, a, b)) {
            found = Morphism{a, b, map};
            return false;
        }
        return true;
    });
    if (!found && !complete)
        throw BudgetError("isomorphism search exhausted its budget");
    return found;
}

} // namespace fmw
