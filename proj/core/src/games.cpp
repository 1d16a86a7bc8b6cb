#include "fmw/games.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "fmw/canonical.hpp"
#include "fmw/category.hpp"
#include "fmw/cores.hpp"
#include "fmw/error.hpp"
#include "fmw/gaifman.hpp"
#include "fmw/matching.hpp"

namespace fmw {

namespace {

struct IncidentTuple {
    const std::vector<int>* tuple;
    const std::vector<std::vector<int>>* own_tuples;    // relation on this side
    const std::vector<std::vector<int>>* other_tuples;  // same relation, other side
};

std::vector<std::vector<IncidentTuple>> incidence(const Structure& s, const Structure& other) {
    std::vector<std::vector<IncidentTuple>> out(s.universe.size());
    for (const auto& [name, tuples] : s.relations) {
        const auto& mirror = other.relations.at(name);
        for (const auto& t : tuples)
            for (int e : t) {
                auto& list = out[e];
                if (!list.empty() && list.back().tuple == &t) continue;
                list.push_back({&t, &tuples, &mirror});
            }
    }
    return out;
}

// Pebble games on a pair of structures. A position is a set of pairs
// (element of a, element of b) including the constants; duplicate pairs
// collapse, so memoization is on (pair set, rounds).
class Game {
public:
    Game(const Structure& a, const Structure& b, bool existential, const SearchBudget& budget)
        : a_(a), b_(b), existential_(existential), budget_(budget) {
        if (!same_vocab(a, b))
            throw InputError("vocabulary mismatch between game boards");
        fwd_.assign(a.size(), -1);
        bwd_.assign(b.size(), -1);
        incident_a_ = incidence(a, b);
        if (!existential) incident_b_ = incidence(b, a);
        for (const auto& [name, ia] : a.constants) base_.emplace_back(ia, b.constants.at(name));
    }

    bool wins(const std::vector<int>& ta, const std::vector<int>& tb, int rounds) {
        if (ta.size() != tb.size())
            throw InputError("pinned tuples must have equal length");
        std::vector<std::pair<int, int>> position = base_;
        for (size_t i = 0; i < ta.size(); ++i) position.emplace_back(ta[i], tb[i]);
        std::sort(position.begin(), position.end());
        position.erase(std::unique(position.begin(), position.end()), position.end());

        // seed the maps, rejecting ill-defined or (for EF) non-injective seeds
        for (auto [x, y] : position) {
            if (fwd_[x] != -1 && fwd_[x] != y) return reset(position, false);
            fwd_[x] = y;
            if (!existential_) {
                if (bwd_[y] != -1 && bwd_[y] != x) return reset(position, false);
                bwd_[y] = x;
            }
        }
        bool consistent = true;
        for (auto [x, y] : position) {
            (void)y;
            if (!tuples_ok(x, incident_a_, fwd_, /*forward=*/true)) consistent = false;
        }
        if (!existential_ && consistent)
            for (auto [x, y] : position) {
                (void)x;
                if (!tuples_ok(y, incident_b_, bwd_, /*forward=*/false)) consistent = false;
            }
        if (!consistent) return reset(position, false);
        bool verdict = play(position, rounds);
        return reset(position, verdict);
    }

private:
    const Structure& a_;
    const Structure& b_;
    bool existential_;
    SearchBudget budget_;
    std::vector<std::pair<int, int>> base_;
    std::vector<int> fwd_, bwd_;
    std::vector<std::vector<IncidentTuple>> incident_a_, incident_b_;
    std::unordered_map<std::string, bool> memo_;
    long long positions_ = 0;

    bool reset(const std::vector<std::pair<int, int>>& position, bool verdict) {
        for (auto [x, y] : position) {
            fwd_[x] = -1;
            bwd_[y] = -1;
        }
        return verdict;
    }

    // All tuples incident to `element` whose entries are fully mapped must
    // land in the mirrored relation. `map` is fwd (a side) or bwd (b side).
    bool tuples_ok(int element, const std::vector<std::vector<IncidentTuple>>& incident,
                   const std::vector<int>& map, bool forward) const {
        (void)forward;
        for (const auto& ref : incident[element]) {
            std::vector<int> image;
            image.reserve(ref.tuple->size());
            bool complete = true;
            for (int e : *ref.tuple) {
                if (map[e] == -1) {
                    complete = false;
                    break;
                }
                image.push_back(map[e]);
            }
            if (complete &&
                !std::binary_search(ref.other_tuples->begin(), ref.other_tuples->end(), image))
                return false;
        }
        return true;
    }

    static std::string key_of(const std::vector<std::pair<int, int>>& position, int rounds) {
        std::string key;
        key.reserve(position.size() * 2 + 1);
        for (auto [x, y] : position) {
            key.push_back(static_cast<char>(x));
            key.push_back(static_cast<char>(y));
        }
        key.push_back(static_cast<char>(rounds));
        return key;
    }

    // Duplicator's verdict; fwd_/bwd_ mirror `position` on entry and exit.
    bool play(const std::vector<std::pair<int, int>>& position, int rounds) {
        if (rounds <= 0) return true;
        auto key = key_of(position, rounds);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        if (budget_.node_limit > 0 && ++positions_ > budget_.node_limit)
            throw BudgetError("game exceeded its position budget");

        bool verdict = spoiler_side(position, rounds, /*in_a=*/true);
        if (verdict && !existential_) verdict = spoiler_side(position, rounds, /*in_a=*/false);
        memo_[key] = verdict;
        return verdict;
    }

    bool spoiler_side(const std::vector<std::pair<int, int>>& position, int rounds, bool in_a) {
        const int moves = in_a ? a_.size() : b_.size();
        const int replies = in_a ? b_.size() : a_.size();
        for (int m = 0; m < moves; ++m) {
            bool answered = false;
            for (int r = 0; r < replies && !answered; ++r) {
                int x = in_a ? m : r;
                int y = in_a ? r : m;
                if (extend_consistent(x, y)) {
                    if (fwd_[x] != -1) {
                        // position unchanged (repeated pair)
                        if (play(position, rounds - 1)) answered = true;
                    } else {
                        fwd_[x] = y;
                        if (!existential_) bwd_[y] = x;
                        bool ok = tuples_ok(x, incident_a_, fwd_, true) &&
                                  (existential_ || tuples_ok(y, incident_b_, bwd_, false));
                        if (ok) {
                            auto next = position;
                            next.insert(std::lower_bound(next.begin(), next.end(),
                                                         std::make_pair(x, y)),
                                        {x, y});
                            if (play(next, rounds - 1)) answered = true;
                        }
                        fwd_[x] = -1;
                        if (!existential_) bwd_[y] = -1;
                    }
                }
            }
            if (!answered) return false;
        }
        return true;
    }

    // Map-level consistency of adding (x, y) to the current position.
    bool extend_consistent(int x, int y) const {
        if (fwd_[x] != -1) return fwd_[x] == y;
        if (!existential_ && bwd_[y] != -1) return false;
        return true;
    }
};

std::vector<int> pinned_indices(const Structure& s, const std::vector<std::string>& tuple) {
    return indices_of(s, tuple);
}

} // namespace

bool ef_equivalent(const Structure& a, const std::vector<std::string>& ta, const Structure& b,
                   const std::vector<std::string>& tb, int rounds, const SearchBudget& budget) {
    Game game(a, b, /*existential=*/false, budget);
    return game.wins(pinned_indices(a, ta), pinned_indices(b, tb), rounds);
}

bool k_hom_pinned(const Structure& a, const std::vector<std::string>& ta, const Structure& b,
                  const std::vector<std::string>& tb, int k, const SearchBudget& budget) {
    Game game(a, b, /*existential=*/true, budget);
    return game.wins(pinned_indices(a, ta), pinned_indices(b, tb), k);
}

bool k_hom(const Structure& a, const Structure& b, int k, const std::set<std::string>& x,
           const SearchBudget& budget) {
    std::vector<std::string> pinned(x.begin(), x.end());
    for (const auto& id : pinned)
        if (a.index_of(id) < 0 || b.index_of(id) < 0)
            throw InputError("pinned element missing from a universe: " + id);
    return k_hom_pinned(a, pinned, b, pinned, k, budget);
}

bool k_hom_equivalent(const Structure& a, const Structure& b, int k, const std::set<std::string>& x,
                      const SearchBudget& budget) {
    return k_hom(a, b, k, x, budget) && k_hom(b, a, k, x, budget);
}

bool k_hom_equivalent_pinned(const Structure& a, const std::vector<std::string>& ta,
                             const Structure& b, const std::vector<std::string>& tb, int k,
                             const SearchBudget& budget) {
    return k_hom_pinned(a, ta, b, tb, k, budget) && k_hom_pinned(b, tb, a, ta, k, budget);
}

Structure k_core(const Structure& a, int k, const std::vector<Structure>& pool,
                 const SearchBudget& budget) {
    (void)k; // the pool already realizes the tree-depth bound
    std::vector<const Structure*> mapping_in;
    for (const auto& test : pool) {
        auto r = find_homomorphism(test, a, {}, budget);
        if (r.budget_exhausted())
            throw BudgetError("k-core requires complete searches");
        if (r.found()) mapping_in.push_back(&test);
    }
    // Members absorbed by another member do not change the join.
    std::vector<const Structure*> maximal;
    for (size_t i = 0; i < mapping_in.size(); ++i) {
        bool absorbed = false;
        for (size_t j = 0; j < mapping_in.size() && !absorbed; ++j) {
            if (i == j) continue;
            auto forward = find_homomorphism(*mapping_in[i], *mapping_in[j], {}, budget);
            if (forward.budget_exhausted())
                throw BudgetError("k-core requires complete searches");
            if (!forward.found()) continue;
            // on mutual absorption keep the later member
            if (j > i || !find_homomorphism(*mapping_in[j], *mapping_in[i], {}, budget).found())
                absorbed = true;
        }
        if (!absorbed) maximal.push_back(mapping_in[i]);
    }
    if (maximal.empty()) return free_term_structure(a.vocab);

    Structure join = *maximal.front();
    for (size_t i = 1; i < maximal.size(); ++i) join = coproduct(join, *maximal[i]).object;
    Structure reduced = core(join, {}, budget);
    if (reduced.size() <= 8) return canonical_form(reduced);
    return reduced;
}

EquivSpec parse_equiv_spec(const std::string& text) {
    if (text == "iso") return {EquivKind::isomorphism, 0};
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        std::string kind = text.substr(0, colon);
        int level = 0;
        try {
            level = std::stoi(text.substr(colon + 1));
        } catch (const std::exception&) {
            throw InputError("bad equivalence level in: " + text);
        }
        if (level < 0) throw InputError("equivalence level must be nonnegative");
        if (kind == "ef") return {EquivKind::ef, level};
        if (kind == "khom") return {EquivKind::khom, level};
    }
    throw InputError("unknown equivalence spec (want iso | ef:L | khom:L): " + text);
}

std::string to_string(const EquivSpec& spec) {
    switch (spec.kind) {
    case EquivKind::isomorphism: return "iso";
    case EquivKind::ef: return "ef:" + std::to_string(spec.level);
    case EquivKind::khom: return "khom:" + std::to_string(spec.level);
    }
    return "iso";
}

bool structures_equivalent(const Structure& a, const Structure& b, const EquivSpec& equiv,
                           const SearchBudget& budget) {
    switch (equiv.kind) {
    case EquivKind::isomorphism: return isomorphic(a, b);
    case EquivKind::ef: return ef_equivalent(a, {}, b, {}, equiv.level, budget);
    case EquivKind::khom: return k_hom_equivalent(a, b, equiv.level, {}, budget);
    }
    return false;
}

std::optional<std::map<std::string, std::string>> hanf_check(
    const Structure& a, const std::vector<std::string>& ta, const Structure& b,
    const std::vector<std::string>& tb, int d, const EquivSpec& equiv,
    const SearchBudget& budget) {
    if (ta.size() != tb.size())
        throw InputError("pinned tuples must have equal length");
    if (a.size() != b.size()) return std::nullopt;

    const int n = a.size();
    std::vector<Structure> around_a, around_b;
    around_a.reserve(n);
    around_b.reserve(n);
    for (int i = 0; i < n; ++i) {
        auto ta_extended = ta;
        ta_extended.push_back(a.universe[i]);
        around_a.push_back(neighborhood(a, ta_extended, d));
        auto tb_extended = tb;
        tb_extended.push_back(b.universe[i]);
        around_b.push_back(neighborhood(b, tb_extended, d));
    }

    std::vector<std::vector<int>> compatible(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (structures_equivalent(around_a[i], around_b[j], equiv, budget))
                compatible[i].push_back(j);

    auto match = maximum_bipartite_matching(compatible, n);
    std::map<std::string, std::string> bijection;
    for (int i = 0; i < n; ++i) {
        if (match[i] < 0) return std::nullopt;
        bijection[a.universe[i]] = b.universe[match[i]];
    }
    // re-verify the returned bijection pairwise
    for (int i = 0; i < n; ++i)
        if (!structures_equivalent(around_a[i], around_b[match[i]], equiv, budget))
            throw InputError("internal error: matching returned an incompatible pair");
    return bijection;
}

bool gaifman_check(const Structure& a, const std::vector<std::string>& ta, const Structure& b,
                   const std::vector<std::string>& tb, int d, const EquivSpec& equiv,
                   const SearchBudget& budget) {
    if (!structures_equivalent(a, b, equiv, budget)) return false;
    return structures_equivalent(neighborhood(a, ta, d), neighborhood(b, tb, d), equiv, budget);
}

bool weakly_local_premise(const Structure& a, const std::vector<std::string>& ta,
                          const std::vector<std::string>& tb, int d, const EquivSpec& equiv,
                          const SearchBudget& budget) {
    auto ball_a = ball(a, ta, d);
    auto ball_b = ball(a, tb, d);
    std::vector<std::string> overlap;
    std::set_intersection(ball_a.begin(), ball_a.end(), ball_b.begin(), ball_b.end(),
                          std::back_inserter(overlap));
    if (!overlap.empty()) return false;
    return structures_equivalent(neighborhood(a, ta, d), neighborhood(a, tb, d), equiv, budget);
}

namespace {

// All size-m subsets of [0, n), lexicographic.
void for_each_subset(int n, int m, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> pick;
    std::function<void(int)> grow = [&](int from) {
        if (static_cast<int>(pick.size()) == m) {
            fn(pick);
            return;
        }
        for (int v = from; v < n; ++v) {
            pick.push_back(v);
            grow(v + 1);
            pick.pop_back();
        }
    };
    grow(0);
}

// All injective assignments of `slots` elements from [0, n), lexicographic.
void for_each_injection(int n, int slots, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> pick;
    std::vector<bool> used(n, false);
    std::function<void()> grow = [&]() {
        if (static_cast<int>(pick.size()) == slots) {
            fn(pick);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            pick.push_back(v);
            grow();
            pick.pop_back();
            used[v] = false;
        }
    };
    grow();
}

} // namespace

bool k_extendable(const Structure& a, int k, const std::vector<Structure>& pool,
                  bool strict_paper_reading, const SearchBudget& budget) {
    if (k < 0) throw InputError("negative round count");
    bool extendable = true;
    for (const auto& candidate : pool) {
        if (!extendable) break;
        if (!same_vocab(candidate, a)) continue;
        // one game pair per candidate so memoized positions are shared
        Game forward(a, candidate, /*existential=*/true, budget);
        Game backward(candidate, a, /*existential=*/true, budget);
        auto pinned_equiv = [&](const std::vector<int>& ia, const std::vector<int>& ib,
                                int rounds) {
            return forward.wins(ia, ib, rounds) && backward.wins(ib, ia, rounds);
        };
        for (int m = 0; m < k && extendable; ++m) {
            const int j = k - m;
            for_each_subset(a.size(), m, [&](const std::vector<int>& xa) {
                if (!extendable) return;
                for_each_injection(candidate.size(), m, [&](const std::vector<int>& xb) {
                    if (!extendable) return;
                    if (!pinned_equiv(xa, xb, j)) return;
                    for (int bvalue = 0; bvalue < candidate.size() && extendable; ++bvalue) {
                        auto xb_extended = xb;
                        xb_extended.push_back(bvalue);
                        bool matched = false;
                        for (int avalue = 0; avalue < a.size() && !matched; ++avalue) {
                            auto xa_extended = xa;
                            xa_extended.push_back(avalue);
                            if (strict_paper_reading ? pinned_equiv(xa, xb, j - 1)
                                                     : pinned_equiv(xa_extended, xb_extended,
                                                                    j - 1))
                                matched = true;
                        }
                        if (!matched) extendable = false;
                    }
                });
            });
        }
    }
    return extendable;
}

ExtendabilityTransferReport lemma29_check(const Structure& a, const Structure& b, int k,
                                          const std::vector<Structure>& pool,
                                          const SearchBudget& budget) {
    ExtendabilityTransferReport report;
    report.a_extendable = k_extendable(a, k, pool, false, budget);
    report.b_extendable = k_extendable(b, k, pool, false, budget);
    report.k_hom_equivalent = k_hom_equivalent(a, b, k, {}, budget);
    report.premise = report.a_extendable && report.b_extendable && report.k_hom_equivalent;
    report.ef_equivalent = ef_equivalent(a, {}, b, {}, k, budget);
    report.counterexample = report.premise && !report.ef_equivalent;
    return report;
}

} // namespace fmw
