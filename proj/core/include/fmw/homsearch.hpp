#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fmw/morphism.hpp"
#include "fmw/structure.hpp"

namespace fmw {

/// node_limit counts search-tree nodes; time_limit_ms is wall clock.
/// Zero means unlimited.
struct SearchBudget {
    long long node_limit = 10'000'000;
    long long time_limit_ms = 0;
};

/// complete distinguishes proven nonexistence from a budget-limited answer.
struct HomSearchResult {
    std::optional<Morphism> morphism;
    bool complete = true;
    long long nodes = 0;

    bool found() const { return morphism.has_value(); }
    bool proven_absent() const { return !morphism && complete; }
    bool budget_exhausted() const { return !morphism && !complete; }
};

using Pins = std::map<std::string, std::string>;

struct SearchOptions {
    Pins pins;
    /// Optional per-source-element candidate restriction (element -> allowed
    /// target ids). Elements not listed are unrestricted.
    std::map<std::string, std::vector<std::string>> allowed;
    bool injective = false;
    bool surjective = false;
    /// Lexicographic element order instead of Gaifman-degree order; used
    /// where enumeration order is part of the contract.
    bool lexicographic_order = false;
    SearchBudget budget;
};

/// Backtracking search for a homomorphism a -> b extending `pins` (constants
/// are always pinned). Deterministic: elements in Gaifman-degree-descending
/// order (ties by identifier), candidates in identifier order.
HomSearchResult find_homomorphism(const Structure& a, const Structure& b,
                                  const Pins& pins = {}, const SearchBudget& budget = {});

HomSearchResult find_homomorphism_constrained(const Structure& a, const Structure& b,
                                              const SearchOptions& options);

/// Exhaustive, in lexicographic order of the map (element order). Throws
/// BudgetError when |B|^|A| exceeds `cap`.
std::vector<Morphism> find_all_homomorphisms(const Structure& a, const Structure& b,
                                             const Pins& pins = {}, long long cap = 10'000'000);

/// Early-exit enumeration in deterministic order; `fn` returns false to stop.
/// The return value reports whether the space was fully explored.
bool for_each_homomorphism(const Structure& a, const Structure& b, const SearchOptions& options,
                           const std::function<bool(const std::vector<int>&)>& fn);

bool exists_surjective_homomorphism(const Structure& a, const Structure& b,
                                    const SearchBudget& budget = {});

/// Endomorphism of `a` fixing `onto` pointwise with image inside it; `onto`
/// must contain every constant.
HomSearchResult find_retraction(const Structure& a, const std::vector<std::string>& onto,
                                const SearchBudget& budget = {});

std::vector<Morphism> endomorphisms(const Structure& a, long long cap = 10'000'000);

/// a -> b and b -> a, both over X (identity pins on X). Throws BudgetError if
/// either search is budget-limited before an answer is known.
bool hom_equivalent(const Structure& a, const Structure& b, const std::set<std::string>& x = {},
                    const SearchBudget& budget = {});

std::optional<Morphism> find_isomorphism(const Structure& a, const Structure& b,
                                         const SearchBudget& budget = {});

} // namespace fmw
