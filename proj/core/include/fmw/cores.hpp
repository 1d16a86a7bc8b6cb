#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fmw/homsearch.hpp"
#include "fmw/morphism.hpp"
#include "fmw/structure.hpp"

namespace fmw {

/// True iff every endomorphism of `a` fixing `x` pointwise is an
/// automorphism. Requires a complete search; throws BudgetError otherwise.
bool is_core(const Structure& a, const std::set<std::string>& x = {},
             const SearchBudget& budget = {});

struct CoreResult {
    Structure core;       // induced substructure of the input, contains x
    Morphism retraction;  // endomorphism of the input onto the core, fixing it
};

/// The core of `a` over `x`: an induced substructure containing x that is a
/// retract of `a` and a core over x. Deterministic; unique up to isomorphism
/// over x. Descends through single-element retracts, falling back to the
/// image of a stabilized non-injective endomorphism when no single-element
/// retract exists.
CoreResult core_with_retraction(const Structure& a, const std::set<std::string>& x = {},
                                const SearchBudget& budget = {});
Structure core(const Structure& a, const std::set<std::string>& x = {},
               const SearchBudget& budget = {});

/// Quotient of a finite collection by hom-equivalence over x, ordered by the
/// existence of homomorphisms over x.
struct Poset {
    struct ClassInfo {
        std::vector<std::string> members;  // input names, in input order
        Structure representative;          // core over x of the first member
    };
    std::vector<ClassInfo> classes;
    std::vector<std::vector<bool>> leq;  // leq[i][j]: classes[i] ->_x classes[j]

    std::vector<std::pair<int, int>> hasse_edges() const;
};

Poset quotient_poset(const std::vector<std::pair<std::string, Structure>>& collection,
                     const std::set<std::string>& x = {}, const SearchBudget& budget = {});

} // namespace fmw
