#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fmw/homsearch.hpp"
#include "fmw/vocabulary.hpp"

namespace fmw {

/// Outcome of one exhaustive cross-check over all structures up to a size.
/// Deterministic content (no timing) so repeated runs serialize identically.
struct SweepOutcome {
    std::string check;
    long long cases = 0;
    long long counterexamples = 0;
    std::vector<std::string> details; // first few counterexample descriptions
    nlohmann::json bounds = nlohmann::json::object();

    bool passed() const { return counterexamples == 0; }
};

nlohmann::json to_json(const SweepOutcome& s);

/// Game-based k-homomorphism versus the bounded pp-test decision, all
/// ordered pairs, k in 1..k_max.
SweepOutcome sweep_lemma28(const Vocabulary& v, int max_size, int k_max, int size_cap,
                           const SearchBudget& budget = {});

/// Section-based acyclic-fibration classification versus the lifting
/// characterization against all initial inclusions, over every homomorphism
/// between enumerated structures; also: every acyclic fibration is a weak
/// equivalence.
SweepOutcome sweep_theorem2(const Vocabulary& v, int max_size, const SearchBudget& budget = {});

/// k-hom-equivalence (the homotopic side) versus bidirectional pp-test
/// agreement, all pairs, k in 1..k_max.
SweepOutcome sweep_theorem3(const Vocabulary& v, int max_size, int k_max, int size_cap,
                            const SearchBudget& budget = {});

/// No pair may be pool-k-extendable both sides and k-hom-equivalent yet not
/// EF-k-equivalent.
SweepOutcome sweep_lemma29(const Vocabulary& v, int max_size, int k_max, int pool_cap,
                           const SearchBudget& budget = {});

/// Mediating-morphism existence and uniqueness for products, coproducts,
/// equalizers and coequalizers, by exhaustive search over enumerated hom
/// sets.
SweepOutcome sweep_universal_properties(const Vocabulary& v, int max_size,
                                        const SearchBudget& budget = {});

/// core() output is a core, a retract of the input, and invariant under
/// element-order reversal, for every structure up to max_size.
SweepOutcome sweep_core_correctness(const Vocabulary& v, int max_size,
                                    const SearchBudget& budget = {});

/// EF-equivalence is an equivalence relation refined by higher rounds and
/// implied by isomorphism, k in 0..k_max.
SweepOutcome sweep_ef_sanity(const Vocabulary& v, int max_size, int k_max,
                             const SearchBudget& budget = {});

} // namespace fmw
