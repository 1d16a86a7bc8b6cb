#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fmw/homsearch.hpp"
#include "fmw/structure.hpp"

namespace fmw {

/// True iff the duplicator wins the k-round Ehrenfeucht-Fraissé game on a
/// and b starting from the pinned position (ta, tb); constants are part of
/// the position. Memoized on (position set, rounds).
bool ef_equivalent(const Structure& a, const std::vector<std::string>& ta, const Structure& b,
                   const std::vector<std::string>& tb, int rounds,
                   const SearchBudget& budget = {});

/// The k-round existential homomorphism game: the spoiler plays only in a,
/// positions must stay partial homomorphisms extending the identity on x
/// (and the constants). Decides preservation of all tree-depth-<=-k
/// consequences exactly.
bool k_hom(const Structure& a, const Structure& b, int k, const std::set<std::string>& x = {},
           const SearchBudget& budget = {});
/// Tuple-pinned variant: the initial position carries ta -> tb.
bool k_hom_pinned(const Structure& a, const std::vector<std::string>& ta, const Structure& b,
                  const std::vector<std::string>& tb, int k, const SearchBudget& budget = {});

bool k_hom_equivalent(const Structure& a, const Structure& b, int k,
                      const std::set<std::string>& x = {}, const SearchBudget& budget = {});
bool k_hom_equivalent_pinned(const Structure& a, const std::vector<std::string>& ta,
                             const Structure& b, const std::vector<std::string>& tb, int k,
                             const SearchBudget& budget = {});

/// The join of the pool members mapping into `a` (amalgam over the
/// constants, then core): the bounded k-core. `pool` should come from
/// enumerate_pp_tests over the same vocabulary; members are cores pairwise
/// non-isomorphic. Returns the initial object when nothing maps in.
Structure k_core(const Structure& a, int k, const std::vector<Structure>& pool,
                 const SearchBudget& budget = {});

enum class EquivKind { isomorphism, ef, khom };
struct EquivSpec {
    EquivKind kind = EquivKind::isomorphism;
    int level = 0; // rounds for ef/khom
};
/// Parses "iso" | "ef:L" | "khom:L".
EquivSpec parse_equiv_spec(const std::string& text);
std::string to_string(const EquivSpec& spec);

/// Dispatch for neighborhood (or whole-structure) equivalence.
bool structures_equivalent(const Structure& a, const Structure& b, const EquivSpec& equiv,
                           const SearchBudget& budget = {});

/// Bijection f with neighborhood(a, ta+c, d) equivalent to
/// neighborhood(b, tb+f(c), d) for every c, found by maximum bipartite
/// matching over the compatibility graph; nullopt is a proof that no such
/// bijection exists (sizes differ or no perfect matching).
std::optional<std::map<std::string, std::string>> hanf_check(
    const Structure& a, const std::vector<std::string>& ta, const Structure& b,
    const std::vector<std::string>& tb, int d, const EquivSpec& equiv,
    const SearchBudget& budget = {});

/// Premise of the Gaifman-locality implication: the whole structures are
/// equivalent and so are the d-neighborhoods of the pinned tuples.
bool gaifman_check(const Structure& a, const std::vector<std::string>& ta, const Structure& b,
                   const std::vector<std::string>& tb, int d, const EquivSpec& equiv,
                   const SearchBudget& budget = {});

/// Premise of weak locality: both tuples live in the same structure, their
/// d-neighborhoods are equivalent and their d-balls are disjoint.
bool weakly_local_premise(const Structure& a, const std::vector<std::string>& ta,
                          const std::vector<std::string>& tb, int d, const EquivSpec& equiv,
                          const SearchBudget& budget = {});

/// Bounded k-extendability over `pool`: for every X of size < k and every
/// pool member with a designated copy of X that is (k-|X|)-hom-equivalent to
/// a over X, every element of the pool member has a partner in a extending
/// the equivalence one level down. `strict_paper_reading` switches to the
/// literal element-independent reading.
bool k_extendable(const Structure& a, int k, const std::vector<Structure>& pool,
                  bool strict_paper_reading = false, const SearchBudget& budget = {});

struct ExtendabilityTransferReport {
    bool a_extendable = false;
    bool b_extendable = false;
    bool k_hom_equivalent = false;
    bool premise = false;
    bool ef_equivalent = false; // conclusion
    bool counterexample = false;
};
/// Checks the transfer of k-extendability: when both structures are
/// pool-k-extendable and k-hom-equivalent they must be EF-k-equivalent.
ExtendabilityTransferReport lemma29_check(const Structure& a, const Structure& b, int k,
                                          const std::vector<Structure>& pool,
                                          const SearchBudget& budget = {});

} // namespace fmw
