#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fmw/cores.hpp"
#include "fmw/morphism.hpp"

namespace fmw {

/// A commutative square: p (X -> Y) after f (A -> X) equals g (B -> Y)
/// after i (A -> B). Validated on construction.
struct LiftingProblem {
    Morphism i, p, f, g;
};
LiftingProblem make_lifting_problem(Morphism i, Morphism p, Morphism f, Morphism g);

struct LiftResult {
    std::optional<Morphism> lift; // h: B -> X with h(i(.)) = f and p(h(.)) = g
    bool complete = true;
};
LiftResult find_lift(const LiftingProblem& lp, const SearchBudget& budget = {});

/// Weak equivalence: the endpoints are hom-equivalent (constants pinned by
/// the homomorphism condition itself).
bool is_weak_equivalence(const Morphism& f, const SearchBudget& budget = {});

/// Acyclic fibration: f has a section on the target side (s with f after s
/// the identity), i.e. f is a retraction in the categorical sense.
bool is_acyclic_fibration(const Morphism& f, const SearchBudget& budget = {});

/// The lifting-based characterization: f has the right lifting property
/// against the initial inclusion of every test object. Must agree with
/// is_acyclic_fibration when the test family is rich enough.
bool is_acyclic_fibration_rlp(const Morphism& f, const std::vector<Structure>& test_objects,
                              const SearchBudget& budget = {});

/// Section: some r with r after f the identity on the source.
bool is_section(const Morphism& f, const SearchBudget& budget = {});

/// Any two parallel morphisms are homotopic here; the witness is the sum map
/// through the cylinder A + A (the coproduct with constants glued).
struct HomotopyWitness {
    bool homotopic = false;
    Structure cylinder;      // A + A
    Morphism into_left;      // A -> cylinder
    Morphism into_right;     // A -> cylinder
    Morphism homotopy;       // cylinder -> X restricting to f and g
};
HomotopyWitness homotopic(const Morphism& f, const Morphism& g);

/// Weak k-equivalence: a weak equivalence whose endpoints are additionally
/// k-hom-equivalent.
bool is_weak_k_equivalence(const Morphism& f, int k, const SearchBudget& budget = {});

/// The homotopy category at desk scale: the hom-equivalence quotient poset.
Poset homotopy_category(const std::vector<std::pair<std::string, Structure>>& collection,
                        const std::set<std::string>& x = {}, const SearchBudget& budget = {});

/// Both sides of the pp-sentence agreement claim for a pair of pinned
/// structures: the game side (k-hom-equivalence over the constants) and the
/// bounded pp-test side, which must coincide.
struct Theorem3Report {
    bool lhs = false;           // k-homotopic side, decided by the game
    bool rhs_forward = false;   // pp tests of a transfer to b
    bool rhs_backward = false;
    bool rhs = false;
    bool agree = false;
    int k = 0;
    int size_cap = 0;
    std::optional<std::string> separating_sentence;
};
Theorem3Report theorem3_verify(const Structure& n1, const Structure& n2, int k, int size_cap = 3,
                               const SearchBudget& budget = {});

} // namespace fmw
