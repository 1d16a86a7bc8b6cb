#pragma once

#include "fmw/morphism.hpp"
#include "fmw/structure.hpp"

namespace fmw {

struct ProductResult {
    Structure object;
    Morphism to_left;
    Morphism to_right;
};

struct CoproductResult {
    Structure object;
    Morphism from_left;
    Morphism from_right;
};

struct EqualizerResult {
    Structure object;
    Morphism inclusion;
};

struct CoequalizerResult {
    Structure object;
    Morphism quotient;
};

/// Categorical product: Cartesian universe with pair-encoded identifiers
/// "(a,b)", componentwise tuples and constants.
ProductResult product(const Structure& a, const Structure& b);

/// Coproduct. Without constants this is the disjoint union (identifiers
/// tagged "l:"/"r:"); with constants it is the amalgam gluing c^A with c^B,
/// classes named by their least member.
CoproductResult coproduct(const Structure& a, const Structure& b);

/// Amalgamated sum gluing the shared elements (plus constants): both inputs
/// must contain every shared identifier. Shared elements keep their bare
/// names; everything else is tagged as in coproduct.
CoproductResult coproduct_over(const Structure& a, const Structure& b,
                               const std::set<std::string>& shared);

/// Induced substructure on the agreement set {x | f(x) = g(x)}.
EqualizerResult equalizer(const Morphism& f, const Morphism& g);

/// Quotient of the common target by the equivalence relation generated by
/// {(f(x), g(x))}; classes are named by their least member.
CoequalizerResult coequalizer(const Morphism& f, const Morphism& g);

/// The structure of closed terms: the constant symbols themselves, with all
/// relations empty. For a constant-free vocabulary this is the empty
/// structure. Initial object of the category.
Structure free_term_structure(const Vocabulary& v);

/// The unique homomorphism free_term_structure(v) -> a.
Morphism initial_morphism(const Vocabulary& v, const Structure& a);

/// One-element structure with full relations; terminal object.
Structure top(const Vocabulary& v);

} // namespace fmw
