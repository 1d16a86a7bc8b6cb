#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fmw/vocabulary.hpp"

namespace fmw {

/// A finite relational structure: universe, relation interpretations and
/// constant interpretations over a shared vocabulary.
///
/// Internal invariants (established by make_structure / deserialization,
/// checked by validate):
///   - universe is sorted and duplicate-free; tuples store universe indices
///   - relations has an entry for every relation symbol, tuples sorted
///   - constants has an entry for every constant symbol
/// Structures are immutable after construction; all operations are pure.
struct Structure {
    Vocabulary vocab;
    std::vector<std::string> universe;
    std::map<std::string, std::vector<std::vector<int>>> relations;
    std::map<std::string, int> constants;

    bool operator==(const Structure&) const = default;

    int size() const { return static_cast<int>(universe.size()); }
    const std::string& id_of(int index) const { return universe.at(index); }
    /// -1 when the identifier is not in the universe.
    int index_of(const std::string& id) const;
    bool has_tuple(const std::string& relation, const std::vector<int>& tuple) const;
};

/// Reports the first violated invariant (arity mismatch, dangling element,
/// uninterpreted constant, unsorted data) as an InputError.
void validate(const Structure& s);

/// Builds a structure from name-level data, sorting and validating.
Structure make_structure(Vocabulary vocab,
                         std::vector<std::string> universe,
                         std::map<std::string, std::vector<std::vector<std::string>>> relations,
                         std::map<std::string, std::string> constants = {});

/// Same universe and relations, with fresh constants interpreted as the
/// entries of `tuple`; the n = 0 expansion returns `a` unchanged.
Structure expand(const Structure& a, const std::vector<std::string>& tuple);

/// Induced substructure on `keep` (universe indices, any order). Throws if an
/// interpreted constant falls outside the kept set.
Structure induced_substructure(const Structure& a, const std::vector<int>& keep);

/// Elements interpreting constants, as a sorted set of identifiers.
std::set<std::string> constant_elements(const Structure& a);

/// Translates an index tuple to identifiers (and back; throws on unknowns).
std::vector<std::string> ids_of(const Structure& a, const std::vector<int>& tuple);
std::vector<int> indices_of(const Structure& a, const std::vector<std::string>& tuple);

bool same_vocab(const Structure& a, const Structure& b);

// Bundled fixture builders (the on-disk fixtures mirror these).
Structure fixture_k2();
Structure fixture_k3();
Structure fixture_p3();
Structure fixture_c4();
Structure fixture_loop1();
Structure fixture_pt1();
/// Symmetric n-cycle over {E/2} with elements v0..v(n-1).
Structure symmetric_cycle(int n);

} // namespace fmw
