#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fmw {

/// Relation symbols with arities plus an ordered list of constant symbols.
/// Names must be unique and the two name sets disjoint; arities are >= 1.
struct Vocabulary {
    std::map<std::string, int> relations;
    std::vector<std::string> constants;

    bool operator==(const Vocabulary&) const = default;

    bool has_relation(const std::string& name) const { return relations.count(name) > 0; }
    bool has_constant(const std::string& name) const;
    int arity(const std::string& relation) const;
};

/// Throws InputError on duplicate/overlapping names or arity < 1.
void validate(const Vocabulary& v);

Vocabulary make_vocabulary(std::map<std::string, int> relations,
                           std::vector<std::string> constants = {});

/// Parses a comma-separated vocabulary spec: `E/2,c_1` is one binary
/// relation E plus one constant c_1. Order of constants is preserved.
Vocabulary parse_vocabulary_spec(std::string_view spec);

std::string vocabulary_spec(const Vocabulary& v);

/// `v` extended with `n` fresh constant symbols (named c_1, c_2, ... skipping
/// names already taken). Returns the new vocabulary and the fresh names.
std::pair<Vocabulary, std::vector<std::string>> expand_vocabulary(const Vocabulary& v, int n);

} // namespace fmw
