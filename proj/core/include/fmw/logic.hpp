#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fmw/structure.hpp"

namespace fmw {

struct Term {
    enum class Kind { variable, constant };
    Kind kind;
    std::string name;

    bool operator==(const Term&) const = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// First-order AST. Grammar accepted by parse_formula:
///
///   formula := 'exists' var '.' formula | 'forall' var '.' formula | impl
///   impl    := disj ('->' impl)?
///   disj    := conj ('|' conj)*
///   conj    := unary ('&' unary)*
///   unary   := '!' unary | '(' formula ')' | atom
///   atom    := NAME '(' term (',' term)* ')' | term '=' term | 'true'
///
/// Whitespace-insensitive; errors carry byte offsets; shadowing a bound
/// variable (or binding a vocabulary symbol) is rejected.
struct Formula {
    enum class Kind {
        truth,
        atom,
        equality,
        negation,
        conjunction,
        disjunction,
        implication,
        exists,
        forall
    };
    Kind kind;
    std::string relation;              // atom
    std::vector<Term> terms;           // atom arguments; equality has two
    std::vector<FormulaPtr> children;  // connectives and quantifier bodies
    std::string variable;              // quantifiers
};

FormulaPtr make_truth();
FormulaPtr make_atom(std::string relation, std::vector<Term> terms);
FormulaPtr make_equality(Term lhs, Term rhs);
FormulaPtr make_negation(FormulaPtr f);
FormulaPtr make_conjunction(std::vector<FormulaPtr> children);
FormulaPtr make_disjunction(std::vector<FormulaPtr> children);
FormulaPtr make_implication(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_exists(std::string variable, FormulaPtr body);
FormulaPtr make_forall(std::string variable, FormulaPtr body);

/// Parse against a vocabulary: relation symbols and arities are checked, and
/// identifiers in term position resolve to constants when the vocabulary
/// names them.
FormulaPtr parse_formula(const std::string& text, const Vocabulary& v);
/// Vocabulary-free parse: every identifier in term position is a variable;
/// relation arities are inferred and must be used consistently.
FormulaPtr parse_formula(const std::string& text);

/// Deterministic re-parseable rendering.
std::string format_formula(const FormulaPtr& f);

int quantifier_rank(const FormulaPtr& f);

enum class FormulaClass { primitive_positive, existential_positive, general };
FormulaClass classify(const FormulaPtr& f);
std::string to_string(FormulaClass c);

std::set<std::string> free_variables(const FormulaPtr& f);

/// Tarskian satisfaction over the finite universe. The assignment must cover
/// the free variables (identifiers of elements of a).
bool evaluate(const Structure& a, const FormulaPtr& f,
              const std::map<std::string, std::string>& assignment = {});

/// The canonical structure of a primitive-positive sentence: universe is the
/// variables and constants modulo the sentence's equalities, tuples are its
/// atoms. Satisfies B |= f iff canonical_structure(f) -> B.
Structure canonical_structure(const FormulaPtr& f, const Vocabulary& v);

/// A primitive-positive sentence theta with B |= theta iff c ->_x B,
/// quantifying along an optimal elimination forest so that the quantifier
/// rank equals the tree-depth of c over x and the constant elements.
/// Elements of x not named by constants appear as free variables; `pinned`
/// maps those variables to the elements they denote.
struct CanonicalSentence {
    FormulaPtr formula;
    std::map<std::string, std::string> pinned;
};
CanonicalSentence canonical_sentence(const Structure& c, const std::set<std::string>& x = {});

/// All structures over v with at most size_cap elements and tree-depth at
/// most k over the constant elements, reduced to cores and deduplicated up
/// to isomorphism. Structures admitting a homomorphism into everything (the
/// free term structure's class) separate nothing and are dropped.
std::vector<Structure> enumerate_pp_tests(const Vocabulary& v, int k, int size_cap);

/// True iff every pp test (tree-depth <= k over x, at most size_cap
/// elements) mapping into a over x also maps into b over x: the bounded
/// syntactic side of the k-homomorphism characterization.
bool preserves_pp(const Structure& a, const Structure& b, int k,
                  const std::set<std::string>& x = {}, int size_cap = 3);

/// Pool-reusing variant; the pool must come from enumerate_pp_tests over the
/// same vocabulary. Returns a separating test when the answer is false.
std::optional<Structure> pp_separating_test(const Structure& a, const Structure& b,
                                            const std::vector<Structure>& pool);

} // namespace fmw
