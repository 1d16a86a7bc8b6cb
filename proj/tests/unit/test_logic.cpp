#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "fmw/canonical.hpp"
#include "fmw/enumerate.hpp"
#include "fmw/error.hpp"
#include "fmw/gaifman.hpp"
#include "fmw/homsearch.hpp"
#include "fmw/logic.hpp"

using namespace fmw;

namespace {

Vocabulary graph_vocab() { return make_vocabulary({{"E", 2}}); }

// Independent bottom-up evaluator: computes the set of satisfying
// assignments of every subformula by relational operations. No environment
// recursion, so it cross-checks the Tarskian evaluator.
using Assignment = std::map<std::string, int>;
using Table = std::set<Assignment>;

Table all_assignments(const std::set<std::string>& vars, int n) {
    Table out{Assignment{}};
    for (const auto& var : vars) {
        Table next;
        for (const auto& row : out)
            for (int e = 0; e < n; ++e) {
                Assignment extended = row;
                extended[var] = e;
                next.insert(std::move(extended));
            }
        out = std::move(next);
    }
    return out;
}

Table table_eval(const Structure& s, const FormulaPtr& f) {
    auto frees = free_variables(f);
    switch (f->kind) {
    case Formula::Kind::truth:
        return all_assignments(frees, s.size());
    case Formula::Kind::atom: {
        Table out;
        for (const auto& row : all_assignments(frees, s.size())) {
            std::vector<int> tuple;
            for (const auto& t : f->terms)
                tuple.push_back(t.kind == Term::Kind::constant ? s.constants.at(t.name)
                                                               : row.at(t.name));
            if (s.has_tuple(f->relation, tuple)) out.insert(row);
        }
        return out;
    }
    case Formula::Kind::equality: {
        Table out;
        for (const auto& row : all_assignments(frees, s.size())) {
            auto value = [&](const Term& t) {
                return t.kind == Term::Kind::constant ? s.constants.at(t.name) : row.at(t.name);
            };
            if (value(f->terms[0]) == value(f->terms[1])) out.insert(row);
        }
        return out;
    }
    case Formula::Kind::negation: {
        Table inner = table_eval(s, f->children[0]);
        Table out;
        for (const auto& row : all_assignments(frees, s.size()))
            if (!inner.count(row)) out.insert(row);
        return out;
    }
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
        const bool conj = f->kind == Formula::Kind::conjunction;
        std::vector<Table> tables;
        for (const auto& child : f->children) tables.push_back(table_eval(s, child));
        Table out;
        for (const auto& row : all_assignments(frees, s.size())) {
            bool value = conj;
            for (size_t c = 0; c < tables.size(); ++c) {
                // restrict the row to the child's free variables
                Assignment restricted;
                for (const auto& var : free_variables(f->children[c]))
                    restricted[var] = row.at(var);
                bool holds = tables[c].count(restricted) > 0;
                value = conj ? (value && holds) : (value || holds);
            }
            if (value) out.insert(row);
        }
        return out;
    }
    case Formula::Kind::implication: {
        Table lhs = table_eval(s, f->children[0]);
        Table rhs = table_eval(s, f->children[1]);
        Table out;
        for (const auto& row : all_assignments(frees, s.size())) {
            Assignment l, r;
            for (const auto& var : free_variables(f->children[0])) l[var] = row.at(var);
            for (const auto& var : free_variables(f->children[1])) r[var] = row.at(var);
            if (!lhs.count(l) || rhs.count(r)) out.insert(row);
        }
        return out;
    }
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
        Table inner = table_eval(s, f->children[0]);
        const bool universal = f->kind == Formula::Kind::forall;
        Table out;
        for (const auto& row : all_assignments(frees, s.size())) {
            bool value = universal;
            for (int e = 0; e < s.size(); ++e) {
                Assignment extended = row;
                extended[f->variable] = e;
                Assignment restricted;
                for (const auto& var : free_variables(f->children[0]))
                    restricted[var] = extended.at(var);
                bool holds = inner.count(restricted) > 0;
                value = universal ? (value && holds) : (value || holds);
                if (value != universal) break;
            }
            if (value) out.insert(row);
        }
        return out;
    }
    }
    return {};
}

bool table_true(const Structure& s, const FormulaPtr& sentence) {
    return !table_eval(s, sentence).empty();
}

} // namespace

TEST_CASE("parser accepts the grammar") {
    auto v = graph_vocab();
    auto f = parse_formula("exists x. E(x,x)", v);
    CHECK(f->kind == Formula::Kind::exists);
    CHECK(quantifier_rank(f) == 1);
    auto g = parse_formula("exists x. exists y. E(x,y) & E(y,x)", v);
    CHECK(quantifier_rank(g) == 2);
    CHECK(classify(g) == FormulaClass::primitive_positive);
    CHECK_NOTHROW(parse_formula("forall x. E(x,x) -> exists y. E(x,y)", v));
    CHECK_NOTHROW(parse_formula("true", v));
}

TEST_CASE("parser reports positions") {
    auto v = graph_vocab();
    CHECK_THROWS_WITH_AS(parse_formula("E(x", v), doctest::Contains("offset 3"), InputError);
    CHECK_THROWS_WITH_AS(parse_formula("F(x,y)", v), doctest::Contains("unknown relation"),
                         InputError);
    CHECK_THROWS_WITH_AS(parse_formula("E(x,y,z)", v), doctest::Contains("arity"), InputError);
    CHECK_THROWS_WITH_AS(parse_formula("exists x. exists x. E(x,x)", v),
                         doctest::Contains("shadows"), InputError);
    auto sigma1 = make_vocabulary({{"E", 2}}, {"c_1"});
    CHECK_THROWS_AS(parse_formula("exists c_1. E(c_1,c_1)", sigma1), InputError);
}

TEST_CASE("formatting round-trips through the parser") {
    auto v = graph_vocab();
    for (const char* text :
         {"exists x. E(x,x)", "exists x. exists y. E(x,y) & E(y,x)",
          "(exists x. E(x,x)) | (exists y. !E(y,y))", "forall x. E(x,x) -> x = x", "true"}) {
        auto f = parse_formula(text, v);
        auto again = parse_formula(format_formula(f), v);
        CHECK(format_formula(again) == format_formula(f));
    }
}

TEST_CASE("evaluation on the fixtures") {
    auto v = graph_vocab();
    CHECK(evaluate(fixture_loop1(), parse_formula("exists x. E(x,x)", v)));
    CHECK_FALSE(evaluate(fixture_k2(), parse_formula("exists x. E(x,x)", v)));
    auto distinct_nonadjacent = parse_formula("exists x. exists y. !(x=y) & !E(x,y)", v);
    CHECK(evaluate(fixture_p3(), distinct_nonadjacent));
    CHECK_FALSE(evaluate(fixture_k2(), distinct_nonadjacent));
}

TEST_CASE("free variables need an assignment") {
    auto v = graph_vocab();
    auto f = parse_formula("E(x,y)", v);
    CHECK_THROWS_AS(evaluate(fixture_k2(), f), InputError);
    CHECK(evaluate(fixture_k2(), f, {{"x", "x"}, {"y", "y"}}));
    CHECK_FALSE(evaluate(fixture_k2(), f, {{"x", "x"}, {"y", "x"}}));
}

TEST_CASE("quantifier rank") {
    auto v = graph_vocab();
    CHECK(quantifier_rank(parse_formula("E(x,y)", v)) == 0);
    CHECK(quantifier_rank(parse_formula("exists x. exists y. E(x,y)", v)) == 2);
    CHECK(quantifier_rank(parse_formula("(exists x. E(x,x)) & (exists y. E(y,y))", v)) == 1);
}

TEST_CASE("classification") {
    auto v = graph_vocab();
    CHECK(classify(parse_formula("exists x. E(x,x)", v)) == FormulaClass::primitive_positive);
    CHECK(classify(parse_formula("exists x. E(x,x) | E(x,x)", v)) ==
          FormulaClass::existential_positive);
    CHECK(classify(parse_formula("forall x. E(x,x)", v)) == FormulaClass::general);
    CHECK(classify(parse_formula("exists x. !E(x,x)", v)) == FormulaClass::general);
    CHECK(classify(parse_formula("exists x. x = x", v)) == FormulaClass::primitive_positive);
}

TEST_CASE("canonical structures of pp sentences") {
    auto v = graph_vocab();
    CHECK(isomorphic(canonical_structure(parse_formula("exists x. E(x,x)", v), v),
                     fixture_loop1()));
    Structure two = canonical_structure(
        parse_formula("exists x. exists y. E(x,y) & E(y,x)", v), v);
    CHECK(isomorphic(two, fixture_k2()));
    CHECK(isomorphic(canonical_structure(parse_formula("exists x. exists y. x=y & E(x,y)", v), v),
                     fixture_loop1()));
    CHECK_THROWS_AS(canonical_structure(parse_formula("forall x. E(x,x)", v), v), InputError);
    CHECK_THROWS_AS(canonical_structure(parse_formula("E(x,x)", v), v), InputError);
}

TEST_CASE("canonical structure interprets all constants") {
    auto sigma1 = make_vocabulary({{"E", 2}}, {"c_1"});
    Structure c = canonical_structure(parse_formula("exists x. E(x,x)", sigma1), sigma1);
    CHECK(c.size() == 2); // the loop class plus the untouched constant
    CHECK(c.constants.count("c_1") == 1);
    Structure ground = canonical_structure(parse_formula("E(c_1,c_1)", sigma1), sigma1);
    CHECK(ground.size() == 1);
    CHECK(ground.relations.at("E").size() == 1);
}

TEST_CASE("canonical sentences of the fixtures") {
    auto loop = canonical_sentence(fixture_loop1());
    CHECK(format_formula(loop.formula) == "exists x. E(x,x)");
    CHECK(quantifier_rank(loop.formula) == 1);

    auto k2 = canonical_sentence(fixture_k2());
    CHECK(quantifier_rank(k2.formula) == 2);

    auto p3 = canonical_sentence(fixture_p3());
    CHECK(quantifier_rank(p3.formula) == 2); // elimination forest rooted at b
    CHECK(format_formula(p3.formula) ==
          "exists b. (exists a. E(a,b) & E(b,a)) & (exists c. E(b,c) & E(c,b))");
}

TEST_CASE("canonical sentence round-trip at small scale") {
    auto structures = enumerate_structures(parse_vocabulary_spec("E/2"), 3);
    for (const auto& c : structures) {
        auto sentence = canonical_sentence(c);
        REQUIRE(sentence.pinned.empty());
        for (const auto& b : structures)
            CHECK(evaluate(b, sentence.formula) == find_homomorphism(c, b).found());
    }
}

TEST_CASE("canonical sentence over X uses pinned variables") {
    auto sentence = canonical_sentence(fixture_p3(), {"a"});
    REQUIRE(sentence.pinned.size() == 1);
    CHECK(quantifier_rank(sentence.formula) == tree_depth_over(fixture_p3(), {"a"}));
    // satisfaction under the pinning assignment matches hom-over-X
    std::map<std::string, std::string> assign;
    for (const auto& [var, element] : sentence.pinned) assign[var] = element;
    CHECK(evaluate(fixture_p3(), sentence.formula, assign));
    // C4 has no element named a, but a relabeled host exercises the pin
    Structure host = make_structure(fixture_p3().vocab, {"a", "q"},
                                    {{"E", {{"a", "q"}, {"q", "a"}}}});
    CHECK(evaluate(host, sentence.formula, {{"a", "a"}}) ==
          find_homomorphism(fixture_p3(), host, {{"a", "a"}}).found());
}

TEST_CASE("quantifier rank equals tree-depth over the pinned set") {
    auto structures = enumerate_structures(parse_vocabulary_spec("E/2"), 3);
    for (const auto& c : structures) {
        auto sentence = canonical_sentence(c);
        CHECK(quantifier_rank(sentence.formula) == tree_depth_over(c, {}));
    }
    auto sigma1 = enumerate_structures(parse_vocabulary_spec("E/2,c_1"), 3);
    for (const auto& c : sigma1) {
        auto sentence = canonical_sentence(c);
        CHECK(quantifier_rank(sentence.formula) == tree_depth_over(c, constant_elements(c)));
    }
}

TEST_CASE("pp test family at k=1, cap 2") {
    auto family = enumerate_pp_tests(parse_vocabulary_spec("E/2"), 1, 2);
    REQUIRE(family.size() == 2);
    bool has_point = false, has_loop = false;
    for (const auto& t : family) {
        CHECK(is_core(t));
        if (isomorphic(t, fixture_pt1())) has_point = true;
        if (isomorphic(t, fixture_loop1())) has_loop = true;
    }
    CHECK(has_point);
    CHECK(has_loop);
}

TEST_CASE("pp test family is monotone in k and cap") {
    auto v = parse_vocabulary_spec("E/2");
    CHECK(enumerate_pp_tests(v, 1, 2).size() <= enumerate_pp_tests(v, 1, 3).size());
    CHECK(enumerate_pp_tests(v, 1, 3).size() <= enumerate_pp_tests(v, 2, 3).size());
    // td 0 means no quantified elements; every such test maps everywhere and
    // is dropped as trivial
    CHECK(enumerate_pp_tests(v, 0, 2).empty());
}

TEST_CASE("preserves_pp on the fixtures") {
    CHECK(preserves_pp(fixture_k2(), fixture_pt1(), 1));
    CHECK_FALSE(preserves_pp(fixture_loop1(), fixture_k2(), 1));
    CHECK(preserves_pp(fixture_c4(), fixture_c4(), 2));
    CHECK(preserves_pp(fixture_p3(), fixture_k2(), 2));
}

TEST_CASE("preserves_pp over X reduces to the expansion") {
    // pinning separates elements that are interchangeable without pins
    Structure p3 = fixture_p3();
    CHECK(preserves_pp(p3, p3, 1, {"b"}));
    CHECK(preserves_pp(fixture_k2(), fixture_k2(), 1, {"x"}));
}

TEST_CASE("Chandra-Merlin round-trip on a pp corpus") {
    auto v = graph_vocab();
    std::vector<std::string> corpus{
        "exists x. E(x,x)",
        "exists x. exists y. E(x,y)",
        "exists x. exists y. E(x,y) & E(y,x)",
        "exists x. exists y. x = y & E(x,y)",
        "exists x. exists y. exists z. E(x,y) & E(y,z)",
        "exists x. true",
        "true",
        "exists x. (exists y. E(x,y)) & (exists z. E(z,x))",
    };
    // plus the canonical sentences of the qr<=2 test family
    for (const auto& t : enumerate_pp_tests(v, 2, 3))
        corpus.push_back(format_formula(canonical_sentence(t).formula));

    auto structures = enumerate_structures(parse_vocabulary_spec("E/2"), 3);
    for (const auto& text : corpus) {
        auto theta = parse_formula(text, v);
        REQUIRE(classify(theta) == FormulaClass::primitive_positive);
        Structure c = canonical_structure(theta, v);
        for (const auto& b : structures)
            CHECK_MESSAGE(evaluate(b, theta) == find_homomorphism(c, b).found(),
                          "sentence " << text);
    }
}

TEST_CASE("evaluator agrees with the bottom-up table oracle on random formulas") {
    auto v = graph_vocab();
    std::mt19937 rng(20240817);
    auto structures = enumerate_structures(parse_vocabulary_spec("E/2"), 3);
    std::uniform_int_distribution<size_t> pick_structure(0, structures.size() - 1);

    const std::vector<std::string> vars{"x", "y", "z"};
    std::function<FormulaPtr(int, std::set<std::string>&)> gen =
        [&](int depth, std::set<std::string>& bound) -> FormulaPtr {
        std::uniform_int_distribution<int> shape(0, depth <= 0 ? 2 : 8);
        auto term = [&]() {
            std::uniform_int_distribution<size_t> pick(0, vars.size() - 1);
            return Term{Term::Kind::variable, vars[pick(rng)]};
        };
        switch (shape(rng)) {
        case 0: return make_atom("E", {term(), term()});
        case 1: return make_equality(term(), term());
        case 2: return make_truth();
        case 3: return make_negation(gen(depth - 1, bound));
        case 4: return make_conjunction({gen(depth - 1, bound), gen(depth - 1, bound)});
        case 5: return make_disjunction({gen(depth - 1, bound), gen(depth - 1, bound)});
        case 6: return make_implication(gen(depth - 1, bound), gen(depth - 1, bound));
        default: {
            std::string var;
            for (const auto& candidate : vars)
                if (!bound.count(candidate)) {
                    var = candidate;
                    break;
                }
            if (var.empty()) return make_atom("E", {term(), term()});
            bound.insert(var);
            auto body = gen(depth - 1, bound);
            bound.erase(var);
            std::uniform_int_distribution<int> coin(0, 1);
            return coin(rng) ? make_exists(var, body) : make_forall(var, body);
        }
        }
    };

    for (int trial = 0; trial < 300; ++trial) {
        std::set<std::string> bound;
        auto formula = gen(3, bound);
        const Structure& s = structures[pick_structure(rng)];
        auto frees = free_variables(formula);
        if (s.size() == 0 && !frees.empty()) continue;
        std::map<std::string, std::string> assignment;
        Assignment row;
        for (const auto& var : frees) {
            std::uniform_int_distribution<int> pick(0, s.size() - 1);
            int e = pick(rng);
            assignment[var] = s.universe[e];
            row[var] = e;
        }
        bool direct = evaluate(s, formula, assignment);
        bool table = table_eval(s, formula).count(row) > 0;
        CHECK_MESSAGE(direct == table, "formula " << format_formula(formula));
    }
    // sentences against the emptiness convention of the oracle
    CHECK(table_true(fixture_loop1(), parse_formula("exists x. E(x,x)", v)));
    CHECK_FALSE(table_true(fixture_k2(), parse_formula("exists x. E(x,x)", v)));
}
