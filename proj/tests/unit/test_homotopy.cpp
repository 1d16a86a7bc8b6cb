#include <doctest.h>

#include "fmw/canonical.hpp"
#include "fmw/category.hpp"
#include "fmw/enumerate.hpp"
#include "fmw/error.hpp"
#include "fmw/homotopy.hpp"

using namespace fmw;

namespace {

Morphism fold_p3_k2() {
    return make_morphism(fixture_p3(), fixture_k2(), {{"a", "x"}, {"b", "y"}, {"c", "x"}});
}

} // namespace

TEST_CASE("lifting problems must commute") {
    Structure k2 = fixture_k2();
    auto id = identity_morphism(k2);
    auto swap = make_morphism(k2, k2, {{"x", "y"}, {"y", "x"}});
    CHECK_NOTHROW(make_lifting_problem(id, id, id, id));
    CHECK_THROWS_AS(make_lifting_problem(id, id, id, swap), InputError);
}

TEST_CASE("identity boundary cases of lifting") {
    auto fold = fold_p3_k2();
    // i identity: the lift is f
    auto lp1 = make_lifting_problem(identity_morphism(fixture_p3()), fold,
                                    identity_morphism(fixture_p3()), fold);
    auto r1 = find_lift(lp1);
    REQUIRE(r1.lift.has_value());
    CHECK(r1.lift->map == identity_morphism(fixture_p3()).map);
    // p identity: the lift is g
    auto lp2 = make_lifting_problem(fold, identity_morphism(fixture_k2()), fold,
                                    identity_morphism(fixture_k2()));
    auto r2 = find_lift(lp2);
    REQUIRE(r2.lift.has_value());
    CHECK(r2.lift->map == fold.map);
}

TEST_CASE("a proven-unsolvable lifting problem") {
    // against the initial inclusion into K2, the point inclusion PT1 -> K2
    // has no lift: the lift would fold K2 onto a loopless point
    Structure k2 = fixture_k2();
    Structure empty = free_term_structure(k2.vocab);
    Morphism i{empty, k2, {}};
    Morphism point = make_morphism(fixture_pt1(), k2, {{"x", "x"}});
    Morphism f{empty, fixture_pt1(), {}};
    auto lp = make_lifting_problem(i, point, f, identity_morphism(k2));
    auto result = find_lift(lp);
    CHECK(result.complete);
    CHECK_FALSE(result.lift.has_value());
}

TEST_CASE("weak equivalences are endpoint hom-equivalences") {
    CHECK(is_weak_equivalence(fold_p3_k2()));
    CHECK(is_weak_equivalence(identity_morphism(fixture_c4())));
    Structure k2 = fixture_k2();
    auto to_top = make_morphism(k2, top(k2.vocab), {{"x", "1"}, {"y", "1"}});
    CHECK_FALSE(is_weak_equivalence(to_top));
}

TEST_CASE("acyclic fibrations are the morphisms with a section") {
    CHECK(is_acyclic_fibration(fold_p3_k2()));
    CHECK(is_acyclic_fibration(identity_morphism(fixture_k3())));
    Morphism point = make_morphism(fixture_pt1(), fixture_k2(), {{"x", "x"}});
    CHECK_FALSE(is_acyclic_fibration(point));
}

TEST_CASE("the lifting characterization agrees on the fixture morphisms") {
    auto tests = enumerate_structures(parse_vocabulary_spec("E/2"), 2);
    Morphism point = make_morphism(fixture_pt1(), fixture_k2(), {{"x", "x"}});
    CHECK(is_acyclic_fibration_rlp(fold_p3_k2(), tests) == is_acyclic_fibration(fold_p3_k2()));
    CHECK(is_acyclic_fibration_rlp(point, tests) == is_acyclic_fibration(point));
}

TEST_CASE("sections") {
    auto edge = make_morphism(fixture_k2(), fixture_p3(), {{"x", "a"}, {"y", "b"}});
    CHECK(is_section(edge));
    CHECK_FALSE(is_section(fold_p3_k2())); // not injective
    CHECK(is_section(identity_morphism(fixture_k2())));
}

TEST_CASE("any two parallel morphisms are homotopic through the cylinder") {
    Structure k2 = fixture_k2();
    auto id = identity_morphism(k2);
    auto swap = make_morphism(k2, k2, {{"x", "y"}, {"y", "x"}});
    auto witness = homotopic(id, swap);
    CHECK(witness.homotopic);
    CHECK(check_homomorphism(witness.homotopy));
    // the homotopy restricts to the two maps along the cylinder inclusions
    CHECK(compose(witness.homotopy, witness.into_left).map == id.map);
    CHECK(compose(witness.homotopy, witness.into_right).map == swap.map);
    CHECK_THROWS_AS(homotopic(id, fold_p3_k2()), InputError);
}

TEST_CASE("homotopy witness glues constants") {
    auto v = make_vocabulary({{"E", 2}}, {"c_1"});
    Structure a = make_structure(v, {"p", "q"}, {{"E", {{"p", "q"}}}}, {{"c_1", "p"}});
    auto id = identity_morphism(a);
    auto witness = homotopic(id, id);
    CHECK(witness.cylinder.size() == 3); // constants glued, the rest doubled
    CHECK(check_homomorphism(witness.homotopy));
}

TEST_CASE("weak k-equivalences") {
    for (int k = 1; k <= 3; ++k) CHECK(is_weak_k_equivalence(fold_p3_k2(), k));
    CHECK(is_weak_k_equivalence(identity_morphism(fixture_c4()), 2));
    Structure k2 = fixture_k2();
    auto to_top = make_morphism(k2, top(k2.vocab), {{"x", "1"}, {"y", "1"}});
    CHECK_FALSE(is_weak_k_equivalence(to_top, 1));
}

TEST_CASE("homotopy category collapses hom-equivalent structures") {
    Poset ho = homotopy_category(
        {{"K2", fixture_k2()}, {"P3", fixture_p3()}, {"C4", fixture_c4()}});
    CHECK(ho.classes.size() == 1);
    CHECK(is_core(ho.classes[0].representative));
    Poset empty = homotopy_category({});
    CHECK(empty.classes.empty());
}

TEST_CASE("pp-agreement verifier on equal and differing pairs") {
    Structure n1 = neighborhood(fixture_k2(), {"x"}, 1);
    auto same = theorem3_verify(n1, n1, 2);
    CHECK(same.lhs);
    CHECK(same.rhs);
    CHECK(same.agree);

    Structure n2 = neighborhood(fixture_p3(), {"b"}, 1);
    auto pair = theorem3_verify(n1, n2, 2);
    CHECK(pair.agree); // both sides computed independently must coincide

    Structure loop = expand(fixture_loop1(), {"x"});
    Structure point = expand(fixture_pt1(), {"x"});
    auto differing = theorem3_verify(loop, point, 1);
    CHECK(differing.agree);
    CHECK_FALSE(differing.lhs);
    REQUIRE(differing.separating_sentence.has_value());
    CHECK(differing.separating_sentence->find("E(") != std::string::npos);
}

TEST_CASE("initial inclusions lift against retractions") {
    // every test square with an initial inclusion on the left and a
    // retraction on the right has a solution
    auto structures = enumerate_structures(parse_vocabulary_spec("E/2"), 2);
    auto fold = fold_p3_k2();
    REQUIRE(is_acyclic_fibration(fold));
    Structure empty = free_term_structure(fold.source.vocab);
    for (const auto& d : structures) {
        Morphism inclusion{empty, d, {}};
        for (const auto& g : find_all_homomorphisms(d, fold.target)) {
            auto lp = make_lifting_problem(inclusion, fold, Morphism{empty, fold.source, {}}, g);
            CHECK(find_lift(lp).lift.has_value());
        }
    }
}
