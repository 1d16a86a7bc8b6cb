#include <doctest.h>

#include "fmw/canonical.hpp"
#include "fmw/cores.hpp"
#include "fmw/enumerate.hpp"
#include "fmw/error.hpp"

using namespace fmw;

TEST_CASE("is_core on the fixtures") {
    CHECK(is_core(fixture_k3()));
    CHECK_FALSE(is_core(fixture_p3()));
    CHECK_FALSE(is_core(fixture_c4()));
    CHECK(is_core(fixture_k2()));
    CHECK(is_core(fixture_loop1()));
}

TEST_CASE("pinning the whole universe makes everything a core") {
    for (const auto& s : {fixture_p3(), fixture_c4()}) {
        std::set<std::string> all(s.universe.begin(), s.universe.end());
        CHECK(is_core(s, all));
    }
}

TEST_CASE("cores of the fixtures") {
    CHECK(isomorphic(core(fixture_p3()), fixture_k2()));
    CHECK(isomorphic(core(fixture_c4()), fixture_k2()));
    CHECK(isomorphic(core(fixture_k3()), fixture_k3()));
}

TEST_CASE("pinning both endpoints of P3 blocks the fold") {
    Structure c = core(fixture_p3(), {"a", "c"});
    CHECK(c.size() == 3);
    CHECK(c == fixture_p3());
}

TEST_CASE("core retraction is a retraction onto the core") {
    for (const auto& s : {fixture_p3(), fixture_c4(), fixture_k3()}) {
        auto result = core_with_retraction(s);
        CHECK(check_homomorphism(result.retraction));
        for (const auto& id : result.core.universe)
            CHECK(result.retraction.apply_id(id) == id);
        for (const auto& id : s.universe)
            CHECK(result.core.index_of(result.retraction.apply_id(id)) >= 0);
        CHECK(hom_equivalent(s, result.core));
    }
}

TEST_CASE("descent handles structures with no one-element retract") {
    // loop vertex plus a separate directed edge: neither endpoint of the
    // edge can be dropped alone, yet the core is the single loop
    Structure tricky = make_structure(make_vocabulary({{"E", 2}}), {"s", "v", "w"},
                                      {{"E", {{"s", "s"}, {"v", "w"}}}});
    REQUIRE_FALSE(is_core(tricky));
    CHECK(find_retraction(tricky, {"s", "v"}).proven_absent());
    CHECK(find_retraction(tricky, {"s", "w"}).proven_absent());
    CHECK(find_retraction(tricky, {"v", "w"}).proven_absent());
    CHECK(isomorphic(core(tricky), fixture_loop1()));
}

TEST_CASE("no proper sub-core: minimality at small scale") {
    auto structures = enumerate_structures(parse_vocabulary_spec("E/2"), 3);
    for (const auto& s : structures) {
        Structure c = core(s);
        CHECK(is_core(c));
        // no proper induced substructure of the core is hom-equivalent to it
        for (int drop = 0; drop < c.size(); ++drop) {
            std::vector<int> keep;
            for (int e = 0; e < c.size(); ++e)
                if (e != drop) keep.push_back(e);
            Structure sub = induced_substructure(c, keep);
            CHECK_FALSE(hom_equivalent(c, sub));
        }
    }
}

TEST_CASE("core is invariant under enumeration order at small scale") {
    // relabeled copies have isomorphic cores
    auto structures = enumerate_structures(parse_vocabulary_spec("E/2"), 3);
    for (const auto& s : structures) {
        std::vector<std::string> renamed(s.universe.size());
        for (int e = 0; e < s.size(); ++e)
            renamed[e] = "z" + std::to_string(s.size() - 1 - e);
        std::map<std::string, std::vector<std::vector<std::string>>> rels;
        for (const auto& [name, tuples] : s.relations) {
            auto& target = rels[name];
            for (const auto& t : tuples) {
                std::vector<std::string> row;
                for (int e : t) row.push_back(renamed[e]);
                target.push_back(std::move(row));
            }
        }
        Structure copy = make_structure(s.vocab, renamed, std::move(rels), {});
        CHECK(isomorphic(core(s), core(copy)));
    }
}

TEST_CASE("quotient poset of the fixture family") {
    std::vector<std::pair<std::string, Structure>> collection{
        {"PT1", fixture_pt1()}, {"K2", fixture_k2()},   {"P3", fixture_p3()},
        {"C4", fixture_c4()},   {"K3", fixture_k3()},
    };
    Poset poset = quotient_poset(collection);
    REQUIRE(poset.classes.size() == 3);
    CHECK(poset.classes[0].members == std::vector<std::string>{"PT1"});
    CHECK(poset.classes[1].members == std::vector<std::string>{"K2", "P3", "C4"});
    CHECK(poset.classes[2].members == std::vector<std::string>{"K3"});
    // chain PT1 < K2-class < K3-class
    CHECK(poset.leq[0][1]);
    CHECK(poset.leq[1][2]);
    CHECK(poset.leq[0][2]);
    CHECK_FALSE(poset.leq[1][0]);
    CHECK_FALSE(poset.leq[2][1]);
    auto hasse = poset.hasse_edges();
    CHECK(hasse == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    // representatives are cores
    for (const auto& cls : poset.classes) CHECK(is_core(cls.representative));
}

TEST_CASE("quotient poset of a singleton") {
    Poset poset = quotient_poset({{"K2", fixture_k2()}});
    CHECK(poset.classes.size() == 1);
    CHECK(poset.leq[0][0]);
}

TEST_CASE("a structure and its core share a class") {
    Poset poset = quotient_poset({{"C4", fixture_c4()}, {"core", core(fixture_c4())}});
    CHECK(poset.classes.size() == 1);
    CHECK(poset.classes[0].members.size() == 2);
}

TEST_CASE("poset order is a partial order") {
    auto structures = enumerate_structures(parse_vocabulary_spec("E/2"), 2);
    std::vector<std::pair<std::string, Structure>> collection;
    for (size_t i = 0; i < structures.size(); ++i)
        collection.emplace_back("s" + std::to_string(i), structures[i]);
    Poset poset = quotient_poset(collection);
    const size_t m = poset.classes.size();
    for (size_t i = 0; i < m; ++i) {
        CHECK(poset.leq[i][i]);
        for (size_t j = 0; j < m; ++j) {
            if (i != j) CHECK_FALSE(poset.leq[i][j] && poset.leq[j][i]); // antisymmetry
            for (size_t k = 0; k < m; ++k)
                if (poset.leq[i][j] && poset.leq[j][k]) CHECK(poset.leq[i][k]);
        }
    }
}

TEST_CASE("canonical keys classify small structures up to isomorphism") {
    Structure c4 = fixture_c4();
    Structure relabeled = make_structure(
        c4.vocab, {"p", "q", "r", "s"},
        {{"E",
          {{"p", "q"}, {"q", "p"}, {"q", "r"}, {"r", "q"}, {"r", "s"}, {"s", "r"}, {"s", "p"}, {"p", "s"}}}});
    CHECK(canonical_key(c4) == canonical_key(relabeled));
    CHECK(canonical_key(c4) != canonical_key(fixture_p3()));
    CHECK(isomorphic(c4, relabeled));
    // over-X keys pin the fixed elements
    CHECK(isomorphic_over(fixture_k2(), fixture_k2(), {"x"}));
}
