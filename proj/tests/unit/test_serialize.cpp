#include <doctest.h>

#include "fmw/enumerate.hpp"
#include "fmw/error.hpp"
#include "fmw/serialize.hpp"

using namespace fmw;

TEST_CASE("serialization round-trips the fixtures") {
    for (const auto& s : {fixture_k2(), fixture_k3(), fixture_p3(), fixture_c4(), fixture_loop1(),
                          fixture_pt1()}) {
        Structure back = parse_structure(serialize(s));
        CHECK(back == s);
        CHECK(serialize(back) == serialize(s)); // idempotent
    }
}

TEST_CASE("byte equality coincides with structural equality") {
    auto structures = enumerate_structures(parse_vocabulary_spec("E/2,c_1"), 2);
    for (size_t i = 0; i < structures.size(); ++i)
        for (size_t j = 0; j < structures.size(); ++j)
            CHECK((serialize(structures[i]) == serialize(structures[j])) ==
                  (structures[i] == structures[j]));
}

TEST_CASE("malformed documents are rejected with positions") {
    CHECK_THROWS_AS(parse_structure("not json"), InputError);
    CHECK_THROWS_AS(parse_structure("{}"), InputError);
    CHECK_THROWS_AS(parse_structure(R"({"vocab":{"relations":{},"constants":[]},
        "universe":["a"],"relations":{"E":[]},"constants":{}})"),
                    InputError); // unknown relation symbol
}

TEST_CASE("morphism documents round-trip") {
    auto fold = make_morphism(fixture_p3(), fixture_k2(), {{"a", "x"}, {"b", "y"}, {"c", "x"}});
    Morphism back = parse_morphism(serialize(fold));
    CHECK(back == fold);
    // a non-homomorphism document is rejected on load
    std::string text = serialize(fold);
    auto pos = text.find("\"y\"");
    text.replace(pos, 3, "\"x\"");
    CHECK_THROWS_AS(parse_morphism(text), InputError);
}
