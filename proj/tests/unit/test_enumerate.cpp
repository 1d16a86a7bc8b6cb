#include <doctest.h>

#include <set>

#include "fmw/canonical.hpp"
#include "fmw/enumerate.hpp"
#include "fmw/error.hpp"

using namespace fmw;

TEST_CASE("enumeration counts match dedup by canonical key") {
    // independent oracle: enumerate all labeled structures and deduplicate
    // with the string-based canonical key
    for (const char* spec : {"E/2", "E/2,c_1"}) {
        auto v = parse_vocabulary_spec(spec);
        for (int n = 0; n <= 3; ++n) {
            std::set<std::string> keys;
            long long labeled = 0;
            // labeled enumeration: constants then edge masks
            std::vector<std::string> names;
            for (int i = 0; i < n; ++i) names.push_back("u" + std::to_string(i));
            if (n == 0) {
                if (v.constants.empty()) {
                    keys.insert(canonical_key(make_structure(v, {}, {})));
                    ++labeled;
                }
            } else {
                int cmax = v.constants.empty() ? 1 : n;
                for (int c = 0; c < cmax; ++c) {
                    for (uint64_t mask = 0; mask < (uint64_t(1) << (n * n)); ++mask) {
                        std::vector<std::vector<std::string>> tuples;
                        for (int b = 0; b < n * n; ++b)
                            if (mask >> b & 1) tuples.push_back({names[b / n], names[b % n]});
                        std::map<std::string, std::string> consts;
                        if (!v.constants.empty()) consts["c_1"] = names[c];
                        keys.insert(canonical_key(
                            make_structure(v, names, {{"E", tuples}}, consts)));
                        ++labeled;
                    }
                }
            }
            long long expected = static_cast<long long>(keys.size());
            long long got = count_structures(v, n) - (n > 0 ? count_structures(v, n - 1) : 0);
            CHECK_MESSAGE(got == expected,
                          "vocab " << spec << " size " << n << ": " << got << " vs oracle "
                                   << expected << " (" << labeled << " labeled)");
        }
    }
}

TEST_CASE("enumerated representatives are pairwise non-isomorphic and valid") {
    auto structures = enumerate_structures(parse_vocabulary_spec("E/2,c_1"), 2);
    std::set<std::string> keys;
    for (const auto& s : structures) {
        CHECK_NOTHROW(validate(s));
        CHECK(keys.insert(canonical_key(s)).second);
    }
}

TEST_CASE("enumeration is deterministic") {
    auto first = enumerate_structures(parse_vocabulary_spec("E/2"), 3);
    auto second = enumerate_structures(parse_vocabulary_spec("E/2"), 3);
    CHECK(first == second);
}

TEST_CASE("the empty structure appears only without constants") {
    CHECK(enumerate_structures(parse_vocabulary_spec("E/2"), 0).size() == 1);
    CHECK(enumerate_structures(parse_vocabulary_spec("E/2,c_1"), 0).empty());
}

TEST_CASE("oversized enumerations are rejected") {
    CHECK_THROWS_AS(enumerate_structures(parse_vocabulary_spec("E/2"), 6), BudgetError);
    CHECK_THROWS_AS(enumerate_structures(parse_vocabulary_spec("E/2"), 4, 100), BudgetError);
}
