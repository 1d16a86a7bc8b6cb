#include <doctest.h>

#include <algorithm>
#include <set>

#include "fmw/error.hpp"
#include "fmw/gaifman.hpp"

using namespace fmw;

namespace {

// Brute-force tree-depth: the plain recursion with no memoization and no
// pruning, over adjacency sets. Independent oracle for the solver.
int brute_td(const std::set<int>& vertices, const std::vector<std::pair<int, int>>& edges) {
    if (vertices.empty()) return 0;
    // split into components
    std::set<int> component;
    std::vector<int> stack{*vertices.begin()};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (!component.insert(v).second) continue;
        for (auto [i, j] : edges) {
            if (i == v && vertices.count(j)) stack.push_back(j);
            if (j == v && vertices.count(i)) stack.push_back(i);
        }
    }
    if (component != vertices) {
        std::set<int> rest;
        for (int v : vertices)
            if (!component.count(v)) rest.insert(v);
        return std::max(brute_td(component, edges), brute_td(rest, edges));
    }
    int best = static_cast<int>(vertices.size());
    for (int v : vertices) {
        std::set<int> smaller = vertices;
        smaller.erase(v);
        best = std::min(best, 1 + brute_td(smaller, edges));
    }
    return best;
}

int brute_td(const Graph& g) {
    std::set<int> vertices;
    for (int v = 0; v < g.size(); ++v) vertices.insert(v);
    return brute_td(vertices, g.edges);
}

} // namespace

TEST_CASE("gaifman graph basics") {
    CHECK(gaifman_graph(fixture_k3()).edges.size() == 3);
    CHECK(gaifman_graph(fixture_loop1()).edges.empty()); // no self-loops
    // a ternary tuple makes its entries pairwise adjacent
    auto v = make_vocabulary({{"R", 3}});
    Structure s = make_structure(v, {"a", "b", "c"}, {{"R", {{"a", "b", "c"}}}});
    CHECK(gaifman_graph(s).edges.size() == 3);
}

TEST_CASE("distances") {
    CHECK(distance(fixture_p3(), "a", "c") == 2);
    CHECK(distance(fixture_p3(), "a", "a") == 0);
    auto two_k2 = make_structure(make_vocabulary({{"E", 2}}), {"a", "b", "c", "d"},
                                 {{"E", {{"a", "b"}, {"b", "a"}, {"c", "d"}, {"d", "c"}}}});
    CHECK(distance(two_k2, "a", "c") == infinite_distance);
    // tuple distance is the minimum over entries
    CHECK(distance(fixture_p3(), {"a", "c"}, "b") == 1);
    CHECK_THROWS_AS(distance(fixture_p3(), "a", "zz"), InputError);
}

TEST_CASE("balls") {
    CHECK(ball(fixture_p3(), {"a"}, 1) == std::vector<std::string>{"a", "b"});
    CHECK(ball(fixture_p3(), {"a"}, 0) == std::vector<std::string>{"a"});
    CHECK(ball(fixture_k3(), {"x"}, 1).size() == 3);
}

TEST_CASE("balls grow monotonically with the radius") {
    for (const auto& s : {fixture_p3(), fixture_c4(), fixture_k3()})
        for (const auto& start : s.universe)
            for (int r = 0; r < 4; ++r) {
                auto smaller = ball(s, {start}, r);
                auto larger = ball(s, {start}, r + 1);
                CHECK(std::includes(larger.begin(), larger.end(), smaller.begin(),
                                    smaller.end()));
            }
}

TEST_CASE("neighborhoods restrict and pin") {
    Structure n = neighborhood(fixture_p3(), {"a"}, 1);
    CHECK(n.universe == std::vector<std::string>{"a", "b"});
    CHECK(n.relations.at("E").size() == 2);
    CHECK(n.universe[n.constants.at("c_1")] == "a");
    CHECK_NOTHROW(validate(n));
    // radius 0 keeps only the tuple entries
    Structure n0 = neighborhood(fixture_p3(), {"b"}, 0);
    CHECK(n0.size() == 1);
    CHECK(n0.relations.at("E").empty());
}

TEST_CASE("neighborhood isomorphisms must match the pinned tuples") {
    Structure n1 = neighborhood(fixture_c4(), {"a"}, 1);
    Structure n2 = neighborhood(fixture_c4(), {"c"}, 1);
    // both are paths of three with the centre pinned; c_1 -> c_1 is forced
    CHECK(n1.universe[n1.constants.at("c_1")] == "a");
    CHECK(n2.universe[n2.constants.at("c_1")] == "c");
}

TEST_CASE("tree-depth of the named examples") {
    Graph single = make_graph({"v"}, {});
    CHECK(tree_depth(single) == 1);
    CHECK(tree_depth(gaifman_graph(fixture_p3())) == 2);
    CHECK(tree_depth(gaifman_graph(fixture_k3())) == 3);
}

TEST_CASE("tree-depth over a deleted set") {
    CHECK(tree_depth_over(fixture_k3(), {"x"}) == 2);
    CHECK(tree_depth_over(fixture_k3(), {"x", "y", "z"}) == 0);
    CHECK(tree_depth_over(fixture_c4(), {}) == tree_depth(gaifman_graph(fixture_c4())));
}

TEST_CASE("tree-depth agrees with the unpruned recursion on all small graphs") {
    // all labeled simple graphs on up to 5 vertices
    for (int n = 0; n <= 5; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
        for (uint64_t mask = 0; mask < (uint64_t(1) << slots.size()); ++mask) {
            std::vector<std::pair<std::string, std::string>> edges;
            for (size_t b = 0; b < slots.size(); ++b)
                if (mask >> b & 1)
                    edges.emplace_back(names[slots[b].first], names[slots[b].second]);
            Graph g = make_graph(names, edges);
            CHECK(tree_depth(g) == brute_td(g));
        }
    }
}

TEST_CASE("tree-depth of a disjoint union is the maximum over components") {
    Graph g = make_graph({"a", "b", "c", "p", "q"},
                         {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"p", "q"}});
    CHECK(tree_depth(g) == 3);
}

TEST_CASE("tree-depth is monotone under induced subgraphs") {
    Graph g = gaifman_graph(fixture_c4());
    for (int v = 0; v < g.size(); ++v) {
        std::vector<int> keep;
        for (int u = 0; u < g.size(); ++u)
            if (u != v) keep.push_back(u);
        CHECK(tree_depth(induced_subgraph(g, keep)) <= tree_depth(g));
    }
}

TEST_CASE("oversized graphs are rejected, not approximated") {
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < 25; ++i) names.push_back("v" + std::to_string(i));
    CHECK_THROWS_AS(tree_depth(make_graph(names, edges)), BudgetError);
}

TEST_CASE("elimination forest depth equals tree-depth") {
    for (const auto& s : {fixture_p3(), fixture_c4(), fixture_k3()}) {
        Graph g = gaifman_graph(s);
        auto parents = elimination_forest(g);
        CHECK(forest_depth(parents) == tree_depth(g));
    }
}
