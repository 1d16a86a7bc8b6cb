#pragma once

#include <limits>
#include <set>
#include <string>
#include <vector>

#include "fmw/structure.hpp"

namespace fmw {

/// Simple graph: undirected, no self-loops.
struct Graph {
    std::vector<std::string> vertices;            // sorted
    std::vector<std::pair<int, int>> edges;       // i < j, sorted, unique
    std::vector<std::vector<int>> adjacency;      // per vertex, sorted

    bool operator==(const Graph&) const = default;
    int size() const { return static_cast<int>(vertices.size()); }
};

Graph make_graph(std::vector<std::string> vertices,
                 std::vector<std::pair<std::string, std::string>> edges);
Graph induced_subgraph(const Graph& g, const std::vector<int>& keep);

inline constexpr int infinite_distance = std::numeric_limits<int>::max();

/// Vertices are the universe; two distinct elements are adjacent iff they
/// co-occur in some relation tuple. Constants contribute no edges.
Graph gaifman_graph(const Structure& a);

/// Shortest-path distance in the Gaifman graph; infinite_distance when
/// disconnected, 0 on the diagonal.
int distance(const Structure& a, const std::string& from, const std::string& to);
/// d(tuple, b) = min over entries; infinite for the empty tuple.
int distance(const Structure& a, const std::vector<std::string>& tuple, const std::string& to);

/// {b | d(tuple, b) <= r}, sorted.
std::vector<std::string> ball(const Structure& a, const std::vector<std::string>& tuple, int r);

/// The r-neighborhood: induced substructure on the ball, expanded with the
/// tuple as fresh constants.
Structure neighborhood(const Structure& a, const std::vector<std::string>& tuple, int r);

/// Exact tree-depth: td(empty) = 0, td of a connected graph is
/// 1 + min over vertex deletions, td of a disconnected graph is the max over
/// components. Memoized exhaustive search; graphs larger than vertex_budget
/// are rejected with a BudgetError.
int tree_depth(const Graph& g, int vertex_budget = 20);

/// td of the Gaifman graph with X deleted first.
int tree_depth_over(const Structure& a, const std::set<std::string>& x, int vertex_budget = 20);

/// An optimal elimination forest: parent index per vertex (-1 for roots),
/// with depth equal to tree_depth(g). Deterministic.
std::vector<int> elimination_forest(const Graph& g, int vertex_budget = 20);
int forest_depth(const std::vector<int>& parents);

} // namespace fmw
