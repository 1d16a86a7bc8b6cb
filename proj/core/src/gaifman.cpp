#include "fmw/gaifman.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <unordered_map>

#include "fmw/error.hpp"

namespace fmw {

namespace {

Graph finish_graph(std::vector<std::string> vertices, std::vector<std::pair<int, int>> edges) {
    Graph g;
    g.vertices = std::move(vertices);
    for (auto& [i, j] : edges) {
        if (i == j) continue;
        if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [](const auto& e) { return e.first == e.second; }),
                edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    g.adjacency.assign(g.vertices.size(), {});
    for (auto [i, j] : g.edges) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
    }
    for (auto& row : g.adjacency) std::sort(row.begin(), row.end());
    return g;
}

} // namespace

Graph make_graph(std::vector<std::string> vertices,
                 std::vector<std::pair<std::string, std::string>> edges) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::vector<std::pair<int, int>> indexed;
    for (const auto& [x, y] : edges) {
        auto ix = std::lower_bound(vertices.begin(), vertices.end(), x);
        auto iy = std::lower_bound(vertices.begin(), vertices.end(), y);
        if (ix == vertices.end() || *ix != x)
            throw InputError("edge endpoint not a vertex: " + x);
        if (iy == vertices.end() || *iy != y)
            throw InputError("edge endpoint not a vertex: " + y);
        indexed.emplace_back(static_cast<int>(ix - vertices.begin()),
                             static_cast<int>(iy - vertices.begin()));
    }
    return finish_graph(std::move(vertices), std::move(indexed));
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
    std::vector<int> sorted_keep = keep;
    std::sort(sorted_keep.begin(), sorted_keep.end());
    sorted_keep.erase(std::unique(sorted_keep.begin(), sorted_keep.end()), sorted_keep.end());
    std::vector<int> new_index(g.vertices.size(), -1);
    std::vector<std::string> vertices;
    for (int v : sorted_keep) {
        if (v < 0 || v >= g.size())
            throw InputError("dangling vertex index in induced subgraph");
        new_index[v] = static_cast<int>(vertices.size());
        vertices.push_back(g.vertices[v]);
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [i, j] : g.edges)
        if (new_index[i] >= 0 && new_index[j] >= 0)
            edges.emplace_back(new_index[i], new_index[j]);
    return finish_graph(std::move(vertices), std::move(edges));
}

Graph gaifman_graph(const Structure& a) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& [name, tuples] : a.relations) {
        (void)name;
        for (const auto& t : tuples)
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] != t[j]) edges.emplace_back(t[i], t[j]);
    }
    return finish_graph(a.universe, std::move(edges));
}

namespace {

std::vector<int> bfs_distances(const Graph& g, const std::vector<int>& sources) {
    std::vector<int> dist(g.vertices.size(), infinite_distance);
    std::queue<int> queue;
    for (int s : sources) {
        if (dist[s] == infinite_distance) {
            dist[s] = 0;
            queue.push(s);
        }
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop();
        for (int w : g.adjacency[v])
            if (dist[w] == infinite_distance) {
                dist[w] = dist[v] + 1;
                queue.push(w);
            }
    }
    return dist;
}

} // namespace

int distance(const Structure& a, const std::string& from, const std::string& to) {
    return distance(a, std::vector<std::string>{from}, to);
}

int distance(const Structure& a, const std::vector<std::string>& tuple, const std::string& to) {
    Graph g = gaifman_graph(a);
    int target = a.index_of(to);
    if (target < 0)
        throw InputError("dangling element: " + to);
    auto dist = bfs_distances(g, indices_of(a, tuple));
    return dist[target];
}

std::vector<std::string> ball(const Structure& a, const std::vector<std::string>& tuple, int r) {
    Graph g = gaifman_graph(a);
    auto dist = bfs_distances(g, indices_of(a, tuple));
    std::vector<std::string> out;
    for (int i = 0; i < a.size(); ++i)
        if (dist[i] != infinite_distance && dist[i] <= r) out.push_back(a.universe[i]);
    return out;
}

Structure neighborhood(const Structure& a, const std::vector<std::string>& tuple, int r) {
    auto inside = ball(a, tuple, r);
    return expand(induced_substructure(a, indices_of(a, inside)), tuple);
}

namespace {

// Tree-depth over vertex subsets encoded as bitmasks; memoized exact search.
struct TreeDepthSolver {
    const Graph& g;
    std::vector<uint64_t> adj;
    std::unordered_map<uint64_t, int> memo;
    std::unordered_map<uint64_t, int> chosen_root;

    explicit TreeDepthSolver(const Graph& graph) : g(graph) {
        adj.assign(g.vertices.size(), 0);
        for (auto [i, j] : g.edges) {
            adj[i] |= uint64_t(1) << j;
            adj[j] |= uint64_t(1) << i;
        }
    }

    uint64_t component_of(uint64_t mask, int start) const {
        uint64_t comp = uint64_t(1) << start;
        uint64_t frontier = comp;
        while (frontier) {
            uint64_t next = 0;
            while (frontier) {
                int v = std::countr_zero(frontier);
                frontier &= frontier - 1;
                next |= adj[v] & mask & ~comp;
            }
            comp |= next;
            frontier = next;
        }
        return comp;
    }

    int solve(uint64_t mask) {
        if (mask == 0) return 0;
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;

        int result;
        uint64_t comp = component_of(mask, std::countr_zero(mask));
        if (comp != mask) {
            result = std::max(solve(comp), solve(mask & ~comp));
        } else if ((mask & (mask - 1)) == 0) {
            result = 1;
        } else {
            int best = infinite_distance;
            int best_root = -1;
            uint64_t rest = mask;
            while (rest) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                int candidate = 1 + solve(mask & ~(uint64_t(1) << v));
                if (candidate < best) {
                    best = candidate;
                    best_root = v;
                }
            }
            result = best;
            chosen_root[mask] = best_root;
        }
        memo[mask] = result;
        return result;
    }

    // Fills parents along an optimal elimination forest for `mask`.
    void decompose(uint64_t mask, int parent, std::vector<int>& parents) {
        if (mask == 0) return;
        uint64_t comp = component_of(mask, std::countr_zero(mask));
        if (comp != mask) {
            decompose(comp, parent, parents);
            decompose(mask & ~comp, parent, parents);
            return;
        }
        int root;
        if ((mask & (mask - 1)) == 0) {
            root = std::countr_zero(mask);
        } else {
            solve(mask);
            root = chosen_root.at(mask);
        }
        parents[root] = parent;
        decompose(mask & ~(uint64_t(1) << root), root, parents);
    }
};

} // namespace

int tree_depth(const Graph& g, int vertex_budget) {
    if (vertex_budget > 64) vertex_budget = 64;
    if (g.size() > vertex_budget)
        throw BudgetError("graph has " + std::to_string(g.size()) +
                          " vertices, above the exact tree-depth budget of " +
                          std::to_string(vertex_budget));
    TreeDepthSolver solver(g);
    uint64_t all = g.size() == 64 ? ~uint64_t(0) : (uint64_t(1) << g.size()) - 1;
    return solver.solve(all);
}

int tree_depth_over(const Structure& a, const std::set<std::string>& x, int vertex_budget) {
    Graph g = gaifman_graph(a);
    std::vector<int> keep;
    for (int i = 0; i < a.size(); ++i)
        if (!x.count(a.universe[i])) keep.push_back(i);
    for (const auto& id : x)
        if (a.index_of(id) < 0)
            throw InputError("dangling element in X: " + id);
    return tree_depth(induced_subgraph(g, keep), vertex_budget);
}

std::vector<int> elimination_forest(const Graph& g, int vertex_budget) {
    if (vertex_budget > 64) vertex_budget = 64;
    if (g.size() > vertex_budget)
        throw BudgetError("graph too large for elimination forest computation");
    TreeDepthSolver solver(g);
    std::vector<int> parents(g.vertices.size(), -1);
    uint64_t all = g.size() == 64 ? ~uint64_t(0) : (uint64_t(1) << g.size()) - 1;
    if (g.size() > 0) solver.decompose(all, -1, parents);
    return parents;
}

int forest_depth(const std::vector<int>& parents) {
    int best = 0;
    for (size_t v = 0; v < parents.size(); ++v) {
        int depth = 0;
        for (int u = static_cast<int>(v); u != -1; u = parents[u]) ++depth;
        best = std::max(best, depth);
    }
    return best;
}

} // namespace fmw
