#include "fmw/matching.hpp"

#include <limits>
#include <queue>

namespace fmw {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
    const std::vector<std::vector<int>>& adjacency;
    int left_size;
    int right_size;
    std::vector<int> match_left, match_right, level;

    HopcroftKarp(const std::vector<std::vector<int>>& adj, int rights)
        : adjacency(adj),
          left_size(static_cast<int>(adj.size())),
          right_size(rights),
          match_left(left_size, -1),
          match_right(rights, -1),
          level(left_size, kInf) {}

    bool bfs() {
        std::queue<int> queue;
        for (int u = 0; u < left_size; ++u) {
            if (match_left[u] == -1) {
                level[u] = 0;
                queue.push(u);
            } else {
                level[u] = kInf;
            }
        }
        bool reachable = false;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop();
            for (int v : adjacency[u]) {
                int next = match_right[v];
                if (next == -1) {
                    reachable = true;
                } else if (level[next] == kInf) {
                    level[next] = level[u] + 1;
                    queue.push(next);
                }
            }
        }
        return reachable;
    }

    bool dfs(int u) {
        for (int v : adjacency[u]) {
            int next = match_right[v];
            if (next == -1 || (level[next] == level[u] + 1 && dfs(next))) {
                match_left[u] = v;
                match_right[v] = u;
                return true;
            }
        }
        level[u] = kInf;
        return false;
    }

    std::vector<int> run() {
        while (bfs())
            for (int u = 0; u < left_size; ++u)
                if (match_left[u] == -1) dfs(u);
        return match_left;
    }
};

} // namespace

std::vector<int> maximum_bipartite_matching(const std::vector<std::vector<int>>& adjacency,
                                            int right_size) {
    return HopcroftKarp(adjacency, right_size).run();
}

} // namespace fmw
