#include "polyagg/matching.hpp"

#include <algorithm>
#include <deque>

namespace polyagg {

namespace {

bool augment(const BipartiteGraph& g, int u, std::vector<char>& visited, Matching& m) {
    for (int v : g.adjacency[u]) {
        if (visited[v]) continue;
        visited[v] = 1;
        if (m.mate_right[v] < 0 || augment(g, m.mate_right[v], visited, m)) {
            m.mate_left[u] = v;
            m.mate_right[v] = u;
            return true;
        }
    }
    return false;
}

}  // namespace

Matching maximum_matching(const BipartiteGraph& g) {
    Matching m;
    m.mate_left.assign(static_cast<std::size_t>(g.left), -1);
    m.mate_right.assign(static_cast<std::size_t>(g.right), -1);
    std::vector<char> visited;
    for (int u = 0; u < g.left; ++u) {
        visited.assign(static_cast<std::size_t>(g.right), 0);
        if (augment(g, u, visited, m)) ++m.size;
    }
    return m;
}

std::optional<HallViolator> hall_violator(const BipartiteGraph& g, const Matching& matching) {
    if (matching.size == g.left) return std::nullopt;
    std::vector<char> left_seen(static_cast<std::size_t>(g.left), 0);
    std::vector<char> right_seen(static_cast<std::size_t>(g.right), 0);
    std::deque<int> queue;
    for (int u = 0; u < g.left; ++u)
        if (matching.mate_left[u] < 0) {
            left_seen[u] = 1;
            queue.push_back(u);
        }
    // Non-matching edges go left -> right; matching edges lead back.
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : g.adjacency[u]) {
            if (right_seen[v]) continue;
            right_seen[v] = 1;
            const int w = matching.mate_right[v];
            if (w >= 0 && !left_seen[w]) {
                left_seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    HallViolator out;
    for (int u = 0; u < g.left; ++u)
        if (left_seen[u]) out.left_set.push_back(u);
    for (int v = 0; v < g.right; ++v)
        if (right_seen[v]) out.neighbourhood.push_back(v);
    return out;
}

}  // namespace polyagg
