#pragma once

#include <optional>
#include <vector>

namespace polyagg {

/// Bipartite graph with 0-based left and right vertices.
struct BipartiteGraph {
    int left = 0;
    int right = 0;
    std::vector<std::vector<int>> adjacency;  ///< left vertex -> right neighbours, ascending

    BipartiteGraph(int l, int r) : left(l), right(r), adjacency(static_cast<std::size_t>(l)) {}
    void add_edge(int u, int v) { adjacency[u].push_back(v); }
};

struct Matching {
    std::vector<int> mate_left;   ///< -1 when unmatched
    std::vector<int> mate_right;  ///< -1 when unmatched
    int size = 0;
};

/// Maximum matching by repeated augmenting-path search (Kuhn). Vertices and
/// neighbours are scanned in ascending order, so the result is deterministic.
Matching maximum_matching(const BipartiteGraph& g);

/// A left set X with |N(X)| < |X|.
struct HallViolator {
    std::vector<int> left_set;      ///< ascending
    std::vector<int> neighbourhood; ///< ascending
};

/// König construction: the left vertices reachable by alternating paths from
/// unmatched left vertices of a maximum matching. Empty when the matching
/// saturates the left side. Its neighbourhood consists of matched right
/// vertices whose partners lie in the set, so |N(X)| = |X| - #unmatched.
std::optional<HallViolator> hall_violator(const BipartiteGraph& g, const Matching& matching);

}  // namespace polyagg
