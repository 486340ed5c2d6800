#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treemat/errors.hpp"

namespace treemat {

/*
 * Rooted tree with monotone ("forward") numbering.
 *
 * Nodes are 0..N where node 0 is the datum (the root, excluded from all
 * matrix indexing) and nodes 1..N each have exactly one parent with a
 * strictly smaller index. Movement toward larger indices is called forward;
 * node i is forward-adjacent to k when it is k's parent, and forward-
 * connected to j when it lies on j's path from the datum. The unique
 * strictly increasing node sequence between two forward-connected nodes is
 * their route.
 */

// Pre-validation input form: an undirected edge list over non-negative
// integer labels plus the designated datum label.
struct RawGraph {
    std::vector<std::pair<int, int>> edges;
    int datum = 0;

    bool operator==(const RawGraph& o) const { return edges == o.edges && datum == o.datum; }
    bool operator!=(const RawGraph& o) const { return !(*this == o); }
};

// The unique forward route between two nodes, terminals inclusive.
struct Route {
    int from = 0;
    int to = 0;
    std::vector<int> nodes;
};

// Result of a numbering validation: every edge whose parent index is not
// smaller than its child index, as (parent, child) pairs ordered by child.
struct ValidationReport {
    bool pass = true;
    std::vector<std::pair<int, int>> violations;
};

class Tree {
public:
    // Builds directly from parent links: parent[k] for k = 1..N is given by
    // parents[k-1]. Checks range and acyclicity but not monotonicity, so a
    // deliberately mis-numbered tree can be constructed and then inspected
    // with validate_indexing.
    static Tree from_parents(const std::vector<int>& parents) {
        const int n = static_cast<int>(parents.size());
        if (n < 1) {
            throw PreconditionViolated("a tree needs at least one non-datum node");
        }
        Tree t;
        t.n_ = n;
        t.parent_.assign(static_cast<std::size_t>(n) + 1, -1);
        for (int k = 1; k <= n; ++k) {
            const int p = parents[static_cast<std::size_t>(k) - 1];
            if (p < 0 || p > n) {
                throw IndexOutOfRange("parent of node " + std::to_string(k));
            }
            if (p == k) {
                throw SelfLoop(k);
            }
            t.parent_[static_cast<std::size_t>(k)] = p;
        }

        // Depth doubles as the cycle check: a parent chain over 0..N either
        // reaches the datum or revisits a node.
        t.depth_.assign(static_cast<std::size_t>(n) + 1, -1);
        t.depth_[0] = 0;
        std::vector<int> chain;
        for (int k = 1; k <= n; ++k) {
            int cur = k;
            chain.clear();
            while (t.depth_[static_cast<std::size_t>(cur)] < 0) {
                chain.push_back(cur);
                t.depth_[static_cast<std::size_t>(cur)] = -2;
                cur = t.parent_[static_cast<std::size_t>(cur)];
                if (cur > 0 && t.depth_[static_cast<std::size_t>(cur)] == -2) {
                    throw CycleDetected();
                }
            }
            int d = t.depth_[static_cast<std::size_t>(cur)];
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                t.depth_[static_cast<std::size_t>(*it)] = ++d;
            }
        }

        t.children_.assign(static_cast<std::size_t>(n) + 1, {});
        for (int k = 1; k <= n; ++k) {
            t.children_[static_cast<std::size_t>(t.parent_[static_cast<std::size_t>(k)])]
                .push_back(k);
        }
        for (auto& c : t.children_) {
            std::sort(c.begin(), c.end());
        }
        return t;
    }

    int node_count() const { return n_; }

    int parent(int k) const {
        if (k < 1 || k > n_) {
            throw IndexOutOfRange("parent of node " + std::to_string(k));
        }
        return parent_[static_cast<std::size_t>(k)];
    }

    const std::vector<int>& children(int i) const {
        check_node(i);
        return children_[static_cast<std::size_t>(i)];
    }

    // Edge distance from the datum; depth(0) is 0.
    int depth(int k) const {
        check_node(k);
        return depth_[static_cast<std::size_t>(k)];
    }

private:
    void check_node(int k) const {
        if (k < 0 || k > n_) {
            throw IndexOutOfRange("node " + std::to_string(k));
        }
    }

    int n_ = 0;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> depth_;
};

namespace detail {

// Undirected adjacency over labels appearing in the edge list, with the
// shared structural checks: no self-loops, no duplicate edges, at least one
// edge. Neighbor lists come out sorted ascending.
inline std::map<int, std::vector<int>> adjacency(const RawGraph& raw) {
    if (raw.edges.empty()) {
        throw PreconditionViolated("graph has no edges");
    }
    std::set<std::pair<int, int>> seen;
    std::map<int, std::vector<int>> adj;
    for (const auto& [u, v] : raw.edges) {
        if (u < 0 || v < 0) {
            throw PreconditionViolated("node labels must be non-negative");
        }
        if (u == v) {
            throw SelfLoop(u);
        }
        const auto key = std::minmax(u, v);
        if (!seen.insert(key).second) {
            throw DuplicateEdge(key.first, key.second);
        }
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& [label, neighbors] : adj) {
        (void)label;
        std::sort(neighbors.begin(), neighbors.end());
    }
    return adj;
}

}  // namespace detail

// Validates the raw graph as a forward-numbered tree and builds it. The
// labels themselves are the node indices: they must cover 0..max contiguously
// (a gap is an isolated node in index space), the datum must reach every
// node, the edge count must rule out cycles, and every edge oriented away
// from the datum must point from a smaller to a larger index.
inline Tree build_tree(const RawGraph& raw) {
    const auto adj = detail::adjacency(raw);

    const int max_label = adj.rbegin()->first;
    for (int k = 0; k <= max_label; ++k) {
        if (adj.find(k) == adj.end()) {
            throw IsolatedNode(k);
        }
    }
    if (raw.datum < 0 || raw.datum > max_label) {
        throw IsolatedNode(raw.datum);
    }

    const int node_count = max_label + 1;
    std::vector<int> parent(static_cast<std::size_t>(node_count), -1);
    std::vector<bool> reached(static_cast<std::size_t>(node_count), false);
    std::queue<int> frontier;
    reached[static_cast<std::size_t>(raw.datum)] = true;
    frontier.push(raw.datum);
    int reached_count = 1;
    while (!frontier.empty()) {
        const int cur = frontier.front();
        frontier.pop();
        for (const int next : adj.at(cur)) {
            if (!reached[static_cast<std::size_t>(next)]) {
                reached[static_cast<std::size_t>(next)] = true;
                parent[static_cast<std::size_t>(next)] = cur;
                ++reached_count;
                frontier.push(next);
            }
        }
    }
    if (reached_count < node_count) {
        throw Disconnected();
    }
    if (static_cast<int>(raw.edges.size()) != node_count - 1) {
        throw CycleDetected();
    }

    // Orientation away from the datum is now total; monotonicity remains.
    // The datum itself must carry index 0, which the same scan enforces: if
    // it does not, node 0 has some larger parent and shows up here.
    std::vector<std::pair<int, int>> violations;
    for (int k = 0; k < node_count; ++k) {
        if (k == raw.datum) {
            continue;
        }
        if (parent[static_cast<std::size_t>(k)] >= k) {
            violations.emplace_back(parent[static_cast<std::size_t>(k)], k);
        }
    }
    if (!violations.empty()) {
        throw NonMonotoneNumbering(violations);
    }

    std::vector<int> parents(static_cast<std::size_t>(node_count) - 1);
    for (int k = 1; k < node_count; ++k) {
        parents[static_cast<std::size_t>(k) - 1] = parent[static_cast<std::size_t>(k)];
    }
    return Tree::from_parents(parents);
}

enum class IndexingStrategy { dfs_preorder, bfs_level };

// Produces a relabeling old -> new over an arbitrarily labeled connected
// acyclic graph such that the datum maps to 0 and every path walked away
// from it gets strictly increasing labels. Neighbors are visited in
// ascending original-label order, which makes the result deterministic.
inline std::map<int, int> assign_forward_indexing(
    const RawGraph& raw, IndexingStrategy strategy = IndexingStrategy::dfs_preorder) {
    const auto adj = detail::adjacency(raw);
    if (adj.find(raw.datum) == adj.end()) {
        throw Disconnected();
    }

    std::map<int, int> relabel;
    int next_index = 0;
    if (strategy == IndexingStrategy::dfs_preorder) {
        std::vector<int> stack{raw.datum};
        relabel[raw.datum] = next_index++;
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            if (relabel.find(cur) == relabel.end()) {
                relabel[cur] = next_index++;
            }
            const auto& neighbors = adj.at(cur);
            for (auto it = neighbors.rbegin(); it != neighbors.rend(); ++it) {
                if (relabel.find(*it) == relabel.end()) {
                    stack.push_back(*it);
                }
            }
        }
    } else {
        std::queue<int> frontier;
        relabel[raw.datum] = next_index++;
        frontier.push(raw.datum);
        while (!frontier.empty()) {
            const int cur = frontier.front();
            frontier.pop();
            for (const int next : adj.at(cur)) {
                if (relabel.find(next) == relabel.end()) {
                    relabel[next] = next_index++;
                    frontier.push(next);
                }
            }
        }
    }

    if (relabel.size() != adj.size()) {
        throw Disconnected();
    }
    if (raw.edges.size() != adj.size() - 1) {
        throw CycleDetected();
    }
    return relabel;
}

inline ValidationReport validate_indexing(const Tree& tree) {
    ValidationReport report;
    for (int k = 1; k <= tree.node_count(); ++k) {
        if (tree.parent(k) >= k) {
            report.violations.emplace_back(tree.parent(k), k);
        }
    }
    report.pass = report.violations.empty();
    return report;
}

inline bool forward_adjacent(const Tree& tree, int i, int k) {
    if (i < 0 || i > tree.node_count()) {
        throw IndexOutOfRange("node " + std::to_string(i));
    }
    if (k < 0 || k > tree.node_count()) {
        throw IndexOutOfRange("node " + std::to_string(k));
    }
    if (k == 0) {
        return false;
    }
    return tree.parent(k) == i;
}

// The unique strictly increasing route from i to j, or absent when i does
// not lie on j's path from the datum. route(i, i) is the single-node route.
inline std::optional<Route> route(const Tree& tree, int i, int j) {
    if (i < 0 || i > tree.node_count()) {
        throw IndexOutOfRange("node " + std::to_string(i));
    }
    if (j < 0 || j > tree.node_count()) {
        throw IndexOutOfRange("node " + std::to_string(j));
    }
    std::vector<int> reversed{j};
    int cur = j;
    while (cur != i && cur != 0) {
        cur = tree.parent(cur);
        reversed.push_back(cur);
    }
    if (cur != i) {
        return std::nullopt;
    }
    Route r;
    r.from = i;
    r.to = j;
    r.nodes.assign(reversed.rbegin(), reversed.rend());
    for (std::size_t s = 1; s < r.nodes.size(); ++s) {
        internal_check(r.nodes[s - 1] < r.nodes[s], "route is not strictly increasing");
        internal_check(forward_adjacent(tree, r.nodes[s - 1], r.nodes[s]),
                       "route steps must be forward-adjacent");
    }
    return r;
}

inline bool forward_connected(const Tree& tree, int i, int j) {
    return route(tree, i, j).has_value();
}

// All nodes k is forward-connected to (its subtree, k included), ascending.
// Equals the support of row k of the inverse of the forward adjacency
// matrix.
inline std::vector<int> forward_closure(const Tree& tree, int k) {
    if (k < 0 || k > tree.node_count()) {
        throw IndexOutOfRange("node " + std::to_string(k));
    }
    std::vector<int> out;
    std::vector<int> stack{k};
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        out.push_back(cur);
        for (const int c : tree.children(cur)) {
            stack.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace treemat
