#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pcot/errors.hpp"
#include "pcot/rational.hpp"

namespace pcot {

using Cost = long long;

// Directed graph with non-negative integer node costs and dense ids 0..n-1.
// Natively built graphs require every cost >= 1; graphs produced by a
// reduction (arc splitting) may carry zero-cost nodes and must be built with
// allow_zero_costs = true.
struct Digraph {
    std::vector<Cost> costs;
    std::vector<std::vector<int>> out;  // out[v] = sorted heads
    std::vector<std::vector<int>> in;   // in[v]  = sorted tails
    bool zero_costs_allowed = false;

    int n() const { return static_cast<int>(costs.size()); }

    bool has_arc(int u, int v) const {
        if (u < 0 || u >= n() || v < 0 || v >= n()) return false;
        const auto& a = out[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    int arc_count() const {
        int m = 0;
        for (const auto& a : out) m += static_cast<int>(a.size());
        return m;
    }
};

Digraph make_digraph(std::vector<Cost> costs,
                     const std::vector<std::pair<int, int>>& arcs,
                     bool allow_zero_costs = false);

// Rooted out-tree stored as a parent map (root excluded from the map).
// Immutable by convention: operations that change a tree return a new value.
struct OutTree {
    int root = -1;
    std::map<int, int> parent;  // node -> parent

    bool contains(int v) const { return v == root || parent.count(v) > 0; }
    int size() const { return 1 + static_cast<int>(parent.size()); }

    std::vector<int> nodes() const;                    // sorted ids
    std::map<int, std::vector<int>> children() const;  // parent -> sorted kids
    std::vector<std::pair<int, int>> arcs() const;     // (parent, child)
};

OutTree singleton_tree(int v);

// Throws input_error unless t is a valid out-tree over g's arcs: every
// parent arc exists in g, exactly one root, no cycles, all nodes connected.
void validate_tree(const OutTree& t, const Digraph& g);

Cost tree_cost(const OutTree& t, const Digraph& g);

// Vertex set of the full subtree hanging at v (v included). v must be in t.
std::vector<int> subtree_nodes(const OutTree& t, int v);

// The full subtree at v as a tree of its own (rooted at v).
OutTree full_subtree(const OutTree& t, int v);

// t with the full subtree at v removed. v must not be the root.
OutTree remove_subtree(const OutTree& t, int v);

// Node-weighted shortest-path distances from source: the cost of a path is
// the sum of the costs of *all* its nodes, both endpoints included, so
// dist[source] = cost(source). Unreachable nodes get dist = -1.
// Ties are broken toward the smaller predecessor id.
struct DistanceTable {
    int source = -1;
    std::vector<Cost> dist;
    std::vector<int> pred;  // -1 if unreachable; source has pred = source
    static constexpr Cost kUnreachable = -1;

    bool reachable(int v) const { return dist[v] != kUnreachable; }
};

DistanceTable node_weighted_shortest_paths(const Digraph& g, int source);

// Shortest u -> v path (endpoint-inclusive node costs) as a path-shaped
// out-tree rooted at u. Throws no_path_error if v is unreachable.
OutTree shortest_path(const Digraph& g, int u, int v);

// Subgraph retaining exactly the nodes with dist(r, v) <= B, ids re-indexed
// densely. to_old maps new id -> old id (strictly increasing), to_new maps
// old id -> new id or -1 if dropped.
struct PrunedGraph {
    Digraph graph;
    std::vector<int> to_old;
    std::vector<int> to_new;
    int root = -1;  // new id of r
};

// Throws infeasible_error if cost(r) > B.
PrunedGraph prune_b_appropriate(const Digraph& g, int r, Cost B);

// True iff every node of g is reachable from r within distance B.
bool is_b_appropriate(const Digraph& g, int r, Cost B);

// Grafts `base` (an out-tree rooted at z) onto `path` (a path-shaped
// out-tree from r ending at z): the union keeps every path arc and drops
// the base arcs that enter nodes shared between base and path. Result is
// an out-tree rooted at r spanning V(base) u V(path).
OutTree graft_path(const OutTree& path, const OutTree& base, const Digraph& g);

}  // namespace pcot
