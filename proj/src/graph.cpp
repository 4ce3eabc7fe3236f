#include "pcot/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace pcot {

Digraph make_digraph(std::vector<Cost> costs,
                     const std::vector<std::pair<int, int>>& arcs,
                     bool allow_zero_costs) {
    Digraph g;
    const int n = static_cast<int>(costs.size());
    for (int v = 0; v < n; ++v) {
        Cost c = costs[v];
        if (c < 0 || (c == 0 && !allow_zero_costs))
            throw input_error("node " + std::to_string(v) + " has cost " +
                              std::to_string(c) +
                              (allow_zero_costs ? " (must be >= 0)" : " (must be >= 1)"));
    }
    g.costs = std::move(costs);
    g.zero_costs_allowed = allow_zero_costs;
    g.out.assign(n, {});
    g.in.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : arcs) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw input_error("arc (" + std::to_string(u) + "," + std::to_string(v) +
                              ") out of range for n=" + std::to_string(n));
        if (u == v)
            throw input_error("self-loop at node " + std::to_string(u));
        if (!seen.insert({u, v}).second)
            throw input_error("duplicate arc (" + std::to_string(u) + "," +
                              std::to_string(v) + ")");
        g.out[u].push_back(v);
        g.in[v].push_back(u);
    }
    for (auto& a : g.out) std::sort(a.begin(), a.end());
    for (auto& a : g.in) std::sort(a.begin(), a.end());
    return g;
}

std::vector<int> OutTree::nodes() const {
    std::vector<int> ns;
    ns.reserve(size());
    ns.push_back(root);
    for (const auto& [v, p] : parent) ns.push_back(v);
    std::sort(ns.begin(), ns.end());
    return ns;
}

std::map<int, std::vector<int>> OutTree::children() const {
    std::map<int, std::vector<int>> ch;
    for (const auto& [v, p] : parent) ch[p].push_back(v);
    for (auto& [p, kids] : ch) std::sort(kids.begin(), kids.end());
    return ch;
}

std::vector<std::pair<int, int>> OutTree::arcs() const {
    std::vector<std::pair<int, int>> as;
    as.reserve(parent.size());
    for (const auto& [v, p] : parent) as.push_back({p, v});
    std::sort(as.begin(), as.end());
    return as;
}

OutTree singleton_tree(int v) {
    OutTree t;
    t.root = v;
    return t;
}

void validate_tree(const OutTree& t, const Digraph& g) {
    if (t.root < 0 || t.root >= g.n())
        throw input_error("tree root " + std::to_string(t.root) + " not in graph");
    if (t.parent.count(t.root))
        throw input_error("tree root has a parent");
    for (const auto& [v, p] : t.parent) {
        if (v < 0 || v >= g.n())
            throw input_error("tree node " + std::to_string(v) + " not in graph");
        if (!t.contains(p))
            throw input_error("parent of " + std::to_string(v) + " missing from tree");
        if (!g.has_arc(p, v))
            throw input_error("tree arc (" + std::to_string(p) + "," +
                              std::to_string(v) + ") not in graph");
    }
    // walk every node up to the root; the parent map guarantees in-degree 1
    for (const auto& [v, p] : t.parent) {
        int cur = v;
        int steps = 0;
        while (cur != t.root) {
            auto it = t.parent.find(cur);
            if (it == t.parent.end() || ++steps > t.size())
                throw input_error("tree is not connected to its root (cycle or break at " +
                                  std::to_string(v) + ")");
            cur = it->second;
        }
    }
}

Cost tree_cost(const OutTree& t, const Digraph& g) {
    Cost c = 0;
    for (int v : t.nodes()) {
        if (v < 0 || v >= g.n())
            throw input_error("tree node " + std::to_string(v) + " not in graph");
        c += g.costs[v];
    }
    return c;
}

std::vector<int> subtree_nodes(const OutTree& t, int v) {
    if (!t.contains(v))
        throw input_error("subtree root " + std::to_string(v) + " not in tree");
    auto ch = t.children();
    std::vector<int> acc;
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        acc.push_back(x);
        auto it = ch.find(x);
        if (it != ch.end())
            for (int k : it->second) stack.push_back(k);
    }
    std::sort(acc.begin(), acc.end());
    return acc;
}

OutTree full_subtree(const OutTree& t, int v) {
    OutTree s;
    s.root = v;
    for (int x : subtree_nodes(t, v))
        if (x != v) s.parent[x] = t.parent.at(x);
    return s;
}

OutTree remove_subtree(const OutTree& t, int v) {
    if (v == t.root)
        throw input_error("cannot remove the root subtree (would empty the tree)");
    OutTree s;
    s.root = t.root;
    auto gone = subtree_nodes(t, v);
    auto in_gone = [&](int x) {
        return std::binary_search(gone.begin(), gone.end(), x);
    };
    for (const auto& [x, p] : t.parent)
        if (!in_gone(x)) s.parent[x] = p;
    return s;
}

DistanceTable node_weighted_shortest_paths(const Digraph& g, int source) {
    const int n = g.n();
    if (source < 0 || source >= n)
        throw input_error("shortest-path source " + std::to_string(source) +
                          " out of range");
    DistanceTable tab;
    tab.source = source;
    tab.dist.assign(n, DistanceTable::kUnreachable);
    tab.pred.assign(n, -1);
    // label-setting: pay the head's cost on arrival, the source's at start
    using Entry = std::pair<Cost, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    std::vector<char> done(n, 0);
    tab.dist[source] = g.costs[source];
    tab.pred[source] = source;
    pq.push({tab.dist[source], source});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (int v : g.out[u]) {
            Cost nd = d + g.costs[v];
            if (tab.dist[v] == DistanceTable::kUnreachable || nd < tab.dist[v] ||
                (nd == tab.dist[v] && !done[v] && u < tab.pred[v])) {
                tab.dist[v] = nd;
                tab.pred[v] = u;
                pq.push({nd, v});
            }
        }
    }
    return tab;
}

OutTree shortest_path(const Digraph& g, int u, int v) {
    auto tab = node_weighted_shortest_paths(g, u);
    if (!tab.reachable(v))
        throw no_path_error("no path from " + std::to_string(u) + " to " +
                            std::to_string(v));
    OutTree p;
    p.root = u;
    int cur = v;
    while (cur != u) {
        p.parent[cur] = tab.pred[cur];
        cur = tab.pred[cur];
    }
    return p;
}

PrunedGraph prune_b_appropriate(const Digraph& g, int r, Cost B) {
    if (r < 0 || r >= g.n())
        throw input_error("root " + std::to_string(r) + " out of range");
    if (g.costs[r] > B)
        throw infeasible_error("root cost " + std::to_string(g.costs[r]) +
                               " exceeds budget " + std::to_string(B));
    auto tab = node_weighted_shortest_paths(g, r);
    PrunedGraph pr;
    pr.to_new.assign(g.n(), -1);
    for (int v = 0; v < g.n(); ++v) {
        if (tab.reachable(v) && tab.dist[v] <= B) {
            pr.to_new[v] = static_cast<int>(pr.to_old.size());
            pr.to_old.push_back(v);
        }
    }
    std::vector<Cost> costs;
    costs.reserve(pr.to_old.size());
    for (int old : pr.to_old) costs.push_back(g.costs[old]);
    std::vector<std::pair<int, int>> arcs;
    for (int old_u : pr.to_old)
        for (int old_v : g.out[old_u])
            if (pr.to_new[old_v] >= 0)
                arcs.push_back({pr.to_new[old_u], pr.to_new[old_v]});
    pr.graph = make_digraph(std::move(costs), arcs, g.zero_costs_allowed);
    pr.root = pr.to_new[r];
    return pr;
}

bool is_b_appropriate(const Digraph& g, int r, Cost B) {
    auto tab = node_weighted_shortest_paths(g, r);
    for (int v = 0; v < g.n(); ++v)
        if (!tab.reachable(v) || tab.dist[v] > B) return false;
    return true;
}

OutTree graft_path(const OutTree& path, const OutTree& base, const Digraph& g) {
    validate_tree(path, g);
    validate_tree(base, g);
    // path must be a single chain ending at base's root
    {
        auto ch = path.children();
        int tip = path.root;
        int count = 1;
        while (true) {
            auto it = ch.find(tip);
            if (it == ch.end()) break;
            if (it->second.size() != 1)
                throw input_error("graft path is not a simple chain");
            tip = it->second[0];
            ++count;
        }
        if (count != path.size())
            throw input_error("graft path is not a simple chain");
        if (tip != base.root)
            throw input_error("graft path ends at " + std::to_string(tip) +
                              ", not at base root " + std::to_string(base.root));
    }
    OutTree t;
    t.root = path.root;
    for (const auto& [v, p] : base.parent)
        if (!path.contains(v)) t.parent[v] = p;
    for (const auto& [v, p] : path.parent) t.parent[v] = p;
    validate_tree(t, g);
    return t;
}

}  // namespace pcot
