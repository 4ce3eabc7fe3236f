#include "pcot/decompose.hpp"

#include <algorithm>

namespace pcot {

namespace {

// post-order over the tree, children visited in increasing id order
void post_order(const OutTree& t, const std::map<int, std::vector<int>>& ch,
                int v, std::vector<int>& out) {
    auto it = ch.find(v);
    if (it != ch.end())
        for (int k : it->second) post_order(t, ch, k, out);
    out.push_back(v);
}

Cost set_cost(const std::vector<int>& vs, const Digraph& g) {
    Cost c = 0;
    for (int v : vs) c += g.costs[v];
    return c;
}

}  // namespace

SplitResult proc_split(const OutTree& t, const Digraph& g, Cost m) {
    if (m < 1) throw input_error("split window m must be >= 1");
    validate_tree(t, g);
    SplitResult res;
    OutTree cur = t;
    while (true) {
        auto ch = cur.children();
        std::vector<int> order;
        post_order(cur, ch, cur.root, order);
        int cut = -1;
        for (int v : order) {
            auto sub = subtree_nodes(cur, v);
            if (set_cost(sub, g) - g.costs[v] > m) {
                cut = v;
                break;
            }
        }
        if (cut < 0) break;
        res.infeasible.push_back(full_subtree(cur, cut));
        if (cut == cur.root) return res;  // nothing left
        cur = remove_subtree(cur, cut);
    }
    res.residual = cur;
    return res;
}

Decomposition decompose(const OutTree& t, const Digraph& g, Cost m) {
    Cost total = tree_cost(t, g);
    if (m < 1) throw input_error("decompose window m must be >= 1");
    if (m > total)
        throw input_error("decompose window m=" + std::to_string(m) +
                          " exceeds tree cost " + std::to_string(total));
    auto split = proc_split(t, g, m);
    Decomposition dec;
    dec.m = m;
    if (split.residual) dec.pieces.push_back(*split.residual);
    for (const auto& inf : split.infeasible) {
        const int vi = inf.root;
        auto ch = inf.children();
        const auto& kids = ch[vi];  // sorted
        // children whose subtree reaches m/2 stand alone; lighter ones are
        // greedily grouped (in id order) into bundles of cost in [m/2, m),
        // leaving at most one lighter bundle
        std::vector<int> light;
        size_t emitted_before = dec.pieces.size();
        for (int u : kids) {
            Cost cu = set_cost(subtree_nodes(inf, u), g);
            if (2 * cu >= m)
                dec.pieces.push_back(full_subtree(inf, u));
            else
                light.push_back(u);
        }
        if (light.empty()) {
            dec.pieces.push_back(singleton_tree(vi));
        } else {
            std::vector<std::vector<int>> groups;
            std::vector<int> cur_group;
            Cost cur_cost = 0;
            for (int u : light) {
                cur_group.push_back(u);
                cur_cost += set_cost(subtree_nodes(inf, u), g);
                if (2 * cur_cost >= m) {
                    groups.push_back(cur_group);
                    cur_group.clear();
                    cur_cost = 0;
                }
            }
            if (!cur_group.empty()) groups.push_back(cur_group);
            for (const auto& grp : groups) {
                OutTree piece = singleton_tree(vi);
                for (int u : grp)
                    for (int x : subtree_nodes(inf, u))
                        piece.parent[x] = (x == u) ? vi : inf.parent.at(x);
                dec.pieces.push_back(piece);
            }
        }
        // per-subtree certificate: piece count within 4 * floor(cost / m)
        long long emitted = static_cast<long long>(dec.pieces.size() - emitted_before);
        Cost ci = tree_cost(inf, g);
        if (emitted > 4 * (ci / m))
            throw invariant_error("decompose emitted " + std::to_string(emitted) +
                                  " pieces for a subtree of cost " + std::to_string(ci) +
                                  ", above the certified 4*floor(c/m) bound");
    }
    dec.piece_bound = 5 * (total / m);
    if (static_cast<long long>(dec.pieces.size()) > dec.piece_bound)
        throw invariant_error("decompose produced " + std::to_string(dec.pieces.size()) +
                              " pieces, above the certified bound " +
                              std::to_string(dec.piece_bound));
    for (const auto& piece : dec.pieces) {
        validate_tree(piece, g);
        Cost pc = tree_cost(piece, g);
        if (pc - g.costs[piece.root] > m)
            throw invariant_error("decompose piece rooted at " +
                                  std::to_string(piece.root) + " has cost " +
                                  std::to_string(pc) + " beyond window " +
                                  std::to_string(m) + " plus its root");
    }
    return dec;
}

}  // namespace pcot
