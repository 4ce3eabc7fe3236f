#include "pcot/exact.hpp"

#include <algorithm>
#include <set>

#include "pcot/errors.hpp"

namespace pcot {

namespace {

void check_caps(const Digraph& g, const ExactCaps& caps) {
    if (g.n() > caps.max_nodes)
        throw size_cap_error("exact search refused: " + std::to_string(g.n()) +
                             " vertices exceed the cap of " +
                             std::to_string(caps.max_nodes));
}

// Breadth-first spanning out-tree of `set` from root, following arcs inside
// the set only; throws if the set is not fully reachable from the root.
OutTree spanning_tree_within(const Digraph& g, int root,
                             const std::vector<int>& set) {
    std::vector<char> in_set(g.n(), 0);
    for (int v : set) in_set[v] = 1;
    OutTree t = singleton_tree(root);
    std::vector<int> queue{root};
    std::vector<char> seen(g.n(), 0);
    seen[root] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (int v : g.out[u]) {
            if (!in_set[v] || seen[v]) continue;
            seen[v] = 1;
            t.parent[v] = u;
            queue.push_back(v);
        }
    }
    if (queue.size() != set.size())
        throw invariant_error("witness set admits no spanning out-tree from "
                              "its root");
    return t;
}

bool connected_from(const Digraph& g, int root, const std::vector<int>& set) {
    std::vector<char> in_set(g.n(), 0);
    for (int v : set) in_set[v] = 1;
    if (!in_set[root]) return false;
    std::vector<int> queue{root};
    std::vector<char> seen(g.n(), 0);
    seen[root] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi)
        for (int v : g.out[queue[qi]])
            if (in_set[v] && !seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
    return queue.size() == set.size();
}

struct Search {
    const Digraph& g;
    const PrizeOracle& oracle;
    Cost budget;
    long long state_cap;
    long long states = 0;
    Prize best_prize = -1;
    std::vector<int> best_set;
    std::set<std::vector<int>>* registry = nullptr;  // optional dedup across roots

    void record(const std::vector<int>& set) {
        ++states;
        if (states > state_cap)
            throw size_cap_error("exact search aborted after " +
                                 std::to_string(state_cap) +
                                 " enumerated sets");
        if (registry) {
            std::vector<int> key = set;
            std::sort(key.begin(), key.end());
            registry->insert(std::move(key));
        }
        Prize p = oracle.eval(set);
        if (p > best_prize) {
            best_prize = p;
            best_set = set;
            std::sort(best_set.begin(), best_set.end());
        }
    }

    // Canonical connected-set enumeration: extend the current set through
    // arcs leaving it, excluding vertices already handled by an earlier
    // sibling branch so every set appears exactly once.
    void explore(std::vector<int>& set, std::vector<char>& in_set,
                 std::vector<char>& excluded, Cost set_cost) {
        record(set);
        std::vector<int> ext;
        for (int u : set)
            for (int v : g.out[u])
                if (!in_set[v] && !excluded[v]) ext.push_back(v);
        std::sort(ext.begin(), ext.end());
        ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
        std::vector<int> newly_excluded;
        for (int v : ext) {
            if (set_cost + g.costs[v] <= budget) {
                set.push_back(v);
                in_set[v] = 1;
                explore(set, in_set, excluded, set_cost + g.costs[v]);
                in_set[v] = 0;
                set.pop_back();
            }
            excluded[v] = 1;  // later branches must not re-add v
            newly_excluded.push_back(v);
        }
        for (int v : newly_excluded) excluded[v] = 0;
    }

    void run(int root) {
        std::vector<int> set{root};
        std::vector<char> in_set(g.n(), 0), excluded(g.n(), 0);
        in_set[root] = 1;
        explore(set, in_set, excluded, g.costs[root]);
    }
};

ExactResult finish(const Digraph& g, const PrizeOracle& oracle, int root,
                   Cost budget, const Search& s) {
    ExactResult res;
    res.optimum = s.best_prize;
    res.witness_set = s.best_set;
    res.subsets_enumerated = s.states;
    res.distinct_sets =
        s.registry ? static_cast<long long>(s.registry->size()) : s.states;
    res.witness = spanning_tree_within(g, root, res.witness_set);
    validate_tree(res.witness, g);
    if (tree_cost(res.witness, g) > budget)
        throw invariant_error("exact witness exceeds the budget");
    if (tree_prize(res.witness, oracle) != res.optimum)
        throw invariant_error("exact witness prize disagrees with the optimum");
    return res;
}

}  // namespace

ExactResult exact_rooted(const Digraph& g, const PrizeOracle& oracle, int root,
                         Cost budget, const ExactCaps& caps) {
    check_caps(g, caps);
    if (root < 0 || root >= g.n()) throw input_error("root out of range");
    if (oracle.ground_size != g.n())
        throw input_error("oracle ground set does not match the graph");
    if (g.costs[root] > budget)
        throw infeasible_error("the root alone costs more than the budget");
    Search s{g, oracle, budget, caps.max_states, 0, -1, {}, nullptr};
    s.run(root);
    return finish(g, oracle, root, budget, s);
}

ExactResult exact_rooted_powerset(const Digraph& g, const PrizeOracle& oracle,
                                  int root, Cost budget,
                                  const ExactCaps& caps) {
    check_caps(g, caps);
    if (g.n() > 20)
        throw size_cap_error("power-set search needs at most 20 vertices");
    if (root < 0 || root >= g.n()) throw input_error("root out of range");
    if (oracle.ground_size != g.n())
        throw input_error("oracle ground set does not match the graph");
    if (g.costs[root] > budget)
        throw infeasible_error("the root alone costs more than the budget");
    Search s{g, oracle, budget, caps.max_states, 0, -1, {}, nullptr};
    const unsigned long long full = 1ULL << g.n();
    for (unsigned long long mask = 0; mask < full; ++mask) {
        if (!(mask >> root & 1)) continue;
        std::vector<int> set;
        Cost c = 0;
        for (int v = 0; v < g.n(); ++v)
            if (mask >> v & 1) {
                set.push_back(v);
                c += g.costs[v];
            }
        if (c > budget) continue;
        if (!connected_from(g, root, set)) continue;
        s.record(set);
    }
    return finish(g, oracle, root, budget, s);
}

namespace {

ExactResult exact_unrooted_impl(const Digraph& g, const PrizeOracle& oracle,
                                Cost budget, const ExactCaps& caps,
                                bool powerset) {
    check_caps(g, caps);
    if (oracle.ground_size != g.n())
        throw input_error("oracle ground set does not match the graph");
    std::set<std::vector<int>> registry;
    bool any = false;
    ExactResult best;
    long long states = 0;
    for (int root = 0; root < g.n(); ++root) {
        if (g.costs[root] > budget) continue;
        ExactCaps left = caps;
        left.max_states = caps.max_states - states;
        ExactResult r;
        if (powerset) {
            r = exact_rooted_powerset(g, oracle, root, budget, left);
        } else {
            Search s{g, oracle, budget, left.max_states, 0, -1, {}, nullptr};
            s.registry = &registry;
            s.run(root);
            r = finish(g, oracle, root, budget, s);
        }
        states += r.subsets_enumerated;
        if (!any || r.optimum > best.optimum) {
            best = r;
            any = true;
        }
    }
    if (!any)
        throw infeasible_error("every vertex costs more than the budget");
    best.subsets_enumerated = states;
    if (!powerset)
        best.distinct_sets = static_cast<long long>(registry.size());
    return best;
}

}  // namespace

ExactResult exact_unrooted(const Digraph& g, const PrizeOracle& oracle,
                           Cost budget, const ExactCaps& caps) {
    return exact_unrooted_impl(g, oracle, budget, caps, false);
}

ExactResult exact_unrooted_powerset(const Digraph& g, const PrizeOracle& oracle,
                                    Cost budget, const ExactCaps& caps) {
    return exact_unrooted_impl(g, oracle, budget, caps, true);
}

}  // namespace pcot
