#include "pcot/reductions.hpp"

#include <algorithm>

#include "pcot/errors.hpp"

namespace pcot {

StoInstance make_sto(int n, const std::vector<std::tuple<int, int, Cost>>& arcs,
                     int root, Cost budget, PrizeOracle oracle) {
    if (n < 1) throw input_error("arc-cost instance needs at least one vertex");
    if (root < 0 || root >= n) throw input_error("root out of range");
    if (budget < 0) throw input_error("budget must be non-negative");
    if (oracle.ground_size != n)
        throw input_error("oracle ground set does not match the vertex count");
    StoInstance s;
    std::vector<std::pair<int, int>> plain;
    for (const auto& [u, v, c] : arcs) {
        if (c < 1) throw input_error("arc costs must be at least 1");
        if (s.arc_cost.count({u, v}))
            throw input_error("duplicate arc (" + std::to_string(u) + ", " +
                              std::to_string(v) + ")");
        s.arc_cost[{u, v}] = c;
        plain.emplace_back(u, v);
    }
    s.graph = make_digraph(std::vector<Cost>(n, 0), plain, true);
    s.root = root;
    s.budget = budget;
    s.oracle = std::move(oracle);
    return s;
}

Cost sto_tree_cost(const OutTree& t, const StoInstance& s) {
    Cost c = 0;
    for (const auto& [v, p] : t.parent) {
        if (v == t.root) continue;
        auto it = s.arc_cost.find({p, v});
        if (it == s.arc_cost.end())
            throw input_error("tree uses arc (" + std::to_string(p) + ", " +
                              std::to_string(v) + ") absent from the instance");
        c += it->second;
    }
    return c;
}

StoInstance drso_to_sto(const Digraph& g, const PrizeOracle& oracle, int root,
                        Cost budget) {
    if (root < 0 || root >= g.n()) throw input_error("root out of range");
    if (budget < g.costs[root])
        throw infeasible_error("budget " + std::to_string(budget) +
                               " cannot pay for the root cost " +
                               std::to_string(g.costs[root]));
    std::vector<std::tuple<int, int, Cost>> arcs;
    for (int u = 0; u < g.n(); ++u)
        for (int v : g.out[u])
            if (v != root) arcs.emplace_back(u, v, g.costs[v]);
    return make_sto(g.n(), arcs, root, budget - g.costs[root], oracle);
}

std::map<std::pair<int, int>, int> sto_midpoint_ids(const StoInstance& s) {
    std::map<std::pair<int, int>, int> ids;
    int next = s.graph.n();
    for (const auto& [arc, c] : s.arc_cost) {
        (void)c;
        ids[arc] = next++;  // arc_cost iterates in sorted (i, j) order
    }
    return ids;
}

Instance sto_to_drso(const StoInstance& s) {
    const int n = s.graph.n();
    auto mid = sto_midpoint_ids(s);
    std::vector<Cost> costs(n + mid.size(), 0);
    std::vector<std::pair<int, int>> arcs;
    for (const auto& [arc, c] : s.arc_cost) {
        int ve = mid[arc];
        costs[ve] = c;
        arcs.emplace_back(arc.first, ve);
        arcs.emplace_back(ve, arc.second);
    }
    Instance inst;
    inst.graph = make_digraph(costs, arcs, true);
    inst.variant = Variant::SubmodularRooted;
    inst.root = s.root;
    inst.budget = s.budget;
    // the oracle scores original vertices only; midpoints never add prize
    if (s.oracle.kind == PrizeOracle::Kind::Additive) {
        std::vector<Prize> w = s.oracle.weights;
        w.resize(n + mid.size(), 0);
        inst.oracle = make_additive(std::move(w));
    } else {
        std::vector<std::vector<int>> sets = s.oracle.node_sets;
        sets.resize(n + mid.size());
        inst.oracle = make_coverage(static_cast<int>(costs.size()),
                                    std::move(sets), s.oracle.element_weights);
    }
    return inst;
}

StoSolution sto_solution_from_expanded(const StoInstance& s, const OutTree& t) {
    const int n = s.graph.n();
    auto mid = sto_midpoint_ids(s);
    std::map<int, std::pair<int, int>> arc_of;
    for (const auto& [arc, ve] : mid) arc_of[ve] = arc;

    // midpoints with no child carry cost and no prize: drop them
    OutTree pruned = t;
    {
        auto ch = pruned.children();
        std::vector<int> drop;
        for (int v : pruned.nodes())
            if (v >= n && ch[v].empty()) drop.push_back(v);
        for (int v : drop) pruned.parent.erase(v);
    }

    StoSolution sol;
    sol.tree.root = pruned.root;
    if (pruned.root >= n)
        throw invariant_error("expanded solution is rooted at a midpoint");
    for (int v : pruned.nodes()) {
        if (v < n) continue;
        auto arc = arc_of.at(v);
        int parent = pruned.parent.at(v);
        if (parent != arc.first)
            throw invariant_error("midpoint vertex reached from the wrong tail");
        sol.tree.parent[arc.second] = arc.first;
    }
    // every non-root original vertex must have arrived through its midpoint
    for (int v : pruned.nodes()) {
        if (v >= n || v == pruned.root) continue;
        if (!sol.tree.parent.count(v))
            throw invariant_error("original vertex " + std::to_string(v) +
                                  " has no incoming arc after the mapping");
    }
    validate_tree(sol.tree, s.graph);
    sol.cost = sto_tree_cost(sol.tree, s);
    std::vector<int> verts = sol.tree.nodes();
    sol.prize = s.oracle.eval(verts);
    return sol;
}

StoSolveReport solve_sto(const StoInstance& s, const Rat& eps) {
    if (s.budget == 0) {
        // arcs cost at least 1, so only the root is affordable; that
        // singleton is the exact optimum
        StoSolveReport rep;
        rep.solution.tree = singleton_tree(s.root);
        rep.solution.cost = 0;
        rep.solution.prize = s.oracle.eval({s.root});
        rep.expanded.variant = Variant::SubmodularRooted;
        rep.expanded.root = s.root;
        rep.expanded.budget = 0;
        rep.expanded.epsilon = eps;
        rep.expanded.tree = rep.solution.tree;
        rep.expanded.cost = 0;
        rep.expanded.prize = rep.solution.prize;
        rep.expanded.budget_factor = Rat(0);
        rep.expanded.guarantee = Rat(1);
        rep.expanded.branch = "degenerate";
        rep.expanded.chosen_center = s.root;
        rep.expanded.best_candidate_prize = rep.solution.prize;
        rep.expanded.pre_trim_prize = rep.solution.prize;
        return rep;
    }
    Instance inst = sto_to_drso(s);
    StoSolveReport rep;
    rep.expanded = solve_drso(inst.graph, inst.oracle, inst.root, inst.budget,
                              eps);
    rep.solution = sto_solution_from_expanded(s, rep.expanded.tree);
    if (rep.solution.prize != rep.expanded.prize)
        throw invariant_error("prize changed while mapping the solution back");
    if (Rat(rep.solution.cost) > (1 + eps) * Rat(s.budget))
        throw invariant_error("mapped arc-cost solution exceeds (1+eps) times "
                              "the budget");
    return rep;
}

MwbcscInstance make_mwbcsc(std::vector<Prize> element_weights,
                           std::vector<std::vector<int>> sets,
                           std::vector<Cost> set_costs,
                           std::vector<std::pair<int, int>> edges,
                           Cost budget) {
    MwbcscInstance m;
    m.element_weights = std::move(element_weights);
    m.sets = std::move(sets);
    m.set_costs = std::move(set_costs);
    m.edges = std::move(edges);
    m.budget = budget;
    if (m.sets.size() != m.set_costs.size())
        throw input_error("set list and set cost list differ in length");
    if (m.sets.empty()) throw input_error("need at least one set");
    if (m.budget < 1) throw input_error("budget must be at least 1");
    const int ne = static_cast<int>(m.element_weights.size());
    std::vector<int> freq(ne, 0);
    for (auto& set : m.sets) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        for (int x : set) {
            if (x < 0 || x >= ne)
                throw input_error("element id " + std::to_string(x) +
                                  " out of range");
            ++freq[x];
        }
    }
    for (Prize w : m.element_weights)
        if (w < 0) throw input_error("element weights must be non-negative");
    for (Cost c : m.set_costs)
        if (c < 1) throw input_error("set costs must be at least 1");
    const int ns = static_cast<int>(m.sets.size());
    for (auto [a, b] : m.edges)
        if (a < 0 || a >= ns || b < 0 || b >= ns || a == b)
            throw input_error("bad set-adjacency edge");
    m.max_frequency = freq.empty() ? 0 : *std::max_element(freq.begin(), freq.end());
    return m;
}

Instance mwbcsc_to_dso(const MwbcscInstance& m, MwbcscStrategy strategy) {
    const int ns = static_cast<int>(m.sets.size());
    const int ne = static_cast<int>(m.element_weights.size());
    std::vector<int> freq(ne, 0);
    for (const auto& set : m.sets)
        for (int x : set) ++freq[x];
    for (int x = 0; x < ne; ++x)
        if (freq[x] == 0)
            throw input_error("element " + std::to_string(x) +
                              " is covered by no set");
    Instance inst;
    inst.graph = undirected_lift(m.set_costs, m.edges);
    inst.variant = Variant::Unrooted;
    inst.root = -1;
    inst.budget = m.budget;
    if (strategy == MwbcscStrategy::Coverage) {
        inst.oracle = make_coverage(ns, m.sets, m.element_weights);
    } else {
        std::vector<Prize> w(ns, 0);
        for (int i = 0; i < ns; ++i)
            for (int x : m.sets[i]) w[i] += m.element_weights[x];
        inst.oracle = make_additive(std::move(w));
    }
    return inst;
}

MwbcscInstance bscp_build(const BscpInstance& b) {
    if (b.sensing_range <= 0 || b.communication_range <= 0)
        throw input_error("both ranges must be positive");
    if (b.targets.size() != b.target_weights.size())
        throw input_error("target list and weight list differ in length");
    // the explicit return type matters: multiprecision operators yield
    // expression templates that must not outlive their operands
    auto dist2 = [](const std::pair<Rat, Rat>& p,
                    const std::pair<Rat, Rat>& q) -> Rat {
        Rat dx = p.first - q.first;
        Rat dy = p.second - q.second;
        return dx * dx + dy * dy;
    };
    const Rat rs2 = b.sensing_range * b.sensing_range;
    const Rat rc2 = b.communication_range * b.communication_range;
    std::vector<std::vector<int>> sets(b.sensors.size());
    for (size_t i = 0; i < b.sensors.size(); ++i)
        for (size_t t = 0; t < b.targets.size(); ++t)
            if (dist2(b.sensors[i], b.targets[t]) <= rs2)
                sets[i].push_back(static_cast<int>(t));
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < b.sensors.size(); ++i)
        for (size_t j = i + 1; j < b.sensors.size(); ++j)
            if (dist2(b.sensors[i], b.sensors[j]) <= rc2)
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return make_mwbcsc(b.target_weights, std::move(sets),
                       std::vector<Cost>(b.sensors.size(), 1),
                       std::move(edges), b.budget);
}

Digraph undirected_lift(const std::vector<Cost>& costs,
                        const std::vector<std::pair<int, int>>& edges,
                        bool allow_zero_costs) {
    std::vector<std::pair<int, int>> arcs;
    for (auto [a, b] : edges) {
        arcs.emplace_back(a, b);
        arcs.emplace_back(b, a);
    }
    return make_digraph(costs, arcs, allow_zero_costs);
}

}  // namespace pcot
