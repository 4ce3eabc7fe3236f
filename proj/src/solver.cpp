#include "pcot/solver.hpp"

#include <algorithm>

namespace pcot {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::SubmodularRooted: return "submodular-rooted";
        case Variant::AdditiveRooted: return "additive-rooted";
        case Variant::Unrooted: return "unrooted";
    }
    return "unknown";
}

namespace {

struct Induced {
    Digraph graph;
    std::vector<int> to_old;
    std::vector<int> to_new;  // -1 when dropped
};

Induced induce(const Digraph& g, const std::vector<char>& keep,
               const std::vector<Cost>& costs, bool allow_zero) {
    Induced out;
    out.to_new.assign(g.n(), -1);
    std::vector<Cost> kept_costs;
    for (int v = 0; v < g.n(); ++v) {
        if (!keep[v]) continue;
        out.to_new[v] = static_cast<int>(out.to_old.size());
        out.to_old.push_back(v);
        kept_costs.push_back(costs[v]);
    }
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < g.n(); ++u) {
        if (!keep[u]) continue;
        for (int v : g.out[u])
            if (keep[v]) arcs.emplace_back(out.to_new[u], out.to_new[v]);
    }
    out.graph = make_digraph(kept_costs, arcs, allow_zero);
    return out;
}

OutTree map_tree(const OutTree& t, const std::vector<int>& to_old) {
    OutTree out;
    out.root = to_old[t.root];
    for (const auto& [v, p] : t.parent) out.parent[to_old[v]] = to_old[p];
    return out;
}

void check_instance(const Digraph& g, const PrizeOracle& oracle, Cost budget) {
    if (g.n() == 0) throw input_error("graph has no vertices");
    if (oracle.ground_size != g.n())
        throw input_error("oracle ground set size " +
                          std::to_string(oracle.ground_size) +
                          " does not match vertex count " + std::to_string(g.n()));
    if (budget < 1) throw input_error("budget must be at least 1");
}

struct PhaseBest {
    bool found = false;
    CandidateTree cand;
};

void consider(PhaseBest& best, CandidateTree&& cand) {
    if (!best.found || cand.prize > best.cand.prize) {
        best.cand = std::move(cand);
        best.found = true;
    }
}

SolveReport rooted_pipeline(const Digraph& g, const PrizeOracle& oracle,
                            int root, Cost budget, const Rat& eps,
                            bool additive) {
    check_instance(g, oracle, budget);
    if (eps <= 0 || eps > 1)
        throw input_error("epsilon must lie in (0, 1], got " + rat_to_string(eps));
    if (root < 0 || root >= g.n())
        throw input_error("root " + std::to_string(root) + " out of range");
    if (additive && oracle.kind != PrizeOracle::Kind::Additive)
        throw input_error("the additive variant needs an additive prize oracle");

    SolveReport rep;
    rep.variant = additive ? Variant::AdditiveRooted : Variant::SubmodularRooted;
    rep.root = root;
    rep.budget = budget;
    rep.epsilon = eps;
    rep.branch = "rooted";

    PrunedGraph pg = prune_b_appropriate(g, root, budget);
    rep.pruned_vertices = g.n() - pg.graph.n();
    PrizeOracle po = oracle.remapped(pg.to_old);

    const Cost sq = isqrt_floor(budget);
    const int k = static_cast<int>(sq) + 1;
    PhaseBest best;
    for (int u = 0; u < pg.graph.n(); ++u) {
        consider(best, candidate_tree(pg.graph, po, u, sq, k));
        ++rep.candidate_count;
    }
    if (!best.found) throw invariant_error("no candidate tree was produced");

    OutTree path = shortest_path(pg.graph, pg.root, best.cand.center);
    OutTree full = graft_path(path, best.cand.tree, pg.graph);
    rep.chosen_center = pg.to_old[best.cand.center];
    rep.best_candidate_prize = best.cand.prize;
    rep.pre_trim_cost = tree_cost(full, pg.graph);
    rep.pre_trim_prize = tree_prize(full, po);
    rep.pre_trim_cost_over_budget = Rat(rep.pre_trim_cost) / Rat(budget);
    if (rep.pre_trim_cost > 2 * budget)
        throw invariant_error("pre-trim cost " + std::to_string(rep.pre_trim_cost) +
                              " exceeds twice the budget");
    if (rep.pre_trim_prize < best.cand.prize)
        throw invariant_error("path attachment lost prize");

    OutTree final_tree = full;
    if (Rat(rep.pre_trim_cost) > (1 + eps) * Rat(budget)) {
        TrimReport tr = additive
            ? trim_rooted_additive(pg.graph, full, po, budget, eps)
            : trim_rooted_submodular(pg.graph, full, po, budget, eps, Rat(2));
        final_tree = tr.tree;
        rep.trim_taken = tr.taken;
        rep.trim_note = tr.note;
    }

    rep.tree = map_tree(final_tree, pg.to_old);
    validate_tree(rep.tree, g);
    rep.cost = tree_cost(rep.tree, g);
    rep.prize = tree_prize(rep.tree, oracle);
    if (rep.tree.root != root)
        throw invariant_error("final tree is not rooted at the requested root");
    if (rep.prize != tree_prize(final_tree, po))
        throw invariant_error("prize changed under index mapping");
    rep.budget_factor = Rat(rep.cost) / Rat(budget);
    if (rep.budget_factor > 1 + eps)
        throw invariant_error("final cost " + std::to_string(rep.cost) +
                              " exceeds (1+eps) times the budget");
    if (additive)
        rep.guarantee = eps * eps * one_minus_inv_e_ub() / (80 * Rat(sq));
    else
        rep.guarantee =
            eps * eps * eps * one_minus_inv_e_ub() / (1280 * Rat(sq));
    return rep;
}

}  // namespace

CandidateTree candidate_tree(const Digraph& g, const PrizeOracle& oracle,
                             int u, Cost ball_radius, int k,
                             std::optional<int> force) {
    if (u < 0 || u >= g.n())
        throw input_error("candidate center " + std::to_string(u) +
                          " out of range");
    if (ball_radius < 0) throw input_error("ball radius must be non-negative");
    if (k < 1) throw input_error("pick cap must be at least 1");
    DistanceTable du = node_weighted_shortest_paths(g, u);
    std::vector<int> ball;
    for (int v = 0; v < g.n(); ++v)
        if (du.reachable(v) && du.dist[v] <= g.costs[u] + ball_radius)
            ball.push_back(v);

    RsmInstance inst;
    inst.oracle = &oracle;
    inst.candidates = ball;
    inst.seed = u;
    inst.k = k;
    std::optional<int> extra;
    if (force && *force != u &&
        std::binary_search(ball.begin(), ball.end(), *force))
        extra = *force;
    GreedyResult gr = greedy_rsm(inst, extra);

    CandidateTree cand;
    cand.center = u;
    cand.seeds = gr.chosen;
    cand.forced_extra = extra.has_value();
    cand.tree = singleton_tree(u);
    for (int s : gr.chosen)
        for (int v = s; v != u; v = du.pred[v]) cand.tree.parent[v] = du.pred[v];
    validate_tree(cand.tree, g);
    for (int s : gr.chosen)
        if (!cand.tree.contains(s))
            throw invariant_error("candidate tree dropped a chosen seed");
    cand.cost = tree_cost(cand.tree, g);
    cand.prize = tree_prize(cand.tree, oracle);
    // each of the <= k-1 non-center seeds contributes a path costing at most
    // ball_radius beyond the center
    if (cand.cost - g.costs[u] > ball_radius * (k - 1))
        throw invariant_error("candidate tree cost above the center exceeds "
                              "its certified bound");
    return cand;
}

SolveReport solve_drso(const Digraph& g, const PrizeOracle& oracle, int root,
                       Cost budget, const Rat& eps) {
    return rooted_pipeline(g, oracle, root, budget, eps, false);
}

SolveReport solve_drao(const Digraph& g, const PrizeOracle& oracle, int root,
                       Cost budget, const Rat& eps) {
    return rooted_pipeline(g, oracle, root, budget, eps, true);
}

SolveReport solve_dso_unrooted(const Digraph& g, const PrizeOracle& oracle,
                               Cost budget) {
    check_instance(g, oracle, budget);
    bool any_feasible = false;
    for (int v = 0; v < g.n(); ++v)
        if (g.costs[v] <= budget) any_feasible = true;
    if (!any_feasible)
        throw infeasible_error("every vertex costs more than the budget");

    SolveReport rep;
    rep.variant = Variant::Unrooted;
    rep.root = -1;
    rep.budget = budget;
    rep.epsilon = Rat(0);
    const Cost sq = isqrt_floor(budget);

    struct Final {
        OutTree tree;      // original ids
        Cost cost = 0;
        Prize prize = 0;
        std::string branch;
        int center = -1;   // original id
        Prize cand_prize = 0;
        Cost pre_cost = 0;
        Prize pre_prize = 0;
        TrimCase taken = TrimCase::Skipped;
        std::string note;
        bool dual_won = false;
    };
    std::optional<Final> winner;
    Rat observed_factor(0);

    // one flat run, then one run per possible expensive vertex x: x becomes
    // free, the budget shrinks by c(x), and the flat filter reapplies
    std::vector<int> saddles;
    for (int x = 0; x < g.n(); ++x)
        if (2 * g.costs[x] > budget && g.costs[x] <= budget) saddles.push_back(x);
    rep.saddle_candidates = static_cast<int>(saddles.size());

    auto run_phase = [&](std::optional<int> saddle) {
        std::vector<Cost> costs = g.costs;
        Cost phase_budget = budget;
        if (saddle) {
            costs[*saddle] = 0;
            phase_budget = budget - g.costs[*saddle];
        }
        std::vector<char> keep(g.n(), 0);
        int kept = 0;
        for (int v = 0; v < g.n(); ++v)
            if (2 * costs[v] <= phase_budget) {
                keep[v] = 1;
                ++kept;
            }
        if (kept == 0) return;
        Induced sub = induce(g, keep, costs,
                             g.zero_costs_allowed || saddle.has_value());
        PrizeOracle po = oracle.remapped(sub.to_old);
        const Cost psq = isqrt_floor(phase_budget);
        const int k = static_cast<int>(psq) + 1;
        std::optional<int> force;
        if (saddle) force = sub.to_new[*saddle];

        PhaseBest best;
        bool best_forced = false;
        for (int u = 0; u < sub.graph.n(); ++u) {
            ++rep.candidate_count;
            CandidateTree plain = candidate_tree(sub.graph, po, u, psq, k);
            if (!best.found || plain.prize > best.cand.prize) {
                best.cand = plain;
                best.found = true;
                best_forced = false;
            }
            if (force && *force != u) {
                CandidateTree dual = candidate_tree(sub.graph, po, u, psq, k, force);
                if (dual.forced_extra) {
                    ++rep.dual_seed_runs;
                    if (dual.prize > best.cand.prize) {
                        best.cand = std::move(dual);
                        best_forced = true;
                    }
                }
            }
        }
        if (!best.found) return;

        Final f;
        f.branch = saddle ? ("saddled(" + std::to_string(*saddle) + ")") : "flat";
        f.center = sub.to_old[best.cand.center];
        f.cand_prize = best.cand.prize;
        f.dual_won = best_forced;
        OutTree phase_tree = best.cand.tree;
        Cost phase_cost = best.cand.cost;
        f.pre_cost = tree_cost(map_tree(phase_tree, sub.to_old), g);
        f.pre_prize = best.cand.prize;
        if (phase_cost > 2 * phase_budget)
            throw invariant_error("pre-trim cost " + std::to_string(phase_cost) +
                                  " exceeds twice the phase budget");
        if (phase_budget > 0) {
            Rat factor = Rat(phase_cost) / Rat(phase_budget);
            if (factor > observed_factor) observed_factor = factor;
        }
        if (phase_cost > phase_budget) {
            TrimReport tr = trim_unrooted_submodular(sub.graph, phase_tree, po,
                                                     phase_budget, Rat(2));
            phase_tree = tr.tree;
            f.taken = tr.taken;
            f.note = tr.note;
        }
        f.tree = map_tree(phase_tree, sub.to_old);
        validate_tree(f.tree, g);
        f.cost = tree_cost(f.tree, g);
        f.prize = tree_prize(f.tree, oracle);
        if (f.cost > budget)
            throw invariant_error("unrooted final cost " + std::to_string(f.cost) +
                                  " exceeds the budget (branch " + f.branch + ")");
        if (!winner || f.prize > winner->prize) winner = std::move(f);
    };

    run_phase(std::nullopt);
    for (int x : saddles) run_phase(x);
    if (!winner)
        throw invariant_error("no phase produced a candidate tree");

    rep.tree = winner->tree;
    rep.cost = winner->cost;
    rep.prize = winner->prize;
    rep.branch = winner->branch;
    rep.chosen_center = winner->center;
    rep.best_candidate_prize = winner->cand_prize;
    rep.pre_trim_cost = winner->pre_cost;
    rep.pre_trim_prize = winner->pre_prize;
    rep.trim_taken = winner->taken;
    rep.trim_note = winner->note;
    rep.dual_seed_won = winner->dual_won;
    rep.pre_trim_cost_over_budget = observed_factor;
    rep.budget_factor = Rat(rep.cost) / Rat(budget);
    if (rep.budget_factor > 1)
        throw invariant_error("unrooted final cost exceeds the budget");
    rep.guarantee = one_minus_inv_e_ub() / (5760 * Rat(std::max<Cost>(sq, 1)));
    return rep;
}

SolveReport solve(const Instance& inst) {
    switch (inst.variant) {
        case Variant::SubmodularRooted:
            return solve_drso(inst.graph, inst.oracle, inst.root, inst.budget,
                              inst.epsilon);
        case Variant::AdditiveRooted:
            return solve_drao(inst.graph, inst.oracle, inst.root, inst.budget,
                              inst.epsilon);
        case Variant::Unrooted:
            return solve_dso_unrooted(inst.graph, inst.oracle, inst.budget);
    }
    throw input_error("unknown variant");
}

}  // namespace pcot
