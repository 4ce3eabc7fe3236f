#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "pcot/exact.hpp"
#include "pcot/generate.hpp"
#include "pcot/solver.hpp"

using namespace pcot;

namespace {

struct Rig {
    Digraph g;
    PrizeOracle oracle;
};

Digraph random_digraph(Rng& rng, int n, Cost max_cost, int arc_pct) {
    std::vector<Cost> costs(n);
    for (auto& c : costs) c = rng.range(1, max_cost);
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && rng.below(100) < static_cast<long long>(arc_pct))
                arcs.push_back({u, v});
    return make_digraph(costs, arcs);
}

PrizeOracle random_prizes(Rng& rng, int n) {
    if (rng.below(3) == 0) {
        const int elements = 1 + static_cast<int>(rng.below(7));
        std::vector<std::vector<int>> sets(n);
        for (int v = 0; v < n; ++v) {
            long long sz = rng.below(4);
            for (long long i = 0; i < sz; ++i)
                sets[v].push_back(static_cast<int>(rng.below(elements)));
        }
        std::vector<Prize> ew(elements);
        for (auto& w : ew) w = 1 + rng.below(8);
        return make_coverage(n, std::move(sets), std::move(ew));
    }
    std::vector<Prize> w(n);
    for (auto& x : w) x = rng.below(9);
    return make_additive(std::move(w));
}

PrizeOracle random_additive(Rng& rng, int n) {
    std::vector<Prize> w(n);
    for (auto& x : w) x = rng.below(9);
    return make_additive(std::move(w));
}

// integer floor of (1+eps) * B for the eps values used in these tests
Cost stretched_budget(Cost B, const Rat& eps) {
    if (eps == Rat(1)) return 2 * B;
    if (eps == Rat(1, 2)) return B + B / 2;
    if (eps == Rat(1, 4)) return B + B / 4;
    REQUIRE(false);
    return B;
}

void expect_same_report(const SolveReport& a, const SolveReport& b) {
    CHECK(a.tree.root == b.tree.root);
    CHECK(a.tree.parent == b.tree.parent);
    CHECK(a.cost == b.cost);
    CHECK(a.prize == b.prize);
    CHECK(a.chosen_center == b.chosen_center);
    CHECK(a.best_candidate_prize == b.best_candidate_prize);
    CHECK(a.pre_trim_cost == b.pre_trim_cost);
    CHECK(a.branch == b.branch);
    CHECK(a.trim_taken == b.trim_taken);
    CHECK(a.candidate_count == b.candidate_count);
}

}  // namespace

TEST_CASE("the solver rejects out-of-contract instances") {
    Digraph g = make_digraph({1, 1}, {{0, 1}});
    PrizeOracle o = make_additive({1, 2});
    CHECK_THROWS_AS(solve_drso(g, o, 0, 2, Rat(0)), input_error);
    CHECK_THROWS_AS(solve_drso(g, o, 0, 2, Rat(2)), input_error);
    CHECK_THROWS_AS(solve_drso(g, o, -1, 2, Rat(1)), input_error);
    CHECK_THROWS_AS(solve_drso(g, o, 2, 2, Rat(1)), input_error);
    CHECK_THROWS_AS(solve_drso(g, o, 0, 0, Rat(1)), input_error);
    PrizeOracle wide = make_additive({1, 2, 3});
    CHECK_THROWS_AS(solve_drso(g, wide, 0, 2, Rat(1)), input_error);
    PrizeOracle cov = make_coverage(2, {{0}, {0}}, {5});
    CHECK_THROWS_AS(solve_drao(g, cov, 0, 2, Rat(1)), input_error);
    // root more expensive than the budget: nothing is feasible
    Digraph pricey = make_digraph({5, 1}, {{0, 1}});
    CHECK_THROWS_AS(solve_drso(pricey, o, 0, 2, Rat(1)), infeasible_error);
    // unrooted with every vertex above the budget
    Digraph all_pricey = make_digraph({5, 7}, {{0, 1}});
    CHECK_THROWS_AS(solve_dso_unrooted(all_pricey, o, 2), infeasible_error);
}

TEST_CASE("a single affordable vertex solves to itself") {
    Digraph g = make_digraph({3}, {});
    PrizeOracle o = make_additive({11});
    SolveReport rep = solve_drso(g, o, 0, 5, Rat(1));
    CHECK(rep.tree.nodes() == std::vector<int>{0});
    CHECK(rep.cost == 3);
    CHECK(rep.prize == 11);
    CHECK(rep.trim_taken == TrimCase::Skipped);
    CHECK(rep.budget_factor == Rat(3, 5));
    CHECK(rep.candidate_count == 1);
    CHECK(rep.pruned_vertices == 0);
}

TEST_CASE("unreachable prize is pruned away, not chased") {
    // vertex 1 is unreachable from the root and carries a huge prize
    Digraph g = make_digraph({1, 1}, {{1, 0}});
    PrizeOracle o = make_additive({1, 100});
    SolveReport rep = solve_drso(g, o, 0, 3, Rat(1));
    CHECK(rep.tree.nodes() == std::vector<int>{0});
    CHECK(rep.prize == 1);
    CHECK(rep.pruned_vertices == 1);
    CHECK(rep.candidate_count == 1);
}

TEST_CASE("a star keeps the root and its best affordable leaves") {
    // root 0 (cost 1, prize 0) with six leaves of cost 1
    std::vector<Cost> costs(7, 1);
    std::vector<Prize> w = {0, 5, 9, 7, 3, 1, 2};
    std::vector<std::pair<int, int>> arcs;
    for (int v = 1; v < 7; ++v) arcs.push_back({0, v});
    Digraph g = make_digraph(costs, arcs);
    PrizeOracle o = make_additive(w);
    // budget 4: the greedy cap is 3 picks, so the center candidate holds
    // the root and the two heaviest leaves
    SolveReport rep = solve_drso(g, o, 0, 4, Rat(1));
    CHECK(rep.chosen_center == 0);
    CHECK(rep.tree.nodes() == std::vector<int>{0, 2, 3});
    CHECK(rep.cost == 3);
    CHECK(rep.prize == 16);
    CHECK(rep.trim_taken == TrimCase::Skipped);
    CHECK(rep.pre_trim_cost_over_budget == Rat(3, 4));
    CHECK(rep.candidate_count == 7);
}

TEST_CASE("candidate trees respect the ball, the cap and the forced seed") {
    SUBCASE("pick cap one keeps only the center") {
        Digraph g = make_digraph({1, 1}, {{0, 1}});
        PrizeOracle o = make_additive({0, 9});
        CandidateTree c = candidate_tree(g, o, 0, 5, 1);
        CHECK(c.tree.nodes() == std::vector<int>{0});
        CHECK(c.seeds == std::vector<int>{0});
        CHECK(c.cost == 1);
    }
    SUBCASE("vertices beyond the ball radius are out of reach") {
        Digraph g = make_digraph({1, 1, 5}, {{0, 1}, {1, 2}});
        PrizeOracle o = make_additive({0, 1, 100});
        // dist(0,2) = 7 > c(0) + 2, so the rich vertex is outside
        CandidateTree c = candidate_tree(g, o, 0, 2, 3);
        CHECK(!c.tree.contains(2));
        CHECK(c.tree.contains(1));
        CHECK(c.prize == 1);
    }
    SUBCASE("a forced seed joins even with zero marginal gain") {
        Digraph g = make_digraph({1, 1, 5}, {{0, 1}, {1, 2}});
        PrizeOracle o = make_additive({4, 0, 100});
        CandidateTree plain = candidate_tree(g, o, 0, 2, 3);
        CHECK(plain.tree.nodes() == std::vector<int>{0});
        CandidateTree forced = candidate_tree(g, o, 0, 2, 3, 1);
        CHECK(forced.forced_extra);
        CHECK(forced.tree.contains(1));
        // forcing a vertex outside the ball is silently ignored
        CandidateTree outside = candidate_tree(g, o, 0, 2, 3, 2);
        CHECK(!outside.forced_extra);
        CHECK(!outside.tree.contains(2));
    }
    SUBCASE("rejection of bad arguments") {
        Digraph g = make_digraph({1}, {});
        PrizeOracle o = make_additive({1});
        CHECK_THROWS_AS(candidate_tree(g, o, 1, 2, 2), input_error);
        CHECK_THROWS_AS(candidate_tree(g, o, 0, -1, 2), input_error);
        CHECK_THROWS_AS(candidate_tree(g, o, 0, 2, 0), input_error);
    }
    SUBCASE("cost above the center stays within radius times picks") {
        Rng rng(7211);
        for (int trial = 0; trial < 80; ++trial) {
            int n = 3 + static_cast<int>(rng.below(8));
            Digraph g = random_digraph(rng, n, 3, 40);
            PrizeOracle o = random_prizes(rng, n);
            Cost radius = rng.below(5);
            int k = 1 + static_cast<int>(rng.below(4));
            int u = static_cast<int>(rng.below(n));
            CandidateTree c = candidate_tree(g, o, u, radius, k);
            CHECK(c.cost - g.costs[u] <= radius * (k - 1));
            CHECK(static_cast<int>(c.seeds.size()) <= k);
            validate_tree(c.tree, g);
            CHECK(c.tree.root == u);
        }
    }
}

TEST_CASE("one expensive vertex with all the prize wins the saddled branch") {
    Digraph g = make_digraph({5, 1}, {});
    PrizeOracle o = make_additive({10, 1});
    SolveReport rep = solve_dso_unrooted(g, o, 5);
    CHECK(rep.branch == "saddled(0)");
    CHECK(rep.tree.nodes() == std::vector<int>{0});
    CHECK(rep.cost == 5);
    CHECK(rep.prize == 10);
    CHECK(rep.budget_factor == Rat(1));
    CHECK(rep.saddle_candidates == 1);
}

TEST_CASE("budget one picks the best affordable singleton") {
    Digraph g = make_digraph({1, 1, 1}, {});
    PrizeOracle o = make_additive({2, 7, 4});
    SolveReport rep = solve_dso_unrooted(g, o, 1);
    CHECK(rep.branch == "saddled(1)");
    CHECK(rep.tree.nodes() == std::vector<int>{1});
    CHECK(rep.prize == 7);
    CHECK(rep.cost == 1);
    CHECK(rep.saddle_candidates == 3);
}

TEST_CASE("cheap connected vertices are solved in the flat branch") {
    Digraph g = make_digraph({1, 1}, {{0, 1}});
    PrizeOracle o = make_additive({3, 4});
    SolveReport rep = solve_dso_unrooted(g, o, 4);
    CHECK(rep.branch == "flat");
    CHECK(rep.saddle_candidates == 0);
    CHECK(rep.tree.nodes() == std::vector<int>{0, 1});
    CHECK(rep.cost == 2);
    CHECK(rep.prize == 7);
    CHECK(rep.budget_factor == Rat(1, 2));
}

TEST_CASE("rooted runs stay within the stretched budget and certificate") {
    Rng rng(330011);
    int runs = 0;
    int trimmed = 0;
    for (int trial = 0; trial < 400 && runs < 220; ++trial) {
        int n = 2 + static_cast<int>(rng.below(9));
        Digraph g = random_digraph(rng, n, 3, 35);
        PrizeOracle o = random_prizes(rng, n);
        int root = static_cast<int>(rng.below(n));
        Cost B = 1 + rng.below(9);
        Rat eps = trial % 2 ? Rat(1) : Rat(1, 2);
        if (g.costs[root] > B) continue;
        SolveReport rep = solve_drso(g, o, root, B, eps);
        CAPTURE(trial);
        validate_tree(rep.tree, g);
        CHECK(rep.tree.root == root);
        CHECK(rep.cost == tree_cost(rep.tree, g));
        CHECK(rep.prize == tree_prize(rep.tree, o));
        CHECK(Rat(rep.cost) <= (1 + eps) * Rat(B));
        CHECK(rep.pre_trim_cost <= 2 * B);
        CHECK((rep.trim_taken == TrimCase::Skipped) ==
              (Rat(rep.pre_trim_cost) <= (1 + eps) * Rat(B)));
        ExactResult opt = exact_rooted(g, o, root, B);
        ExactResult reachable = exact_rooted(g, o, root, stretched_budget(B, eps));
        CHECK(rep.prize <= reachable.optimum);
        // the candidate phase alone must reach its share of the optimum
        const Cost sq = isqrt_floor(B);
        CHECK(Rat(rep.pre_trim_prize) * 5 * Rat(sq) >=
              one_minus_inv_e_ub() * Rat(opt.optimum));
        // the end-to-end certificate printed in the report
        CHECK(Rat(rep.prize) >= rep.guarantee * Rat(opt.optimum));
        ++runs;
        if (rep.trim_taken != TrimCase::Skipped) ++trimmed;
    }
    CHECK(runs >= 200);
    CHECK(trimmed >= 1);  // the corpus touches the trimming path at least once
}

TEST_CASE("a remote dense cluster forces the trimmer to engage") {
    // path 0..4 of unit cost leads to three cost-3 leaves of prize 50;
    // the winning candidate plus its graft path costs 14, which exceeds
    // the stretched budget 11.25, so the pipeline must trim
    std::vector<Cost> costs = {1, 1, 1, 1, 1, 3, 3, 3};
    std::vector<Prize> w = {0, 0, 0, 0, 0, 50, 50, 50};
    std::vector<std::pair<int, int>> arcs = {
        {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {4, 7}};
    Digraph g = make_digraph(costs, arcs);
    PrizeOracle o = make_additive(w);
    const Cost B = 9;
    const Rat eps(1, 4);
    SolveReport rep = solve_drso(g, o, 0, B, eps);
    CHECK(rep.chosen_center == 4);
    CHECK(rep.pre_trim_cost == 14);
    CHECK(rep.trim_taken != TrimCase::Skipped);
    CHECK(Rat(rep.cost) <= (1 + eps) * Rat(B));
    CHECK(Rat(rep.cost) >= eps * Rat(B) / 2);
    // a single leaf is the optimum; the trimmed tree must keep one
    ExactResult opt = exact_rooted(g, o, 0, B);
    CHECK(opt.optimum == 50);
    CHECK(rep.prize >= 50);
}

TEST_CASE("additive rooted runs match their stronger certificate") {
    Rng rng(881177);
    int runs = 0;
    for (int trial = 0; trial < 400 && runs < 220; ++trial) {
        int n = 2 + static_cast<int>(rng.below(9));
        Digraph g = random_digraph(rng, n, 3, 35);
        PrizeOracle o = random_additive(rng, n);
        int root = static_cast<int>(rng.below(n));
        Cost B = 1 + rng.below(9);
        Rat eps = trial % 2 ? Rat(1) : Rat(1, 2);
        if (g.costs[root] > B) continue;
        SolveReport rep = solve_drao(g, o, root, B, eps);
        CAPTURE(trial);
        validate_tree(rep.tree, g);
        CHECK(Rat(rep.cost) <= (1 + eps) * Rat(B));
        ExactResult opt = exact_rooted(g, o, root, B);
        CHECK(Rat(rep.prize) >= rep.guarantee * Rat(opt.optimum));
        ExactResult reachable = exact_rooted(g, o, root, stretched_budget(B, eps));
        CHECK(rep.prize <= reachable.optimum);
        const Cost sq = isqrt_floor(B);
        CHECK(Rat(rep.pre_trim_prize) * 5 * Rat(sq) >=
              one_minus_inv_e_ub() * Rat(opt.optimum));
        ++runs;
    }
    CHECK(runs >= 200);
}

TEST_CASE("unrooted runs never exceed the budget and keep their share") {
    Rng rng(660066);
    int runs = 0;
    int saddled = 0;
    for (int trial = 0; trial < 400 && runs < 220; ++trial) {
        int n = 2 + static_cast<int>(rng.below(9));
        Digraph g = random_digraph(rng, n, 4, 35);
        PrizeOracle o = random_prizes(rng, n);
        Cost B = 1 + rng.below(9);
        if (*std::min_element(g.costs.begin(), g.costs.end()) > B) continue;
        SolveReport rep = solve_dso_unrooted(g, o, B);
        CAPTURE(trial);
        validate_tree(rep.tree, g);
        CHECK(rep.cost == tree_cost(rep.tree, g));
        CHECK(rep.prize == tree_prize(rep.tree, o));
        CHECK(rep.cost <= B);  // never above the budget
        CHECK(rep.budget_factor <= Rat(1));
        CHECK(rep.pre_trim_cost_over_budget <= Rat(2));
        ExactResult opt = exact_unrooted(g, o, B);
        CHECK(rep.prize <= opt.optimum);
        CHECK(Rat(rep.prize) >= rep.guarantee * Rat(opt.optimum));
        ++runs;
        if (rep.branch != "flat") ++saddled;
    }
    CHECK(runs >= 200);
    CHECK(saddled >= 10);
}

TEST_CASE("the dispatcher routes every variant") {
    Digraph g = make_digraph({1, 1}, {{0, 1}});
    Instance inst;
    inst.graph = g;
    inst.oracle = make_additive({2, 3});
    inst.root = 0;
    inst.budget = 3;
    inst.epsilon = Rat(1);
    inst.variant = Variant::SubmodularRooted;
    CHECK(solve(inst).variant == Variant::SubmodularRooted);
    inst.variant = Variant::AdditiveRooted;
    CHECK(solve(inst).variant == Variant::AdditiveRooted);
    inst.variant = Variant::Unrooted;
    SolveReport un = solve(inst);
    CHECK(un.variant == Variant::Unrooted);
    CHECK(un.root == -1);
    CHECK(variant_name(Variant::SubmodularRooted) == "submodular-rooted");
    CHECK(variant_name(Variant::AdditiveRooted) == "additive-rooted");
    CHECK(variant_name(Variant::Unrooted) == "unrooted");
}

TEST_CASE("solving the same instance twice gives identical reports") {
    Rng rng(121212);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng.below(9));
        Digraph g = random_digraph(rng, n, 3, 40);
        PrizeOracle o = random_prizes(rng, n);
        Cost B = 1 + rng.below(9);
        int root = static_cast<int>(rng.below(n));
        if (g.costs[root] <= B) {
            SolveReport a = solve_drso(g, o, root, B, Rat(1, 2));
            SolveReport b = solve_drso(g, o, root, B, Rat(1, 2));
            expect_same_report(a, b);
        }
        if (*std::min_element(g.costs.begin(), g.costs.end()) <= B) {
            SolveReport a = solve_dso_unrooted(g, o, B);
            SolveReport b = solve_dso_unrooted(g, o, B);
            expect_same_report(a, b);
        }
    }
}
