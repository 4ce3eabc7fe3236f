#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcot/graph.hpp"
#include "pcot/rational.hpp"
#include "pcot/submodular.hpp"
#include "pcot/trim.hpp"

namespace pcot {

// Problem variants served by the pipeline. Rooted variants may exceed the
// budget by a factor of at most 1+eps; the unrooted variant never exceeds it.
enum class Variant { SubmodularRooted, AdditiveRooted, Unrooted };

std::string variant_name(Variant v);

struct Instance {
    Digraph graph;
    PrizeOracle oracle;
    Variant variant = Variant::SubmodularRooted;
    int root = -1;        // ignored for the unrooted variant
    Cost budget = 0;
    Rat epsilon = Rat(1, 2);  // rooted variants only
};

// One ball-restricted candidate: a greedy-chosen seed set inside the
// shortest-path ball of u, connected through u's predecessor tree.
struct CandidateTree {
    int center = -1;          // u, in the solver's working index space
    OutTree tree;             // rooted at u
    std::vector<int> seeds;   // greedy picks, sorted
    Cost cost = 0;
    Prize prize = 0;
    bool forced_extra = false;  // a mandatory second seed was injected
};

// Greedy candidate rooted at u: the candidate pool is the ball
// {v : dist(u, v) <= c(u) + ball_radius}, the pick cap is k (seeds
// included), and force (if set and inside the ball) joins u as a second
// mandatory seed. The tree is the union of predecessor paths; its cost
// above u is certified to stay within ball_radius * (k - 1).
CandidateTree candidate_tree(const Digraph& g, const PrizeOracle& oracle,
                             int u, Cost ball_radius, int k,
                             std::optional<int> force = std::nullopt);

struct SolveReport {
    Variant variant = Variant::SubmodularRooted;
    int root = -1;            // original ids; -1 for unrooted
    Cost budget = 0;
    Rat epsilon;              // 0 for unrooted

    OutTree tree;             // original ids
    Cost cost = 0;
    Prize prize = 0;
    Rat budget_factor;        // cost / B, certified <= 1+eps (<= 1 unrooted)
    Rat guarantee;            // certified prize >= guarantee * optimum

    // pipeline trace
    int chosen_center = -1;         // original id of the winning candidate root
    Prize best_candidate_prize = 0; // before path attachment and trimming
    Cost pre_trim_cost = 0;
    Prize pre_trim_prize = 0;
    TrimCase trim_taken = TrimCase::Skipped;
    std::string trim_note;
    Rat pre_trim_cost_over_budget;  // observed pre-trim cost / B

    // diagnostics
    int candidate_count = 0;
    int pruned_vertices = 0;        // dropped as unreachable or over-budget
    std::string branch;             // "rooted", "flat" or "saddled(x)"
    int saddle_candidates = 0;      // unrooted: vertices tried as the saddle
    int dual_seed_runs = 0;         // unrooted: forced-seed reruns
    bool dual_seed_won = false;     // a forced-seed rerun produced the winner
};

// Rooted pipeline for monotone submodular prizes: prune to the
// budget-appropriate subgraph, build one ball-restricted greedy candidate
// per vertex, attach the best to the root by a shortest path, and trim if
// the result exceeds (1+eps)B. Certified: cost <= (1+eps)B and prize >=
// eps^3 (1-1/e) / (1280 floor(sqrt(B))) times the optimum prize.
SolveReport solve_drso(const Digraph& g, const PrizeOracle& oracle, int root,
                       Cost budget, const Rat& eps);

// Same pipeline for additive prizes with the additive trimmer. Certified:
// cost <= (1+eps)B and prize >= eps^2 (1-1/e) / (80 floor(sqrt(B))) times
// the optimum prize.
SolveReport solve_drao(const Digraph& g, const PrizeOracle& oracle, int root,
                       Cost budget, const Rat& eps);

// Unrooted pipeline without budget violation: a flat phase over vertices
// costing at most B/2, plus one phase per possible expensive vertex x
// (cost in (B/2, B]) with x made free and the budget reduced. Certified:
// cost <= B and prize >= (1-1/e) / (5760 floor(sqrt(B))) times the optimum.
SolveReport solve_dso_unrooted(const Digraph& g, const PrizeOracle& oracle,
                               Cost budget);

SolveReport solve(const Instance& inst);

}  // namespace pcot
