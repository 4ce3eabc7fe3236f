#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "pcot/graph.hpp"
#include "pcot/rational.hpp"
#include "pcot/solver.hpp"
#include "pcot/submodular.hpp"

namespace pcot {

// Out-tree problem with costs on the arcs instead of the vertices.
struct StoInstance {
    Digraph graph;  // structure only: every node cost is zero
    std::map<std::pair<int, int>, Cost> arc_cost;  // each >= 1
    int root = 0;
    Cost budget = 0;
    PrizeOracle oracle;  // over the same vertex ids
};

StoInstance make_sto(int n, const std::vector<std::tuple<int, int, Cost>>& arcs,
                     int root, Cost budget, PrizeOracle oracle);

Cost sto_tree_cost(const OutTree& t, const StoInstance& s);

// Moves each vertex cost onto the incoming arcs: arcs into the root are
// dropped, arc (i, j) costs the old cost of j, and the budget shrinks by
// the root cost. Any out-tree keeps its prize, and its old cost equals its
// new cost plus the root cost.
StoInstance drso_to_sto(const Digraph& g, const PrizeOracle& oracle, int root,
                        Cost budget);

// Moves each arc cost onto a fresh midpoint vertex: arc e = (i, j) becomes
// i -> v_e -> j with c(v_e) = c(e); original vertices cost zero, and the
// oracle ignores midpoint vertices. Midpoint ids start at n in the sorted
// order of (i, j); costs, prizes and the budget carry over exactly.
Instance sto_to_drso(const StoInstance& s);

// The midpoint vertex id for each arc of s, in the layout of sto_to_drso.
std::map<std::pair<int, int>, int> sto_midpoint_ids(const StoInstance& s);

struct StoSolution {
    OutTree tree;  // over the arc-cost instance's own vertices
    Cost cost = 0;
    Prize prize = 0;
};

// Maps a rooted tree of the expanded instance back: midpoint leaves are
// discarded (they carry cost but no prize), every remaining midpoint v_e
// turns back into the arc e. Cost never grows and prize is unchanged.
StoSolution sto_solution_from_expanded(const StoInstance& s, const OutTree& t);

struct StoSolveReport {
    StoSolution solution;
    SolveReport expanded;  // the run on the vertex-cost expansion
};

// Expand, run the rooted submodular pipeline, map back. The mapped cost is
// certified to stay within (1+eps) times the budget.
StoSolveReport solve_sto(const StoInstance& s, const Rat& eps);

// Budget-constrained connected set cover: pick a connected (in the
// set-adjacency graph) family of sets within budget, maximizing the weight
// of the covered elements.
struct MwbcscInstance {
    std::vector<Prize> element_weights;
    std::vector<std::vector<int>> sets;       // set -> sorted element ids
    std::vector<Cost> set_costs;
    std::vector<std::pair<int, int>> edges;   // undirected set adjacency
    Cost budget = 0;
    int max_frequency = 0;  // most sets any one element appears in
};

MwbcscInstance make_mwbcsc(std::vector<Prize> element_weights,
                           std::vector<std::vector<int>> sets,
                           std::vector<Cost> set_costs,
                           std::vector<std::pair<int, int>> edges, Cost budget);

enum class MwbcscStrategy {
    Coverage,  // coverage oracle over the elements (default)
    Additive,  // per-set summed weights; optimum inflated up to max_frequency
};

// Unrooted instance over the set-adjacency graph (each undirected edge
// becomes two antiparallel arcs) whose optimum equals the cover optimum
// under the coverage strategy. Every element must be covered by some set.
Instance mwbcsc_to_dso(const MwbcscInstance& m,
                       MwbcscStrategy strategy = MwbcscStrategy::Coverage);

// Geometric sensor cover: sensors cover targets within the sensing range
// and talk to sensors within the communication range; pick at most `budget`
// sensors forming a connected cluster, maximizing covered target weight.
struct BscpInstance {
    std::vector<std::pair<Rat, Rat>> sensors;
    std::vector<std::pair<Rat, Rat>> targets;
    std::vector<Prize> target_weights;
    Rat sensing_range;
    Rat communication_range;
    Cost budget = 0;  // number of sensors
};

// Exact rational geometry with closed comparisons: a target at distance
// exactly the sensing range is covered; sensors at distance exactly the
// communication range are adjacent. Set costs are all one.
MwbcscInstance bscp_build(const BscpInstance& b);

// Each undirected edge becomes two antiparallel arcs; out-trees of the lift
// match trees of the original on vertex set and cost.
Digraph undirected_lift(const std::vector<Cost>& costs,
                        const std::vector<std::pair<int, int>>& edges,
                        bool allow_zero_costs = false);

}  // namespace pcot
