#pragma once

#include <optional>
#include <vector>

#include "pcot/graph.hpp"

namespace pcot {

// Result of the bottom-up split: disjoint "infeasible" subtrees, each of
// which exceeds the window m when its root is excluded while every proper
// subtree of it fits, plus the feasible remainder rooted at the original
// root (absent when the whole tree was consumed).
struct SplitResult {
    std::vector<OutTree> infeasible;
    std::optional<OutTree> residual;
};

// A subtree is feasible for window m when its cost minus its root's cost is
// at most m. Visits leaves-to-root (children in increasing id order),
// removes the first infeasible full subtree it meets, and repeats on the
// remaining tree until everything left is feasible.
SplitResult proc_split(const OutTree& t, const Digraph& g, Cost m);

struct Decomposition {
    std::vector<OutTree> pieces;  // each feasible for window m
    Cost m = 0;
    long long piece_bound = 0;  // certified bound 5 * floor(cost(t) / m)
};

// Covers t with at most 5*floor(cost(t)/m) out-subtrees, each of cost at
// most m plus its own root's cost. Pieces may share their roots but are
// otherwise disjoint. Requires 1 <= m <= cost(t).
Decomposition decompose(const OutTree& t, const Digraph& g, Cost m);

}  // namespace pcot
