#pragma once

#include <vector>

#include "pcot/graph.hpp"
#include "pcot/submodular.hpp"

namespace pcot {

// Brute-force search limits. Enumeration refuses to start above max_nodes
// and aborts loudly once max_states vertex sets have been enumerated.
struct ExactCaps {
    int max_nodes = 15;
    long long max_states = 4000000;
};

struct ExactResult {
    Prize optimum = 0;
    std::vector<int> witness_set;  // sorted, prize equals the optimum
    OutTree witness;               // spans the witness set within budget
    long long subsets_enumerated = 0;
    long long distinct_sets = 0;
};

// Optimum prize over vertex sets that contain root, cost at most B, and are
// closed under reachability from root; every such set carries a spanning
// out-tree from root. Enumerates by incremental frontier expansion with
// canonical exclusion sets, pruning branches that exceed the budget.
ExactResult exact_rooted(const Digraph& g, const PrizeOracle& oracle, int root,
                         Cost budget, const ExactCaps& caps = {});

// Same optimum from an independent, dumber strategy: filter every subset of
// the vertices for root membership, budget, and connectivity from root.
ExactResult exact_rooted_powerset(const Digraph& g, const PrizeOracle& oracle,
                                  int root, Cost budget,
                                  const ExactCaps& caps = {});

// Unrooted optimum: maximum of the rooted optimum over every affordable
// root, with vertex sets deduplicated across roots in the statistics.
ExactResult exact_unrooted(const Digraph& g, const PrizeOracle& oracle,
                           Cost budget, const ExactCaps& caps = {});

ExactResult exact_unrooted_powerset(const Digraph& g, const PrizeOracle& oracle,
                                    Cost budget, const ExactCaps& caps = {});

}  // namespace pcot
