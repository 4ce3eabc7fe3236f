#pragma once

#include <optional>
#include <vector>

#include "pcot/errors.hpp"
#include "pcot/graph.hpp"

namespace pcot {

using Prize = long long;

// Monotone submodular prize function over ground set 0..n-1, either additive
// (per-node weights) or coverage (each node covers a set of weighted
// elements; a vertex set scores the total weight of the union it covers).
// Weights are non-negative integers, so every evaluation is exact.
struct PrizeOracle {
    enum class Kind { Additive, Coverage };
    Kind kind = Kind::Additive;
    int ground_size = 0;
    std::vector<Prize> weights;              // additive: per node
    std::vector<std::vector<int>> node_sets; // coverage: node -> sorted element ids
    std::vector<Prize> element_weights;      // coverage: per element

    Prize eval(const std::vector<int>& vertex_set) const;
    Prize marginal_gain(const std::vector<int>& base, int x) const;

    // Oracle over re-indexed ids: new id i corresponds to old id to_old[i].
    PrizeOracle remapped(const std::vector<int>& to_old) const;
};

PrizeOracle make_additive(std::vector<Prize> weights);
PrizeOracle make_coverage(int ground_size,
                          std::vector<std::vector<int>> node_sets,
                          std::vector<Prize> element_weights);

Prize tree_prize(const OutTree& t, const PrizeOracle& oracle);

// Cardinality-constrained submodular maximization with a mandatory seed.
struct RsmInstance {
    const PrizeOracle* oracle = nullptr;
    std::vector<int> candidates;  // sorted, must contain seed
    int seed = -1;
    int k = 1;  // max size of the returned set, seed included
};

struct GreedyResult {
    std::vector<int> chosen;          // sorted
    std::vector<Prize> gain_trace;    // marginal gain of each greedy step
    Prize value = 0;
};

// Seeded greedy: start from {seed} (plus an optional second mandatory seed),
// repeatedly add the candidate with the largest marginal gain, smallest id
// on ties, until k elements are chosen, candidates run out, or the best
// gain drops to zero. For a submodular oracle the gain trace never
// increases; that is checked on every step.
GreedyResult greedy_rsm(const RsmInstance& inst,
                        std::optional<int> also_seed = std::nullopt);

}  // namespace pcot
