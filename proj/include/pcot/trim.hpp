#pragma once

#include <string>

#include "pcot/graph.hpp"
#include "pcot/rational.hpp"
#include "pcot/submodular.hpp"

namespace pcot {

enum class TrimCase {
    Skipped,        // solver never invoked trimming
    AlreadyCheap,   // within budget window after the removal phase
    RichCase1,      // dense subtree, light children: keep it whole
    RichCase2,      // dense subtree, heavy children: grouped and best group kept
    NoRichHeavy,    // low-ratio subtree carrying enough prize: grouped at its root
    NoRichLight,    // low-ratio subtree discarded, remainder padded from its children
    AddWindow,      // additive: shrink loop landed inside the window
    AddBundle,      // additive: bundle of rich child subtrees under one node
    AddHeavyTop,    // additive: expensive root, cheap children: keep whole tree
    AddSideResidual,// additive: prize concentrated above the expensive branch
    AddHeavySide,   // additive: prize concentrated in the expensive branch
};

std::string trim_case_name(TrimCase c);

struct TrimReport {
    OutTree tree;
    TrimCase taken = TrimCase::Skipped;
    Rat input_ratio;     // prize/cost ratio of the input tree
    Rat output_ratio;
    Rat required_ratio;  // certified lower bound for this procedure
    Rat epsilon;         // 0 when the procedure takes no epsilon
    Rat h;               // 0 when the procedure takes no h
    Cost output_cost = 0;
    Prize output_prize = 0;
    int group_count = 0;  // groups formed when a grouping case ran
    std::string note;     // diagnostics
};

// Budget-window trimming for a rooted tree with a submodular prize.
// Preconditions: g is B-appropriate for t's root, eps in (0,1], h > 1,
// eps*B/2 <= cost(t) <= h*B. Output: tree rooted at t's root with
// eps*B/2 <= cost <= (1+eps)*B and prize/cost >= eps^2/(32h) times the
// input ratio. Every postcondition is re-checked before returning.
TrimReport trim_rooted_submodular(const Digraph& g, const OutTree& t,
                                  const PrizeOracle& oracle, Cost B,
                                  const Rat& eps, const Rat& h);

// Budget-window trimming with no root and no budget violation.
// Preconditions: every vertex cost <= B/2, B/2 <= cost(t) <= h*B, h > 1.
// Output: tree (any root) with B/4 <= cost <= B and prize/cost at least
// 1/(32h+8) times the input ratio.
TrimReport trim_unrooted_submodular(const Digraph& g, const OutTree& t,
                                    const PrizeOracle& oracle, Cost B,
                                    const Rat& h);

// Sharper trimming for additive prizes. Preconditions: g B-appropriate for
// t's root, eps in (0,1], cost(t) >= eps*B/2, additive oracle. Output:
// tree rooted at t's root with eps*B/2 <= cost <= (1+eps)*B and prize/cost
// at least eps/4 times the input ratio.
TrimReport trim_rooted_additive(const Digraph& g, const OutTree& t,
                                const PrizeOracle& oracle, Cost B,
                                const Rat& eps);

}  // namespace pcot
