#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "pcot/generate.hpp"
#include "pcot/rational.hpp"
#include "pcot/submodular.hpp"

using namespace pcot;

namespace {

std::vector<int> random_subset(Rng& rng, int n) {
    std::vector<int> s;
    for (int v = 0; v < n; ++v)
        if (rng.below(2)) s.push_back(v);
    return s;
}

PrizeOracle random_coverage_oracle(Rng& rng, int n, int elements) {
    std::vector<std::vector<int>> sets(n);
    for (int v = 0; v < n; ++v) {
        long long sz = rng.below(4);
        for (long long i = 0; i < sz; ++i)
            sets[v].push_back(static_cast<int>(rng.below(elements)));
    }
    std::vector<Prize> ew(elements);
    for (auto& w : ew) w = rng.below(8);
    return make_coverage(n, std::move(sets), std::move(ew));
}

// Direct union-of-elements evaluation, independent of the oracle code.
Prize coverage_by_hand(const PrizeOracle& o, const std::vector<int>& vs) {
    std::set<int> covered;
    for (int v : vs) covered.insert(o.node_sets[v].begin(), o.node_sets[v].end());
    Prize p = 0;
    for (int e : covered) p += o.element_weights[e];
    return p;
}

// Exhaustive optimum over subsets of `candidates` that contain `seed` and
// have at most k elements.
Prize exhaustive_rsm(const PrizeOracle& o, const std::vector<int>& candidates,
                     int seed, int k) {
    const int m = static_cast<int>(candidates.size());
    Prize best = 0;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> s;
        bool has_seed = false;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) {
                s.push_back(candidates[i]);
                has_seed |= candidates[i] == seed;
            }
        if (!has_seed || static_cast<int>(s.size()) > k) continue;
        best = std::max(best, o.eval(s));
    }
    return best;
}

}  // namespace

TEST_CASE("oracle construction validates its input") {
    CHECK_THROWS_AS(make_additive({3, -1}), input_error);
    CHECK_THROWS_AS(make_coverage(2, {{0}}, {1}), input_error);  // set count
    CHECK_THROWS_AS(make_coverage(1, {{2}}, {1, 1}), input_error);  // bad elem
    CHECK_THROWS_AS(make_coverage(1, {{0}}, {-5}), input_error);  // neg weight
}

TEST_CASE("the empty set scores zero under both oracle kinds") {
    PrizeOracle a = make_additive({4, 7});
    CHECK(a.eval({}) == 0);
    PrizeOracle c = make_coverage(2, {{0}, {0, 1}}, {3, 5});
    CHECK(c.eval({}) == 0);
}

TEST_CASE("all-zero additive weights give the zero function") {
    PrizeOracle o = make_additive({0, 0, 0});
    CHECK(o.eval({0, 1, 2}) == 0);
    CHECK(o.marginal_gain({0}, 2) == 0);
}

TEST_CASE("coverage with disjoint node sets behaves additively") {
    PrizeOracle c = make_coverage(3, {{0}, {1}, {2}}, {2, 3, 5});
    PrizeOracle a = make_additive({2, 3, 5});
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        std::vector<int> s = random_subset(rng, 3);
        CHECK(c.eval(s) == a.eval(s));
    }
}

TEST_CASE("nodes covering the same element count its weight once") {
    PrizeOracle c = make_coverage(2, {{0}, {0}}, {5});
    CHECK(c.eval({0}) == 5);
    CHECK(c.eval({1}) == 5);
    CHECK(c.eval({0, 1}) == 5);
}

TEST_CASE("coverage evaluation matches direct union arithmetic") {
    Rng rng(99);
    for (int t = 0; t < 50; ++t) {
        PrizeOracle o = random_coverage_oracle(rng, 7, 6);
        std::vector<int> s = random_subset(rng, 7);
        CHECK(o.eval(s) == coverage_by_hand(o, s));
    }
}

TEST_CASE("evaluations are monotone and have diminishing returns") {
    Rng rng(123);
    for (int t = 0; t < 40; ++t) {
        PrizeOracle o = random_coverage_oracle(rng, 6, 5);
        std::vector<int> small = random_subset(rng, 6);
        std::vector<int> big = small;
        for (int v = 0; v < 6; ++v)
            if (!std::count(big.begin(), big.end(), v) && rng.below(2))
                big.push_back(v);
        std::sort(big.begin(), big.end());
        CHECK(o.eval(small) <= o.eval(big));
        for (int x = 0; x < 6; ++x) {
            if (std::count(big.begin(), big.end(), x)) continue;
            CHECK(o.marginal_gain(small, x) >= o.marginal_gain(big, x));
        }
    }
}

TEST_CASE("marginal gain of an additive oracle ignores the base set") {
    PrizeOracle a = make_additive({2, 9, 4});
    CHECK(a.marginal_gain({}, 1) == 9);
    CHECK(a.marginal_gain({0, 2}, 1) == 9);
}

TEST_CASE("marginal gain is zero when the new node adds no new elements") {
    PrizeOracle c = make_coverage(3, {{0, 1}, {0}, {1}}, {4, 6});
    CHECK(c.marginal_gain({0}, 1) == 0);
    CHECK(c.marginal_gain({0}, 2) == 0);
    CHECK(c.marginal_gain({1}, 2) == 6);
}

TEST_CASE("marginal gain equals the two-evaluation difference") {
    Rng rng(321);
    for (int t = 0; t < 50; ++t) {
        PrizeOracle o = random_coverage_oracle(rng, 8, 7);
        std::vector<int> s = random_subset(rng, 8);
        int x = static_cast<int>(rng.below(8));
        if (std::count(s.begin(), s.end(), x)) continue;
        std::vector<int> sx = s;
        sx.push_back(x);
        std::sort(sx.begin(), sx.end());
        CHECK(o.marginal_gain(s, x) == o.eval(sx) - o.eval(s));
    }
}

TEST_CASE("re-indexed oracles score re-indexed sets identically") {
    Rng rng(777);
    for (int t = 0; t < 30; ++t) {
        PrizeOracle o = random_coverage_oracle(rng, 8, 6);
        std::vector<int> to_old = {1, 3, 4, 6};  // new id i -> old id
        PrizeOracle r = o.remapped(to_old);
        CHECK(r.ground_size == 4);
        std::vector<int> new_ids, old_ids;
        for (int i = 0; i < 4; ++i)
            if (rng.below(2)) {
                new_ids.push_back(i);
                old_ids.push_back(to_old[i]);
            }
        CHECK(r.eval(new_ids) == o.eval(old_ids));
    }
}

TEST_CASE("tree prize scores the vertex set of the tree") {
    PrizeOracle c = make_coverage(3, {{0}, {0}, {1}}, {5, 2});
    OutTree t;
    t.root = 0;
    t.parent[1] = 0;
    CHECK(tree_prize(t, c) == 5);  // both nodes cover the same element
    t.parent[2] = 0;
    CHECK(tree_prize(t, c) == 7);
}

TEST_CASE("greedy with capacity one returns just the seed") {
    PrizeOracle a = make_additive({1, 50, 50});
    RsmInstance inst;
    inst.oracle = &a;
    inst.candidates = {0, 1, 2};
    inst.seed = 0;
    inst.k = 1;
    GreedyResult r = greedy_rsm(inst);
    CHECK(r.chosen == std::vector<int>{0});
    CHECK(r.value == 1);
}

TEST_CASE("greedy adds the heaviest candidate first") {
    PrizeOracle a = make_additive({0, 5, 3});
    RsmInstance inst;
    inst.oracle = &a;
    inst.candidates = {0, 1, 2};
    inst.seed = 0;
    inst.k = 2;
    GreedyResult r = greedy_rsm(inst);
    CHECK(r.chosen == std::vector<int>{0, 1});
    CHECK(r.value == 5);
}

TEST_CASE("greedy stops early when the best gain is zero") {
    PrizeOracle c = make_coverage(3, {{0}, {0}, {0}}, {9});
    RsmInstance inst;
    inst.oracle = &c;
    inst.candidates = {0, 1, 2};
    inst.seed = 0;
    inst.k = 3;
    GreedyResult r = greedy_rsm(inst);
    CHECK(r.chosen == std::vector<int>{0});  // everything else adds nothing
    CHECK(r.value == 9);
}

TEST_CASE("a mandatory second seed is always part of the answer") {
    PrizeOracle a = make_additive({0, 9, 8, 0});
    RsmInstance inst;
    inst.oracle = &a;
    inst.candidates = {0, 1, 2, 3};
    inst.seed = 0;
    inst.k = 2;
    GreedyResult r = greedy_rsm(inst, 3);
    CHECK(r.chosen == std::vector<int>{0, 3});  // capacity exhausted by seeds
    inst.k = 3;
    r = greedy_rsm(inst, 3);
    CHECK(r.chosen == std::vector<int>{0, 1, 3});
}

TEST_CASE("greedy value stays within the classic factor of the optimum") {
    Rng rng(2024);
    const Rat factor = one_minus_inv_e_ub();
    int interesting = 0;
    for (int t = 0; t < 120; ++t) {
        PrizeOracle o = random_coverage_oracle(rng, 8, 6);
        RsmInstance inst;
        inst.oracle = &o;
        inst.candidates = {0, 1, 2, 3, 4, 5, 6, 7};
        inst.seed = static_cast<int>(rng.below(8));
        inst.k = 3;
        GreedyResult r = greedy_rsm(inst);
        Prize opt = exhaustive_rsm(o, inst.candidates, inst.seed, inst.k);
        CAPTURE(t);
        CHECK(Rat(r.value) >= factor * Rat(opt));
        CHECK(r.value <= opt);
        if (opt > 0) ++interesting;
        // gains never increase along the trace
        for (size_t i = 1; i < r.gain_trace.size(); ++i)
            CHECK(r.gain_trace[i] <= r.gain_trace[i - 1]);
    }
    CHECK(interesting >= 80);
}

TEST_CASE("greedy on an additive oracle is exactly optimal") {
    Rng rng(888);
    for (int t = 0; t < 60; ++t) {
        std::vector<Prize> w(9);
        for (auto& x : w) x = rng.below(20);
        PrizeOracle o = make_additive(w);
        RsmInstance inst;
        inst.oracle = &o;
        inst.candidates = {0, 1, 2, 3, 4, 5, 6, 7, 8};
        inst.seed = static_cast<int>(rng.below(9));
        inst.k = 1 + static_cast<int>(rng.below(4));
        GreedyResult r = greedy_rsm(inst);
        CHECK(r.value == exhaustive_rsm(o, inst.candidates, inst.seed, inst.k));
    }
}
