#include "pcot/submodular.hpp"

#include <algorithm>

namespace pcot {

static void check_vertex_ids(const std::vector<int>& vs, int n) {
    for (int v : vs)
        if (v < 0 || v >= n)
            throw input_error("vertex id " + std::to_string(v) +
                              " outside oracle ground set of size " + std::to_string(n));
}

Prize PrizeOracle::eval(const std::vector<int>& vertex_set) const {
    check_vertex_ids(vertex_set, ground_size);
    if (kind == Kind::Additive) {
        Prize p = 0;
        std::vector<char> seen(ground_size, 0);
        for (int v : vertex_set) {
            if (seen[v]) continue;
            seen[v] = 1;
            p += weights[v];
        }
        return p;
    }
    std::vector<char> covered(element_weights.size(), 0);
    Prize p = 0;
    for (int v : vertex_set)
        for (int e : node_sets[v])
            if (!covered[e]) {
                covered[e] = 1;
                p += element_weights[e];
            }
    return p;
}

Prize PrizeOracle::marginal_gain(const std::vector<int>& base, int x) const {
    check_vertex_ids(base, ground_size);
    check_vertex_ids({x}, ground_size);
    if (std::find(base.begin(), base.end(), x) != base.end())
        throw input_error("marginal gain of element " + std::to_string(x) +
                          " already in the base set");
    std::vector<int> ext = base;
    ext.push_back(x);
    return eval(ext) - eval(base);
}

PrizeOracle PrizeOracle::remapped(const std::vector<int>& to_old) const {
    check_vertex_ids(to_old, ground_size);
    PrizeOracle o;
    o.kind = kind;
    o.ground_size = static_cast<int>(to_old.size());
    if (kind == Kind::Additive) {
        o.weights.reserve(to_old.size());
        for (int old : to_old) o.weights.push_back(weights[old]);
    } else {
        o.node_sets.reserve(to_old.size());
        for (int old : to_old) o.node_sets.push_back(node_sets[old]);
        o.element_weights = element_weights;
    }
    return o;
}

PrizeOracle make_additive(std::vector<Prize> weights) {
    for (size_t v = 0; v < weights.size(); ++v)
        if (weights[v] < 0)
            throw input_error("negative prize weight at node " + std::to_string(v));
    PrizeOracle o;
    o.kind = PrizeOracle::Kind::Additive;
    o.ground_size = static_cast<int>(weights.size());
    o.weights = std::move(weights);
    return o;
}

PrizeOracle make_coverage(int ground_size,
                          std::vector<std::vector<int>> node_sets,
                          std::vector<Prize> element_weights) {
    if (static_cast<int>(node_sets.size()) != ground_size)
        throw input_error("coverage oracle needs one element set per node");
    const int ne = static_cast<int>(element_weights.size());
    for (int e = 0; e < ne; ++e)
        if (element_weights[e] < 0)
            throw input_error("negative weight for element " + std::to_string(e));
    for (auto& s : node_sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (int e : s)
            if (e < 0 || e >= ne)
                throw input_error("coverage set references unknown element " +
                                  std::to_string(e));
    }
    PrizeOracle o;
    o.kind = PrizeOracle::Kind::Coverage;
    o.ground_size = ground_size;
    o.node_sets = std::move(node_sets);
    o.element_weights = std::move(element_weights);
    return o;
}

Prize tree_prize(const OutTree& t, const PrizeOracle& oracle) {
    return oracle.eval(t.nodes());
}

GreedyResult greedy_rsm(const RsmInstance& inst, std::optional<int> also_seed) {
    if (inst.oracle == nullptr) throw input_error("greedy called without an oracle");
    if (inst.k < 1) throw input_error("greedy budget k must be >= 1");
    if (inst.candidates.empty()) throw input_error("greedy candidate set is empty");
    auto has = [&](int v) {
        return std::binary_search(inst.candidates.begin(), inst.candidates.end(), v);
    };
    if (!has(inst.seed))
        throw input_error("greedy seed " + std::to_string(inst.seed) +
                          " not among the candidates");
    GreedyResult res;
    std::vector<int> chosen{inst.seed};
    if (also_seed && *also_seed != inst.seed) {
        if (!has(*also_seed))
            throw input_error("mandatory element " + std::to_string(*also_seed) +
                              " not among the candidates");
        if (static_cast<int>(chosen.size()) < inst.k) chosen.push_back(*also_seed);
    }
    Prize cur = inst.oracle->eval(chosen);
    Prize prev_gain = -1;
    while (static_cast<int>(chosen.size()) < inst.k) {
        int best = -1;
        Prize best_gain = -1;
        for (int x : inst.candidates) {
            if (std::find(chosen.begin(), chosen.end(), x) != chosen.end()) continue;
            Prize gain = inst.oracle->marginal_gain(chosen, x);
            if (gain > best_gain) {
                best_gain = gain;
                best = x;
            }
        }
        if (best < 0 || best_gain <= 0) break;
        if (prev_gain >= 0 && best_gain > prev_gain)
            throw invariant_error("greedy gain increased from " +
                                  std::to_string(prev_gain) + " to " +
                                  std::to_string(best_gain) +
                                  "; oracle is not submodular");
        prev_gain = best_gain;
        chosen.push_back(best);
        cur += best_gain;
        res.gain_trace.push_back(best_gain);
    }
    std::sort(chosen.begin(), chosen.end());
    res.chosen = std::move(chosen);
    res.value = cur;
    return res;
}

}  // namespace pcot
