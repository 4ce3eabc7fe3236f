#include "pcot/generate.hpp"

namespace pcot {

namespace {

std::vector<std::pair<int, int>> random_arcs(Rng& rng, int n, int arc_percent) {
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (rng.below(100) < arc_percent) arcs.emplace_back(u, v);
        }
    return arcs;
}

std::vector<Cost> random_costs(Rng& rng, int n, Cost max_cost, bool root_free) {
    std::vector<Cost> costs(n);
    for (int v = 0; v < n; ++v) costs[v] = rng.range(1, max_cost);
    if (root_free && n > 0) costs[0] = 1;
    return costs;
}

LoadedInstance revalidate(LoadedInstance li) {
    // round-trip through the serializer so the emitted bytes are exactly
    // what a strict load accepts
    return parse_instance_text(serialize_instance(li));
}

void check_common(int n, Cost budget, Cost max_cost, Prize max_weight,
                  int arc_percent) {
    if (n < 1) throw input_error("node count must be at least 1");
    if (budget < 1) throw input_error("budget must be at least 1");
    if (max_cost < 1) throw input_error("max cost must be at least 1");
    if (max_weight < 0) throw input_error("max weight must be non-negative");
    if (arc_percent < 0 || arc_percent > 100)
        throw input_error("arc percentage must lie in [0, 100]");
}

}  // namespace

LoadedInstance gen_random_digraph(const RandomDigraphParams& p,
                                  unsigned long long seed) {
    check_common(p.n, p.budget, p.max_cost, p.max_weight, p.arc_percent);
    if (p.variant != "drso" && p.variant != "drao" && p.variant != "dso")
        throw input_error("random-digraph generates drso, drao or dso");
    Rng rng(seed);
    const bool rooted = p.variant != "dso";
    LoadedInstance li;
    li.variant_tag = p.variant;
    li.generator_kind = "random-digraph";
    li.seed = seed;
    li.epsilon = rooted ? p.epsilon : std::nullopt;

    std::vector<Cost> costs = random_costs(rng, p.n, p.max_cost, rooted);
    std::vector<std::pair<int, int>> arcs = random_arcs(rng, p.n, p.arc_percent);
    std::vector<Prize> weights(p.n);
    for (int v = 0; v < p.n; ++v) weights[v] = rng.below(p.max_weight + 1);

    Instance inst;
    inst.graph = make_digraph(costs, arcs, false);
    inst.oracle = make_additive(std::move(weights));
    inst.budget = p.budget;
    inst.root = rooted ? 0 : -1;
    inst.variant = p.variant == "drso"   ? Variant::SubmodularRooted
                   : p.variant == "drao" ? Variant::AdditiveRooted
                                         : Variant::Unrooted;
    if (li.epsilon) inst.epsilon = *li.epsilon;
    li.instance = std::move(inst);
    return revalidate(std::move(li));
}

LoadedInstance gen_random_coverage(const RandomCoverageParams& p,
                                   unsigned long long seed) {
    check_common(p.n, p.budget, p.max_cost, p.max_weight, p.arc_percent);
    if (p.elements < 1) throw input_error("element count must be at least 1");
    if (p.max_set_size < 0) throw input_error("max set size must be non-negative");
    if (p.variant != "drso" && p.variant != "dso")
        throw input_error("random-coverage generates drso or dso");
    Rng rng(seed);
    const bool rooted = p.variant == "drso";
    LoadedInstance li;
    li.variant_tag = p.variant;
    li.generator_kind = "random-coverage";
    li.seed = seed;
    li.epsilon = rooted ? p.epsilon : std::nullopt;

    std::vector<Cost> costs = random_costs(rng, p.n, p.max_cost, rooted);
    std::vector<std::pair<int, int>> arcs = random_arcs(rng, p.n, p.arc_percent);
    std::vector<std::vector<int>> sets(p.n);
    for (int v = 0; v < p.n; ++v) {
        long long size = rng.below(p.max_set_size + 1);
        for (long long i = 0; i < size; ++i)
            sets[v].push_back(static_cast<int>(rng.below(p.elements)));
    }
    std::vector<Prize> ew(p.elements);
    for (int x = 0; x < p.elements; ++x) ew[x] = rng.below(p.max_weight + 1);

    Instance inst;
    inst.graph = make_digraph(costs, arcs, false);
    inst.oracle = make_coverage(p.n, std::move(sets), std::move(ew));
    inst.budget = p.budget;
    inst.root = rooted ? 0 : -1;
    inst.variant = rooted ? Variant::SubmodularRooted : Variant::Unrooted;
    if (li.epsilon) inst.epsilon = *li.epsilon;
    li.instance = std::move(inst);
    return revalidate(std::move(li));
}

LoadedInstance gen_bscp(const BscpParams& p, unsigned long long seed) {
    if (p.sensors < 1) throw input_error("sensor count must be at least 1");
    if (p.targets < 1) throw input_error("target count must be at least 1");
    if (p.grid < 1) throw input_error("grid size must be at least 1");
    if (p.budget < 1) throw input_error("budget must be at least 1");
    if (p.max_weight < 1) throw input_error("max weight must be at least 1");
    if (p.sensing_range <= 0 || p.communication_range <= 0)
        throw input_error("both ranges must be positive");
    Rng rng(seed);
    BscpInstance b;
    b.sensing_range = p.sensing_range;
    b.communication_range = p.communication_range;
    b.budget = p.budget;
    for (int i = 0; i < p.sensors; ++i) {
        Rat x(rng.below(p.grid)), y(rng.below(p.grid));
        b.sensors.emplace_back(x, y);
    }
    for (int t = 0; t < p.targets; ++t) {
        Rat x(rng.below(p.grid)), y(rng.below(p.grid));
        b.targets.emplace_back(x, y);
        b.target_weights.push_back(rng.range(1, p.max_weight));
    }
    LoadedInstance li;
    li.variant_tag = "mwbcsc";
    li.generator_kind = "bscp-geometric";
    li.seed = seed;
    li.mwbcsc = bscp_build(b);
    return revalidate(std::move(li));
}

}  // namespace pcot
