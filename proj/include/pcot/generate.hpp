#pragma once

#include <optional>
#include <random>

#include "pcot/io.hpp"

namespace pcot {

// Deterministic, platform-stable randomness: raw mt19937_64 output reduced
// by modulo. The standard pins the engine's output sequence exactly, while
// the standard distributions do not, so distributions are avoided.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long long seed) : eng(seed) {}
    unsigned long long raw() { return eng(); }
    long long below(long long n) {
        if (n <= 0) throw input_error("random range must be positive");
        return static_cast<long long>(raw() % static_cast<unsigned long long>(n));
    }
    long long range(long long lo, long long hi) {  // inclusive
        return lo + below(hi - lo + 1);
    }
};

struct RandomDigraphParams {
    int n = 8;
    int arc_percent = 30;  // chance each ordered pair carries an arc
    Cost max_cost = 3;
    Prize max_weight = 10;
    Cost budget = 6;
    std::string variant = "drso";  // drso | drao | dso
    std::optional<Rat> epsilon;
};

struct RandomCoverageParams {
    int n = 8;
    int arc_percent = 30;
    Cost max_cost = 3;
    int elements = 10;
    int max_set_size = 4;
    Prize max_weight = 10;
    Cost budget = 6;
    std::string variant = "drso";  // drso | dso
    std::optional<Rat> epsilon;
};

struct BscpParams {
    int sensors = 8;
    int targets = 12;
    long long grid = 10;  // coordinates drawn from [0, grid)^2
    Rat sensing_range = Rat(2);
    Rat communication_range = Rat(3);
    Prize max_weight = 5;
    Cost budget = 4;
};

// Each generator is deterministic under its seed, records the seed and kind
// in the file's generator block, and returns content that has been pushed
// through serialize + parse so the emitted file is known to validate.
// Rooted variants force the cost of the root (vertex 0) to 1 so the root is
// always affordable.
LoadedInstance gen_random_digraph(const RandomDigraphParams& p,
                                  unsigned long long seed);
LoadedInstance gen_random_coverage(const RandomCoverageParams& p,
                                   unsigned long long seed);
LoadedInstance gen_bscp(const BscpParams& p, unsigned long long seed);

}  // namespace pcot
