#pragma once

#include <stdexcept>
#include <string>

namespace pcot {

// Bad caller-supplied data: malformed graphs, out-of-range ids, invalid
// parameters, schema violations.
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Structurally valid input that admits no solution (root too expensive,
// every vertex over budget, ...).
struct infeasible_error : std::runtime_error {
    explicit infeasible_error(const std::string& msg) : std::runtime_error(msg) {}
};

// No path exists where one is required.
struct no_path_error : std::runtime_error {
    explicit no_path_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact search refused because the instance exceeds the configured cap.
struct size_cap_error : std::runtime_error {
    explicit size_cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A self-certification check failed: an internal procedure produced output
// violating its own postcondition. Always a bug (or a genuine discrepancy
// with the analysis); never silently degraded.
struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace pcot
