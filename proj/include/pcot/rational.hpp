#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pcot {

// Exact rational arithmetic for all ratio and guarantee comparisons.
// Prizes and costs themselves stay in 64-bit integers; only derived
// quantities (ratios, budget factors, certificate coefficients) need
// full rationals.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat make_rat(long long num, long long den) { return Rat(num, den); }

// Certified rational upper bound on 1 - 1/e = 0.63212055882855767840...
// Used wherever a guarantee carries a (1 - 1/e) factor: asserting with an
// upper bound of the factor asserts a *stronger* inequality, and the
// finite-iteration greedy bound 1 - (1 - 1/k)^k exceeds this value for
// every candidate-set size reachable at the scales this library targets.
inline Rat one_minus_inv_e_ub() {
    return Rat(BigInt("632120558828557679"), BigInt("1000000000000000000"));
}

inline long long isqrt_floor(long long x) {
    if (x < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

inline std::string rat_to_string(const Rat& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Parses "n" or "n/d". Returns false on malformed input or d == 0.
inline bool rat_from_string(const std::string& s, Rat& out) {
    if (s.empty()) return false;
    auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    try {
        if (slash == std::string::npos) {
            if (!is_int(s)) return false;
            out = Rat(BigInt(s));
            return true;
        }
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (!is_int(ns) || !is_int(ds)) return false;
        BigInt den(ds);
        if (den == 0) return false;
        out = Rat(BigInt(ns), den);
        return true;
    } catch (...) {
        return false;
    }
}

// Parses "n" or "n/d", throwing on malformed input.
inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (!rat_from_string(s, r))
        throw std::invalid_argument("not a rational: \"" + s + "\"");
    return r;
}

}  // namespace pcot
