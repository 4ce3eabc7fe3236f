#pragma once

#include <optional>
#include <string>

#include "pcot/reductions.hpp"
#include "pcot/solver.hpp"

namespace pcot {

// A parsed instance file. The variant tag decides which member is active:
// drso / drao / dso use `instance`, sto uses `sto`, mwbcsc uses `mwbcsc`.
struct LoadedInstance {
    std::string variant_tag;  // drso | drao | dso | sto | mwbcsc
    Instance instance;
    std::optional<StoInstance> sto;
    std::optional<MwbcscInstance> mwbcsc;
    std::optional<Rat> epsilon;               // from the file, if present
    std::optional<unsigned long long> seed;   // echoed generator seed
    std::string generator_kind;               // echoed generator kind
};

// Strict schema-1 JSON: unknown fields are rejected, node ids must equal
// their positions, and every cross-reference is validated on load.
LoadedInstance parse_instance_text(const std::string& text);
LoadedInstance load_instance(const std::string& path);

// Canonical serialization; load(serialize(load(x))) equals load(x).
std::string serialize_instance(const LoadedInstance& li);
void save_instance(const LoadedInstance& li, const std::string& path);

// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
std::string instance_digest(const LoadedInstance& li);

// One structured record per line: fixed key order, space-separated
// key=value pairs, no escaping (values never contain spaces).
struct RunRecord {
    std::vector<std::pair<std::string, std::string>> fields;
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, long long value);
    void add(const std::string& key, const Rat& value);
    std::string line() const;
};

RunRecord record_from_report(const LoadedInstance& li, const SolveReport& rep,
                             long long wall_ms);

}  // namespace pcot
