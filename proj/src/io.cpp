#include "pcot/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pcot/errors.hpp"

namespace pcot {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) {
    throw input_error("instance file: " + msg);
}

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) bad("unknown field \"" + it.key() + "\" in " + where);
    }
}

long long get_int(const json& j, const std::string& name) {
    if (!j.is_number_integer()) bad("field \"" + name + "\" must be an integer");
    return j.get<long long>();
}

PrizeOracle parse_oracle(const json& j, int n) {
    if (!j.is_object()) bad("\"oracle\" must be an object");
    reject_unknown(j, {"additive", "coverage"}, "oracle");
    if (j.contains("additive") == j.contains("coverage"))
        bad("oracle needs exactly one of \"additive\" or \"coverage\"");
    if (j.contains("additive")) {
        const json& a = j.at("additive");
        reject_unknown(a, {"weights"}, "oracle.additive");
        if (!a.contains("weights") || !a.at("weights").is_array())
            bad("oracle.additive needs a \"weights\" array");
        std::vector<Prize> w;
        for (const auto& x : a.at("weights")) w.push_back(get_int(x, "weights"));
        if (static_cast<int>(w.size()) != n)
            bad("weights length does not match the node count");
        return make_additive(std::move(w));
    }
    const json& c = j.at("coverage");
    reject_unknown(c, {"elements", "node_sets"}, "oracle.coverage");
    if (!c.contains("elements") || !c.at("elements").is_array())
        bad("oracle.coverage needs an \"elements\" array");
    if (!c.contains("node_sets") || !c.at("node_sets").is_array())
        bad("oracle.coverage needs a \"node_sets\" array");
    std::vector<Prize> ew;
    int next_id = 0;
    for (const auto& e : c.at("elements")) {
        if (!e.is_object()) bad("each element must be an object");
        reject_unknown(e, {"id", "weight"}, "oracle.coverage.elements");
        if (get_int(e.at("id"), "element id") != next_id)
            bad("element ids must be 0, 1, 2, ... in order");
        ++next_id;
        ew.push_back(get_int(e.at("weight"), "element weight"));
    }
    std::vector<std::vector<int>> sets;
    for (const auto& sj : c.at("node_sets")) {
        if (!sj.is_array()) bad("each node_set must be an array");
        std::vector<int> set;
        for (const auto& x : sj)
            set.push_back(static_cast<int>(get_int(x, "node_sets entry")));
        sets.push_back(std::move(set));
    }
    if (static_cast<int>(sets.size()) != n)
        bad("node_sets length does not match the node count");
    return make_coverage(n, std::move(sets), std::move(ew));
}

}  // namespace

LoadedInstance parse_instance_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        bad(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) bad("top level must be an object");
    reject_unknown(j,
                   {"schema", "variant", "nodes", "arcs", "oracle", "root",
                    "budget", "epsilon", "generator"},
                   "the top level");
    if (!j.contains("schema") || get_int(j.at("schema"), "schema") != 1)
        bad("\"schema\" must be 1");
    if (!j.contains("variant") || !j.at("variant").is_string())
        bad("\"variant\" must be a string");
    LoadedInstance li;
    li.variant_tag = j.at("variant").get<std::string>();
    const bool is_sto = li.variant_tag == "sto";
    const bool is_mwbcsc = li.variant_tag == "mwbcsc";
    const bool is_rooted = li.variant_tag == "drso" || li.variant_tag == "drao";
    if (!is_sto && !is_mwbcsc && !is_rooted && li.variant_tag != "dso")
        bad("variant must be one of drso, drao, dso, sto, mwbcsc");

    if (!j.contains("nodes") || !j.at("nodes").is_array())
        bad("\"nodes\" must be an array");
    std::vector<Cost> costs;
    int next_id = 0;
    for (const auto& nj : j.at("nodes")) {
        if (!nj.is_object()) bad("each node must be an object");
        reject_unknown(nj, {"id", "cost"}, "nodes");
        if (get_int(nj.at("id"), "node id") != next_id)
            bad("node ids must be 0, 1, 2, ... in order");
        ++next_id;
        costs.push_back(get_int(nj.at("cost"), "node cost"));
    }
    const int n = next_id;

    if (!j.contains("arcs") || !j.at("arcs").is_array())
        bad("\"arcs\" must be an array");
    std::vector<std::pair<int, int>> arcs;
    std::vector<std::tuple<int, int, Cost>> costed_arcs;
    for (const auto& aj : j.at("arcs")) {
        if (!aj.is_array()) bad("each arc must be an array");
        if (is_sto) {
            if (aj.size() != 3) bad("sto arcs must be [tail, head, cost]");
            costed_arcs.emplace_back(
                static_cast<int>(get_int(aj.at(0), "arc tail")),
                static_cast<int>(get_int(aj.at(1), "arc head")),
                get_int(aj.at(2), "arc cost"));
        } else {
            if (aj.size() != 2) bad("arcs must be [tail, head]");
            arcs.emplace_back(static_cast<int>(get_int(aj.at(0), "arc tail")),
                              static_cast<int>(get_int(aj.at(1), "arc head")));
        }
    }

    if (!j.contains("budget")) bad("\"budget\" is required");
    Cost budget = get_int(j.at("budget"), "budget");
    if (!j.contains("oracle")) bad("\"oracle\" is required");
    PrizeOracle oracle = parse_oracle(j.at("oracle"), n);

    if (j.contains("root") != (is_rooted || is_sto))
        bad(is_rooted || is_sto ? "\"root\" is required for this variant"
                                : "\"root\" is not allowed for this variant");
    if (j.contains("epsilon")) {
        if (!(is_rooted || is_sto))
            bad("\"epsilon\" is not allowed for this variant");
        if (!j.at("epsilon").is_string())
            bad("\"epsilon\" must be a rational string like \"1/2\"");
        Rat epsv;
        if (!rat_from_string(j.at("epsilon").get<std::string>(), epsv))
            bad("\"epsilon\" is not a valid rational");
        li.epsilon = epsv;
    }
    if (j.contains("generator")) {
        const json& gj = j.at("generator");
        reject_unknown(gj, {"kind", "seed"}, "generator");
        if (gj.contains("kind")) {
            if (!gj.at("kind").is_string()) bad("generator.kind must be a string");
            li.generator_kind = gj.at("kind").get<std::string>();
        }
        if (gj.contains("seed")) {
            long long s = get_int(gj.at("seed"), "generator seed");
            if (s < 0) bad("generator seed must be non-negative");
            li.seed = static_cast<unsigned long long>(s);
        }
    }

    if (is_sto) {
        int root = static_cast<int>(get_int(j.at("root"), "root"));
        for (auto& c : costs)
            if (c != 0) bad("sto node costs must all be zero");
        li.sto = make_sto(n, costed_arcs, root, budget, oracle);
        li.instance = sto_to_drso(*li.sto);
        if (li.epsilon) li.instance.epsilon = *li.epsilon;
        return li;
    }
    if (is_mwbcsc) {
        if (oracle.kind != PrizeOracle::Kind::Coverage)
            bad("mwbcsc needs a coverage oracle");
        for (auto [a, b] : arcs)
            if (a >= b) bad("mwbcsc adjacency entries must satisfy tail < head");
        li.mwbcsc = make_mwbcsc(oracle.element_weights, oracle.node_sets, costs,
                                arcs, budget);
        // the unrooted instance is built at solve time: covering every
        // element is a solver precondition, not a file-validity condition
        return li;
    }

    Instance inst;
    inst.graph = make_digraph(costs, arcs, false);
    inst.oracle = std::move(oracle);
    inst.budget = budget;
    if (is_rooted) {
        inst.root = static_cast<int>(get_int(j.at("root"), "root"));
        if (inst.root < 0 || inst.root >= n) bad("root out of range");
        inst.variant = li.variant_tag == "drso" ? Variant::SubmodularRooted
                                                : Variant::AdditiveRooted;
        if (li.epsilon) inst.epsilon = *li.epsilon;
    } else {
        inst.variant = Variant::Unrooted;
        inst.root = -1;
    }
    li.instance = std::move(inst);
    return li;
}

LoadedInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

namespace {

json oracle_to_json(const PrizeOracle& o) {
    json out;
    if (o.kind == PrizeOracle::Kind::Additive) {
        out["additive"] = json{{"weights", o.weights}};
    } else {
        json elems = json::array();
        for (size_t i = 0; i < o.element_weights.size(); ++i)
            elems.push_back(json{{"id", i}, {"weight", o.element_weights[i]}});
        out["coverage"] =
            json{{"elements", elems}, {"node_sets", o.node_sets}};
    }
    return out;
}

}  // namespace

std::string serialize_instance(const LoadedInstance& li) {
    json j;
    j["schema"] = 1;
    j["variant"] = li.variant_tag;
    json nodes = json::array();
    json arcs = json::array();
    json oracle;
    Cost budget = 0;
    if (li.variant_tag == "sto") {
        const StoInstance& s = *li.sto;
        for (int v = 0; v < s.graph.n(); ++v)
            nodes.push_back(json{{"id", v}, {"cost", 0}});
        for (const auto& [arc, c] : s.arc_cost)
            arcs.push_back(json::array({arc.first, arc.second, c}));
        oracle = oracle_to_json(s.oracle);
        budget = s.budget;
        j["root"] = s.root;
    } else if (li.variant_tag == "mwbcsc") {
        const MwbcscInstance& m = *li.mwbcsc;
        for (size_t i = 0; i < m.sets.size(); ++i)
            nodes.push_back(json{{"id", i}, {"cost", m.set_costs[i]}});
        for (auto [a, b] : m.edges) arcs.push_back(json::array({a, b}));
        PrizeOracle o = make_coverage(static_cast<int>(m.sets.size()),
                                      m.sets, m.element_weights);
        oracle = oracle_to_json(o);
        budget = m.budget;
    } else {
        const Instance& inst = li.instance;
        for (int v = 0; v < inst.graph.n(); ++v)
            nodes.push_back(json{{"id", v}, {"cost", inst.graph.costs[v]}});
        for (int u = 0; u < inst.graph.n(); ++u)
            for (int v : inst.graph.out[u]) arcs.push_back(json::array({u, v}));
        oracle = oracle_to_json(inst.oracle);
        budget = inst.budget;
        if (inst.variant != Variant::Unrooted) j["root"] = inst.root;
    }
    j["nodes"] = nodes;
    j["arcs"] = arcs;
    j["oracle"] = oracle;
    j["budget"] = budget;
    if (li.epsilon) j["epsilon"] = rat_to_string(*li.epsilon);
    if (li.seed || !li.generator_kind.empty()) {
        json gj;
        if (!li.generator_kind.empty()) gj["kind"] = li.generator_kind;
        if (li.seed) gj["seed"] = *li.seed;
        j["generator"] = gj;
    }
    return j.dump(2) + "\n";
}

void save_instance(const LoadedInstance& li, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << serialize_instance(li);
}

std::string instance_digest(const LoadedInstance& li) {
    const std::string text = serialize_instance(li);
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 15];
        h >>= 4;
    }
    return out;
}

void RunRecord::add(const std::string& key, const std::string& value) {
    fields.emplace_back(key, value);
}
void RunRecord::add(const std::string& key, long long value) {
    fields.emplace_back(key, std::to_string(value));
}
void RunRecord::add(const std::string& key, const Rat& value) {
    fields.emplace_back(key, rat_to_string(value));
}

std::string RunRecord::line() const {
    std::string out;
    for (const auto& [k, v] : fields) {
        if (!out.empty()) out += ' ';
        out += k + "=" + (v.empty() ? "-" : v);
    }
    return out;
}

RunRecord record_from_report(const LoadedInstance& li, const SolveReport& rep,
                             long long wall_ms) {
    RunRecord r;
    r.add("record", std::string("solve"));
    r.add("digest", instance_digest(li));
    r.add("variant", li.variant_tag);
    r.add("seed", li.seed ? std::to_string(*li.seed) : "-");
    r.add("root", static_cast<long long>(rep.root));
    r.add("budget", rep.budget);
    if (rep.variant == Variant::Unrooted)
        r.add("epsilon", std::string("-"));
    else
        r.add("epsilon", rep.epsilon);
    r.add("cost", rep.cost);
    r.add("prize", rep.prize);
    r.add("budget_factor", rep.budget_factor);
    r.add("guarantee", rep.guarantee);
    r.add("pre_trim_cost", rep.pre_trim_cost);
    r.add("pre_trim_prize", rep.pre_trim_prize);
    r.add("best_candidate_prize", rep.best_candidate_prize);
    r.add("chosen_center", static_cast<long long>(rep.chosen_center));
    r.add("trim_case", trim_case_name(rep.trim_taken));
    r.add("branch", rep.branch);
    r.add("candidates", static_cast<long long>(rep.candidate_count));
    r.add("pruned", static_cast<long long>(rep.pruned_vertices));
    r.add("saddles", static_cast<long long>(rep.saddle_candidates));
    r.add("dual_runs", static_cast<long long>(rep.dual_seed_runs));
    r.add("dual_won", std::string(rep.dual_seed_won ? "yes" : "no"));
    r.add("tree_nodes", static_cast<long long>(rep.tree.size()));
    r.add("wall_ms", wall_ms);
    return r;
}

}  // namespace pcot
