#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcot/exact.hpp"
#include "pcot/generate.hpp"
#include "pcot/io.hpp"
#include "pcot/reductions.hpp"
#include "pcot/solver.hpp"

namespace {

using namespace pcot;

long long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

Rat resolve_epsilon(const LoadedInstance& li, const std::string& flag) {
    if (!flag.empty()) return parse_rat(flag);
    if (li.epsilon) return *li.epsilon;
    return Rat(1, 2);
}

bool variant_is_rooted(const std::string& tag) {
    return tag == "drso" || tag == "drao" || tag == "sto";
}

struct SolveOutcome {
    SolveReport report;            // always filled
    std::optional<StoSolution> sto_solution;
};

SolveOutcome run_solver(const LoadedInstance& li, const Rat& eps,
                        MwbcscStrategy strategy) {
    SolveOutcome out;
    if (li.variant_tag == "sto") {
        StoSolveReport sr = solve_sto(*li.sto, eps);
        out.report = sr.expanded;
        out.sto_solution = sr.solution;
    } else if (li.variant_tag == "mwbcsc") {
        Instance inst = mwbcsc_to_dso(*li.mwbcsc, strategy);
        out.report = solve_dso_unrooted(inst.graph, inst.oracle, inst.budget);
    } else {
        Instance inst = li.instance;
        inst.epsilon = eps;
        out.report = solve(inst);
    }
    return out;
}

ExactResult run_exact(const LoadedInstance& li, const ExactCaps& caps) {
    if (li.variant_tag == "sto")
        return exact_rooted(li.instance.graph, li.instance.oracle,
                            li.instance.root, li.instance.budget, caps);
    if (li.variant_tag == "mwbcsc") {
        Instance inst = mwbcsc_to_dso(*li.mwbcsc);
        return exact_unrooted(inst.graph, inst.oracle, inst.budget, caps);
    }
    if (li.variant_tag == "dso")
        return exact_unrooted(li.instance.graph, li.instance.oracle,
                              li.instance.budget, caps);
    return exact_rooted(li.instance.graph, li.instance.oracle, li.instance.root,
                        li.instance.budget, caps);
}

void print_human(const LoadedInstance& li, const SolveOutcome& out,
                 long long wall) {
    const SolveReport& r = out.report;
    std::cout << "instance  digest=" << instance_digest(li) << " variant="
              << li.variant_tag << " budget=" << r.budget;
    if (r.root >= 0) std::cout << " root=" << r.root;
    std::cout << "\n";
    if (variant_is_rooted(li.variant_tag))
        std::cout << "epsilon   " << rat_to_string(r.epsilon) << "\n";
    std::cout << "branch    " << r.branch << " (center " << r.chosen_center
              << ", " << r.candidate_count << " candidates)\n";
    std::cout << "pre-trim  cost=" << r.pre_trim_cost << " prize="
              << r.pre_trim_prize << " trim=" << trim_case_name(r.trim_taken)
              << "\n";
    if (out.sto_solution) {
        std::cout << "solution  arc-cost=" << out.sto_solution->cost
                  << " prize=" << out.sto_solution->prize << " nodes="
                  << out.sto_solution->tree.size() << "\n";
    } else {
        std::cout << "solution  cost=" << r.cost << " prize=" << r.prize
                  << " nodes=" << r.tree.size() << " budget-factor="
                  << rat_to_string(r.budget_factor) << "\n";
    }
    std::cout << "certified prize >= " << rat_to_string(r.guarantee)
              << " of the optimum\n";
    if (!r.trim_note.empty()) std::cout << "note      " << r.trim_note << "\n";
    std::cout << "wall      " << wall << " ms\n";
}

int cmd_solve_one(const LoadedInstance& li, const Rat& eps,
                  MwbcscStrategy strategy, const std::string& format) {
    long long t0 = now_ms();
    SolveOutcome out = run_solver(li, eps, strategy);
    long long wall = now_ms() - t0;
    if (format == "human") {
        print_human(li, out, wall);
    } else {
        RunRecord rec = record_from_report(li, out.report, wall);
        if (out.sto_solution) {
            rec.add("sto_cost", out.sto_solution->cost);
            rec.add("sto_prize", out.sto_solution->prize);
        }
        std::cout << rec.line() << "\n";
    }
    return 0;
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

int cmd_verify(const LoadedInstance& li, const Rat& eps,
               const ExactCaps& caps) {
    SolveOutcome out = run_solver(li, eps, MwbcscStrategy::Coverage);
    ExactResult ex = run_exact(li, caps);
    const SolveReport& r = out.report;
    std::vector<Check> checks;
    auto add = [&](const std::string& name, bool pass, const std::string& d) {
        checks.push_back({name, pass, d});
    };

    const Cost sq = isqrt_floor(r.budget > 0 ? r.budget : 1);
    if (li.variant_tag == "sto") {
        const StoSolution& sol = *out.sto_solution;
        add("budget-window", Rat(sol.cost) <= (1 + eps) * Rat(li.sto->budget),
            "arc cost " + std::to_string(sol.cost) + " vs (1+eps)*B");
        add("never-above-optimum", sol.prize <= ex.optimum,
            "prize " + std::to_string(sol.prize) + " vs optimum " +
                std::to_string(ex.optimum));
        add("final-guarantee", Rat(sol.prize) >= r.guarantee * ex.optimum,
            "prize " + std::to_string(sol.prize) + " vs " +
                rat_to_string(r.guarantee * ex.optimum));
    } else if (variant_is_rooted(li.variant_tag)) {
        add("budget-window", r.budget_factor <= 1 + eps,
            "cost " + std::to_string(r.cost) + " vs (1+eps)*B");
        Rat eq1 = one_minus_inv_e_ub() / (5 * Rat(sq));
        add("pre-trim-guarantee", Rat(r.pre_trim_prize) >= eq1 * ex.optimum,
            "pre-trim prize " + std::to_string(r.pre_trim_prize) + " vs " +
                rat_to_string(eq1 * ex.optimum));
        add("never-above-optimum", r.prize <= ex.optimum,
            "prize " + std::to_string(r.prize) + " vs optimum " +
                std::to_string(ex.optimum));
        add("final-guarantee", Rat(r.prize) >= r.guarantee * ex.optimum,
            "prize " + std::to_string(r.prize) + " vs " +
                rat_to_string(r.guarantee * ex.optimum));
    } else {
        add("budget-window", r.budget_factor <= 1,
            "cost " + std::to_string(r.cost) + " vs B");
        add("never-above-optimum", r.prize <= ex.optimum,
            "prize " + std::to_string(r.prize) + " vs optimum " +
                std::to_string(ex.optimum));
        add("final-guarantee", Rat(r.prize) >= r.guarantee * ex.optimum,
            "prize " + std::to_string(r.prize) + " vs " +
                rat_to_string(r.guarantee * ex.optimum));
    }

    bool all = true;
    for (const Check& c : checks) {
        all = all && c.pass;
        std::cout << "check=" << c.name << " status="
                  << (c.pass ? "pass" : "fail") << " " << c.detail << "\n";
    }
    std::cout << "verify " << (all ? "passed" : "FAILED") << " digest="
              << instance_digest(li) << " optimum=" << ex.optimum << "\n";
    return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"budget-constrained prize-collecting out-tree toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random instance file");
    std::string g_kind;
    unsigned long long g_seed = 1;
    std::string g_out = "-";
    RandomDigraphParams dg;
    RandomCoverageParams cv;
    BscpParams bp;
    std::string g_variant = "drso";
    std::string g_eps;
    std::string g_rs = "2", g_rc = "3";
    gen->add_option("--kind", g_kind, "random-digraph | random-coverage | bscp-geometric")
        ->required();
    gen->add_option("--seed", g_seed, "generator seed");
    gen->add_option("--out", g_out, "output path, - for stdout");
    gen->add_option("--n", dg.n, "vertex count (also coverage set count)");
    gen->add_option("--arc-percent", dg.arc_percent, "arc probability in percent");
    gen->add_option("--max-cost", dg.max_cost, "vertex costs drawn from 1..max");
    gen->add_option("--max-weight", dg.max_weight, "prizes drawn from 0..max");
    gen->add_option("--budget", dg.budget, "budget");
    gen->add_option("--elements", cv.elements, "coverage: element count");
    gen->add_option("--max-set-size", cv.max_set_size, "coverage: set size cap");
    gen->add_option("--variant", g_variant, "drso | drao | dso");
    gen->add_option("--epsilon", g_eps, "epsilon as a rational, e.g. 1/2");
    gen->add_option("--sensors", bp.sensors, "bscp: sensor count");
    gen->add_option("--targets", bp.targets, "bscp: target count");
    gen->add_option("--grid", bp.grid, "bscp: coordinate grid size");
    gen->add_option("--rs", g_rs, "bscp: sensing range (rational)");
    gen->add_option("--rc", g_rc, "bscp: communication range (rational)");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "run the approximation pipeline");
    std::string s_file, s_eps, s_format = "human", s_strategy = "coverage";
    solve_cmd->add_option("file", s_file, "instance file")->required();
    solve_cmd->add_option("--epsilon", s_eps, "override the file epsilon");
    solve_cmd->add_option("--format", s_format, "human | record")
        ->check(CLI::IsMember({"human", "record"}));
    solve_cmd->add_option("--strategy", s_strategy,
                          "mwbcsc oracle strategy: coverage | additive")
        ->check(CLI::IsMember({"coverage", "additive"}));

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "brute-force the optimum");
    std::string e_file, e_format = "human";
    int e_cap = 15;
    long long e_states = 4000000;
    exact_cmd->add_option("file", e_file, "instance file")->required();
    exact_cmd->add_option("--cap", e_cap, "refuse above this vertex count");
    exact_cmd->add_option("--max-states", e_states, "abort after this many sets");
    exact_cmd->add_option("--format", e_format, "human | record")
        ->check(CLI::IsMember({"human", "record"}));

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "solve, brute-force, and check certificates");
    std::string v_file, v_eps;
    int v_cap = 15;
    long long v_states = 4000000;
    verify_cmd->add_option("file", v_file, "instance file")->required();
    verify_cmd->add_option("--epsilon", v_eps, "override the file epsilon");
    verify_cmd->add_option("--cap", v_cap, "oracle vertex cap");
    verify_cmd->add_option("--max-states", v_states, "oracle state cap");

    // bench
    auto* bench_cmd =
        app.add_subcommand("bench", "solve many files, one record per line");
    std::vector<std::string> b_files;
    std::string b_eps;
    bench_cmd->add_option("files", b_files, "instance files")->required();
    bench_cmd->add_option("--epsilon", b_eps, "override the file epsilon");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*gen) {
            LoadedInstance li;
            if (g_kind == "random-digraph") {
                dg.variant = g_variant;
                if (!g_eps.empty()) dg.epsilon = parse_rat(g_eps);
                li = gen_random_digraph(dg, g_seed);
            } else if (g_kind == "random-coverage") {
                cv.n = dg.n;
                cv.arc_percent = dg.arc_percent;
                cv.max_cost = dg.max_cost;
                cv.max_weight = dg.max_weight;
                cv.budget = dg.budget;
                cv.variant = g_variant;
                if (!g_eps.empty()) cv.epsilon = parse_rat(g_eps);
                li = gen_random_coverage(cv, g_seed);
            } else if (g_kind == "bscp-geometric") {
                bp.max_weight = dg.max_weight > 0 ? dg.max_weight : bp.max_weight;
                bp.budget = dg.budget;
                bp.sensing_range = parse_rat(g_rs);
                bp.communication_range = parse_rat(g_rc);
                li = gen_bscp(bp, g_seed);
            } else {
                throw input_error("unknown generator kind \"" + g_kind + "\"");
            }
            std::string text = serialize_instance(li);
            if (g_out == "-") {
                std::cout << text;
            } else {
                std::ofstream f(g_out);
                if (!f) throw input_error("cannot write " + g_out);
                f << text;
            }
            return 0;
        }
        if (*solve_cmd) {
            LoadedInstance li = load_instance(s_file);
            if (!variant_is_rooted(li.variant_tag) && !s_eps.empty())
                throw input_error("epsilon does not apply to unrooted variants");
            Rat eps = resolve_epsilon(li, s_eps);
            MwbcscStrategy strat = s_strategy == "additive"
                                       ? MwbcscStrategy::Additive
                                       : MwbcscStrategy::Coverage;
            return cmd_solve_one(li, eps, strat, s_format);
        }
        if (*exact_cmd) {
            LoadedInstance li = load_instance(e_file);
            ExactCaps caps{e_cap, e_states};
            long long t0 = now_ms();
            ExactResult ex = run_exact(li, caps);
            long long wall = now_ms() - t0;
            if (e_format == "human") {
                std::cout << "optimum   " << ex.optimum << "\n";
                std::cout << "witness   nodes=" << ex.witness.size()
                          << " root=" << ex.witness.root << "\n";
                std::cout << "searched  " << ex.subsets_enumerated
                          << " sets (" << ex.distinct_sets << " distinct)\n";
                std::cout << "wall      " << wall << " ms\n";
            } else {
                RunRecord rec;
                rec.add("record", std::string("exact"));
                rec.add("digest", instance_digest(li));
                rec.add("variant", li.variant_tag);
                rec.add("seed",
                        li.seed ? std::to_string(*li.seed) : std::string("-"));
                rec.add("optimum", ex.optimum);
                rec.add("witness_nodes", static_cast<long long>(ex.witness.size()));
                rec.add("sets", ex.subsets_enumerated);
                rec.add("distinct_sets", ex.distinct_sets);
                rec.add("wall_ms", wall);
                std::cout << rec.line() << "\n";
            }
            return 0;
        }
        if (*verify_cmd) {
            LoadedInstance li = load_instance(v_file);
            if (!variant_is_rooted(li.variant_tag) && !v_eps.empty())
                throw input_error("epsilon does not apply to unrooted variants");
            Rat eps = resolve_epsilon(li, v_eps);
            return cmd_verify(li, eps, ExactCaps{v_cap, v_states});
        }
        if (*bench_cmd) {
            for (const std::string& f : b_files) {
                LoadedInstance li = load_instance(f);
                Rat eps = resolve_epsilon(
                    li, variant_is_rooted(li.variant_tag) ? b_eps : "");
                long long t0 = now_ms();
                SolveOutcome out =
                    run_solver(li, eps, MwbcscStrategy::Coverage);
                long long wall = now_ms() - t0;
                RunRecord rec = record_from_report(li, out.report, wall);
                rec.add("file", f);
                if (out.sto_solution) {
                    rec.add("sto_cost", out.sto_solution->cost);
                    rec.add("sto_prize", out.sto_solution->prize);
                }
                std::cout << rec.line() << "\n";
            }
            return 0;
        }
    } catch (const invariant_error& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
