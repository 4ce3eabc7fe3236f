#include <sys/wait.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "pcot/exact.hpp"
#include "pcot/io.hpp"
#include "pcot/solver.hpp"

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(PCOT_CLI_PATH) + " " + args + " 2>&1";
    CmdResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        res.output.append(buf, got);
    int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    res.exit_code = WEXITSTATUS(status);
    return res;
}

// the record line with every wall-clock field blanked out
std::string stable_part(const std::string& line) {
    std::istringstream in(line);
    std::string token, out;
    while (in >> token) {
        if (token.rfind("wall_ms=", 0) == 0) continue;
        if (!out.empty()) out += ' ';
        out += token;
    }
    return out;
}

std::string field(const std::string& line, const std::string& key) {
    std::istringstream in(line);
    std::string token;
    while (in >> token)
        if (token.rfind(key + "=", 0) == 0) return token.substr(key.size() + 1);
    return "";
}

struct TmpFile {
    std::string path;
    explicit TmpFile(std::string p) : path(std::move(p)) {}
    ~TmpFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("usage errors exit with code one") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("solve").exit_code == 1);             // missing file
    CHECK(run_cli("gen").exit_code == 1);               // missing --kind
    TmpFile f("cli_fmt.json");
    run_cli("gen --kind random-digraph --n 4 --budget 3 --out " + f.path);
    CHECK(run_cli("solve " + f.path + " --format yaml").exit_code == 1);
}

TEST_CASE("generation is deterministic and loadable") {
    CmdResult a = run_cli(
        "gen --kind random-digraph --seed 5 --n 6 --budget 4 --variant drso "
        "--epsilon 1/2");
    CmdResult b = run_cli(
        "gen --kind random-digraph --seed 5 --n 6 --budget 4 --variant drso "
        "--epsilon 1/2");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    pcot::LoadedInstance li = pcot::parse_instance_text(a.output);
    CHECK(li.variant_tag == "drso");
    CHECK(li.seed == 5);
    CHECK(li.instance.budget == 4);
    // a different seed gives a different instance
    CmdResult c = run_cli(
        "gen --kind random-digraph --seed 6 --n 6 --budget 4 --variant drso "
        "--epsilon 1/2");
    CHECK(c.output != a.output);
    CHECK(run_cli("gen --kind no-such-kind").exit_code == 2);
}

TEST_CASE("solve records match an in-process run of the library") {
    TmpFile f("cli_solve.json");
    CHECK(run_cli("gen --kind random-digraph --seed 9 --n 7 --budget 5 "
                  "--variant drso --epsilon 1/2 --out " + f.path)
              .exit_code == 0);
    CmdResult r = run_cli("solve " + f.path + " --format record");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("record=solve", 0) == 0);
    pcot::LoadedInstance li = pcot::load_instance(f.path);
    pcot::SolveReport rep = pcot::solve(li.instance);
    CHECK(field(r.output, "digest") == pcot::instance_digest(li));
    CHECK(field(r.output, "cost") == std::to_string(rep.cost));
    CHECK(field(r.output, "prize") == std::to_string(rep.prize));
    CHECK(field(r.output, "variant") == "drso");
    CHECK(field(r.output, "epsilon") == "1/2");
    // two runs differ at most in wall time
    CmdResult again = run_cli("solve " + f.path + " --format record");
    CHECK(stable_part(r.output) == stable_part(again.output));
    // human output names the same numbers
    CmdResult human = run_cli("solve " + f.path);
    CHECK(human.exit_code == 0);
    CHECK(human.output.find("solution  cost=" + std::to_string(rep.cost)) !=
          std::string::npos);
}

TEST_CASE("validation errors exit with code two") {
    CHECK(run_cli("solve no_such_file.json").exit_code == 2);
    TmpFile junk("cli_junk.json");
    {
        FILE* f = fopen(junk.path.c_str(), "w");
        REQUIRE(f != nullptr);
        fputs("{ not json", f);
        fclose(f);
    }
    CHECK(run_cli("solve " + junk.path).exit_code == 2);
    // epsilon rejected for unrooted variants
    TmpFile dso("cli_dso.json");
    CHECK(run_cli("gen --kind random-digraph --seed 3 --n 6 --budget 4 "
                  "--variant dso --out " + dso.path)
              .exit_code == 0);
    CHECK(run_cli("solve " + dso.path + " --epsilon 1/2").exit_code == 2);
    CHECK(run_cli("solve " + dso.path).exit_code == 0);
}

TEST_CASE("exact and verify agree with the library") {
    TmpFile f("cli_verify.json");
    CHECK(run_cli("gen --kind random-coverage --seed 4 --n 6 --budget 4 "
                  "--variant drso --epsilon 1 --out " + f.path)
              .exit_code == 0);
    pcot::LoadedInstance li = pcot::load_instance(f.path);
    pcot::ExactResult ex =
        pcot::exact_rooted(li.instance.graph, li.instance.oracle,
                           li.instance.root, li.instance.budget);
    CmdResult r = run_cli("exact " + f.path + " --format record");
    CHECK(r.exit_code == 0);
    CHECK(field(r.output, "record") == "exact");
    CHECK(field(r.output, "optimum") == std::to_string(ex.optimum));
    CmdResult v = run_cli("verify " + f.path);
    CHECK(v.exit_code == 0);
    CHECK(v.output.find("verify passed") != std::string::npos);
    CHECK(v.output.find("status=fail") == std::string::npos);
    CHECK(v.output.find("optimum=" + std::to_string(ex.optimum)) !=
          std::string::npos);
}

TEST_CASE("arc-cost instances run end to end") {
    TmpFile f("cli_sto.json");
    {
        FILE* fp = fopen(f.path.c_str(), "w");
        REQUIRE(fp != nullptr);
        fputs(R"({
          "schema": 1, "variant": "sto",
          "nodes": [{"id": 0, "cost": 0}, {"id": 1, "cost": 0},
                    {"id": 2, "cost": 0}],
          "arcs": [[0, 1, 1], [1, 2, 2]],
          "oracle": {"additive": {"weights": [2, 5, 9]}},
          "root": 0, "budget": 3, "epsilon": "1"
        })",
              fp);
        fclose(fp);
    }
    CmdResult r = run_cli("solve " + f.path + " --format record");
    CHECK(r.exit_code == 0);
    CHECK(field(r.output, "variant") == "sto");
    CHECK(!field(r.output, "sto_cost").empty());
    CHECK(!field(r.output, "sto_prize").empty());
    CHECK(run_cli("verify " + f.path).exit_code == 0);
}

TEST_CASE("geometric cover instances run end to end") {
    TmpFile f("cli_bscp.json");
    CHECK(run_cli("gen --kind bscp-geometric --seed 4 --sensors 6 --targets 8 "
                  "--grid 6 --rs 3 --rc 5 --budget 3 --out " + f.path)
              .exit_code == 0);
    CmdResult r = run_cli("solve " + f.path + " --format record");
    CHECK(r.exit_code == 0);
    CHECK(field(r.output, "variant") == "mwbcsc");
    CHECK(field(r.output, "epsilon") == "-");
    CHECK(run_cli("verify " + f.path).exit_code == 0);
    // the additive strategy is accepted as an alternative
    CHECK(run_cli("solve " + f.path + " --strategy additive").exit_code == 0);
    // an instance with an uncovered target loads, but solving refuses it
    TmpFile bad("cli_bscp_bad.json");
    CHECK(run_cli("gen --kind bscp-geometric --seed 2 --sensors 6 --targets 8 "
                  "--grid 6 --rs 3 --rc 5 --budget 3 --out " + bad.path)
              .exit_code == 0);
    CHECK(run_cli("solve " + bad.path).exit_code == 2);
}

TEST_CASE("bench prints one record per file") {
    TmpFile f1("cli_bench1.json");
    TmpFile f2("cli_bench2.json");
    run_cli("gen --kind random-digraph --seed 21 --n 6 --budget 4 "
            "--variant drao --epsilon 1/2 --out " + f1.path);
    run_cli("gen --kind random-digraph --seed 22 --n 6 --budget 4 "
            "--variant dso --out " + f2.path);
    CmdResult r = run_cli("bench " + f1.path + " " + f2.path);
    CHECK(r.exit_code == 0);
    std::istringstream in(r.output);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    REQUIRE(lines.size() == 2);
    CHECK(field(lines[0], "file") == f1.path);
    CHECK(field(lines[1], "file") == f2.path);
    CHECK(field(lines[0], "variant") == "drao");
    CHECK(field(lines[1], "variant") == "dso");
    CHECK(field(lines[1], "epsilon") == "-");
}
