// End-to-end tests of the adg binary: flag parsing, output formats, exit
// codes, and determinism. The binary path arrives in ADG_BIN_PATH.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const char* bin = std::getenv("ADG_BIN_PATH");
#ifdef ADG_BIN_PATH
    if (bin == nullptr) bin = ADG_BIN_PATH;
#endif
    REQUIRE(bin != nullptr);
    const std::string cmd = env_prefix + "'" + bin + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json parse_output(const RunResult& r) {
    INFO("output: " << r.out);
    return json::parse(r.out);
}

json scrub_elapsed(json j) {
    j.erase("elapsed_ms");
    return j;
}

}  // namespace

TEST_CASE("girth subcommand: designator, flags, and modes agree") {
    RunResult pos = run("girth D:3:3");
    REQUIRE(pos.exit_code == 0);
    json j = parse_output(pos);
    CHECK(j["family"] == "D");
    CHECK(j["n"] == 3);
    CHECK(j["q"] == 3);
    CHECK(j["result"] == 8);
    REQUIRE(j.contains("witness"));
    CHECK(j["witness"].size() == 8);
    CHECK(j["scanned"].get<std::uint64_t>() > 0);
    CHECK(j.contains("elapsed_ms"));

    RunResult flagged = run("girth --family D --n 3 --q 3");
    REQUIRE(flagged.exit_code == 0);
    CHECK(parse_output(flagged)["result"] == 8);

    RunResult opt = run("girth --graph D:3:3 --assume-transitive");
    REQUIRE(opt.exit_code == 0);
    CHECK(parse_output(opt)["result"] == 8);

    RunResult small = run("girth D:2:3");
    REQUIRE(small.exit_code == 0);
    CHECK(parse_output(small)["result"] == 6);
}

TEST_CASE("girth single-source mode differs from full scan on A(4,3)") {
    json full = parse_output(run("girth A:4:3"));
    json origin_only = parse_output(run("girth A:4:3 --assume-transitive"));
    CHECK(full["result"] == 8);
    CHECK(origin_only["result"] == 12);
}

TEST_CASE("json output is deterministic apart from elapsed_ms") {
    RunResult a = run("girth A:4:3");
    RunResult b = run("girth A:4:3");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(scrub_elapsed(parse_output(a)).dump() == scrub_elapsed(parse_output(b)).dump());

    RunResult s1 = run("spectrum D:3:3 --method iterative");
    RunResult s2 = run("spectrum D:3:3 --method iterative");
    CHECK(scrub_elapsed(parse_output(s1)).dump() == scrub_elapsed(parse_output(s2)).dump());
}

TEST_CASE("cycle-through-origin reports a cap miss as a lower bound") {
    RunResult r = run("cycle-through-origin A:8:3 --cap 10");
    REQUIRE(r.exit_code == 0);
    json j = parse_output(r);
    CHECK(j["result"] == ">= 10");
    CHECK(j["scanned"].get<std::uint64_t>() > 0);
    CHECK_FALSE(j.contains("witness"));

    json hit = parse_output(run("cycle-through-origin A:2:3"));
    CHECK(hit["result"] == 6);
    CHECK(hit["witness"].size() == 6);
}

TEST_CASE("components reports count and sizes") {
    json j = parse_output(run("components D:6:3"));
    CHECK(j["result"] == 3);
    CHECK(j["sizes"] == json::array({486, 486, 486}));

    json one = parse_output(run("components A:4:3"));
    CHECK(one["result"] == 1);
    CHECK(one["sizes"] == json::array({162}));
}

TEST_CASE("shape-check passes on A and rejects D as a usage error") {
    RunResult good = run("shape-check A:4:3");
    CHECK(good.exit_code == 0);
    CHECK(parse_output(good)["result"] == "pass");

    RunResult bad = run("shape-check D:4:3");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cover-check passes for the builtin constructions") {
    RunResult r = run("cover-check --from D:5:3 --to A:4:3 --map lemma21 --policy exhaustive");
    REQUIRE(r.exit_code == 0);
    json j = parse_output(r);
    CHECK(j["result"] == "pass");
    CHECK(j["index_map"] == json::array({1, 2, 3, 5}));
    CHECK(j["checked"] == 486);
    CHECK_FALSE(j.contains("certificate"));

    RunResult proj = run("cover-check --from D:5:3 --to D:3:3 --map project");
    CHECK(proj.exit_code == 0);
    CHECK(parse_output(proj)["result"] == "pass");

    RunResult sampled =
        run("cover-check --from D:7:3 --to A:5:3 --map lemma21 --policy sampled:300 --seed 11");
    CHECK(sampled.exit_code == 0);
    json js = parse_output(sampled);
    CHECK(js["result"] == "pass");
    CHECK(js["checked"] == 300);
}

TEST_CASE("cover-check fails a tampered index list with a certificate") {
    RunResult r = run("cover-check --from D:5:3 --to A:4:3 --map 1,2,3,4 --policy exhaustive");
    REQUIRE(r.exit_code == 1);
    json j = parse_output(r);
    CHECK(j["result"] == "fail");
    REQUIRE(j.contains("certificate"));
    CHECK(j["certificate"]["condition"] == "neighborhood image mismatch");
    CHECK(j["certificate"]["vertex"] == 3);
    CHECK(j["certificate"]["in_target"] == false);
}

TEST_CASE("spectrum reports the dense pair and enforces the bound on request") {
    RunResult r = run("spectrum D:2:3 --method dense --check-2sqrtq");
    REQUIRE(r.exit_code == 0);
    json j = parse_output(r);
    CHECK(j["method"] == "dense");
    CHECK(j["lambda1"].get<double>() == Catch::Approx(3.0).margin(1e-9));
    CHECK(j["lambda2"].get<double>() == Catch::Approx(1.732050807569).margin(1e-9));
    CHECK(j["within_2sqrtq"] == true);

    RunResult it = run("spectrum D:4:4 --method iterative --per-component");
    REQUIRE(it.exit_code == 0);
    json ji = parse_output(it);
    CHECK(ji["method"] == "iterative");
    CHECK(ji["converged"] == true);
    CHECK(ji["lambda2"].get<double>() == Catch::Approx(2.828427124746).margin(1e-6));
    CHECK(ji["components"] == 4);
}

TEST_CASE("turan emits the bound pair in every format") {
    RunResult csv = run("turan --n 486 --k 5 --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.find("n,k,epsilon,lower,upper") == 0);
    CHECK(csv.out.find("486,5,0,593.16154267579") != std::string::npos);

    json j = parse_output(run("turan --n 18 --k 2"));
    CHECK(j["epsilon"] == 1);
    CHECK(j["lower"].get<double>() == Catch::Approx(27.0).epsilon(1e-12));

    RunResult bad = run("turan --n 1 --k 2");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("report tabulates per-component data") {
    json j = parse_output(run("report D:2:3"));
    REQUIRE(j["rows"].size() == 1);
    const json& row = j["rows"][0];
    CHECK(row["order"] == 18);
    CHECK(row["edges"] == 27);
    CHECK(row["girth"] == 6);
    CHECK(row["k"] == 2);
    CHECK(row["ratio"].get<double>() == Catch::Approx(1.0).epsilon(1e-12));

    RunResult csv = run("report D:5:2 --cap 8 --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.find("index,root,order,edges,girth,k,lower,ratio") == 0);
    CHECK(csv.out.find("0,0,16,16,,,,") != std::string::npos);
}

TEST_CASE("export emits the frozen D(2,2) edge list in every format") {
    const std::string expected =
        "P0 L4\nP0 L5\nP1 L4\nP1 L7\nP2 L6\nP2 L7\nP3 L5\nP3 L6\n";
    RunResult def = run("export D:2:2");
    REQUIRE(def.exit_code == 0);
    CHECK(def.out == expected);

    RunResult csv = run("export D:2:2 --format csv");
    CHECK(csv.out.find("point,line\n0,4\n0,5\n1,4\n") == 0);

    json j = parse_output(run("export D:2:2 --format json"));
    REQUIRE(j["edges"].size() == 8);
    CHECK(j["edges"][0] == json::array({0, 4}));
}

TEST_CASE("custom systems load from a file with --system") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "adg_cli_custom_system.txt";
    {
        std::ofstream out(path);
        out << "# three-coordinate system, quadratic then cubic monomial\n"
            << "p2 + l2 = p1 * l1\n"
            << "p3 + l3 = p1 * l2\n";
    }
    RunResult r = run("girth --system " + path.string() + " --q 3");
    REQUIRE(r.exit_code == 0);
    json j = parse_output(r);
    CHECK(j["family"] == "custom");
    CHECK(j["result"] == 8);
    std::filesystem::remove(path);

    RunResult missing = run("girth --system /nonexistent/system.txt --q 3");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("modulus override changes the representation, not the measurements") {
    json deflt = parse_output(run("girth D:2:9"));
    json alt = parse_output(run("girth D:2:9 --modulus 2,1,1"));
    CHECK(deflt["result"] == 6);
    CHECK(alt["result"] == 6);

    RunResult reducible = run("girth D:2:9 --modulus 0,0,1");
    CHECK(reducible.exit_code == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("").exit_code == 2);
    CHECK(run("no-such-subcommand").exit_code == 2);
    CHECK(run("girth").exit_code == 2);
    CHECK(run("girth X:3:3").exit_code == 2);
    CHECK(run("girth D:3").exit_code == 2);
    CHECK(run("girth D:3:3 --cap 7").exit_code == 2);
    CHECK(run("girth D:3:3 --format yaml").exit_code == 2);
    CHECK(run("girth --family D --n 3").exit_code == 2);
    CHECK(run("cover-check --from D:5:3 --to A:4:3 --map nonsense").exit_code == 2);
    CHECK(run("repro --criterion 12").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("resource refusals exit 3") {
    CHECK(run("girth D:9:999999937").exit_code == 3);
    CHECK(run("girth D:2:3", "ADG_MEM_BUDGET=10 ").exit_code == 3);
    CHECK(run("spectrum A:8:3 --method dense").exit_code == 3);
}

TEST_CASE("repro runs a single criterion") {
    RunResult r = run("repro --criterion 10");
    REQUIRE(r.exit_code == 0);
    json j = parse_output(r);
    CHECK(j["rows"] == 15);
    CHECK(j["failed"] == 0);
    for (const json& row : j["checks"]) {
        CHECK(row["criterion"] == 10);
        CHECK(row["pass"] == true);
    }

    RunResult csv = run("repro --criterion 10 --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.find("criterion,name,expected,actual,pass,elapsed_ms") == 0);
}
