#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mcs/cli.hpp"

using namespace mcs::cli;
using json = nlohmann::ordered_json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MCS_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("gen formats") {
    auto r = run_cli({"gen", "--x", "2", "--rho", "3", "--count", "5", "--format", "bfile"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "0 0\n1 1\n2 1\n3 3\n4 5\n");

    r = run_cli({"gen", "-x", "10", "-r", "3", "--count", "3", "--which", "S"});
    CHECK(r.out == "3\n33\n333\n");

    r = run_cli({"gen", "--x", "2", "--rho", "3", "--count", "3", "--format", "bfile", "--offset", "1"});
    CHECK(r.out == "1 0\n2 1\n3 1\n");

    r = run_cli({"gen", "--x", "3", "--rho", "5", "--count", "0"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());

    r = run_cli({"gen", "--x", "3", "--rho", "5", "--count", "5", "--format", "json"});
    const json j = json::parse(r.out);
    CHECK(j["schema"] == "mcs-report/1");
    CHECK(j["details"]["terms"] == json::array({"0", "1", "4", "11", "32"}));
}

TEST_CASE("verify exit codes and reports") {
    auto r = run_cli({"verify", "--x", "2", "--rho", "3", "--n-max", "64"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("holds for n=0..62") != std::string::npos);

    r = run_cli({"verify", "--x", "2", "--rho", "9", "--n-max", "64", "--format", "json"});
    CHECK(r.code == kExitWitness);
    const json j = json::parse(r.out);
    CHECK(j["outcome"] == "witness");
    CHECK(j["details"]["fermat_condition"] == false);
    CHECK(j["details"]["witness"]["index"].get<int>() == j["details"]["witness"]["n"].get<int>() + 8);

    r = run_cli({"verify", "--x", "3", "--rho", "5", "--which", "S", "--n-max", "40"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("pi=4") != std::string::npos);

    r = run_cli({"verify", "--x", "3", "--rho", "5", "--which", "S", "--pi", "0"});
    CHECK(r.code == kExitWitness);
    CHECK(r.out.find("floor=48 recurrence=44") != std::string::npos);
}

TEST_CASE("pi command") {
    auto r = run_cli({"pi", "--x", "10", "--rho", "3"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "6\n");
    r = run_cli({"pi", "--x", "2", "--rho", "9"});
    CHECK(r.code == kExitUsage);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("scan command") {
    auto r = run_cli({"scan", "--x", "2", "--lo", "3", "--hi", "700"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "pseudoprimes base 2 in [3, 700]: 341 561 645\n");

    const auto one = run_cli({"scan", "--x", "3", "--lo", "2", "--hi", "2000", "--all", "--jobs", "1"});
    const auto eight = run_cli({"scan", "--x", "3", "--lo", "2", "--hi", "2000", "--all", "--jobs", "8"});
    CHECK(one.out == eight.out);
    CHECK(one.out.find("91 pseudoprime fermat\n") != std::string::npos);
    CHECK(one.out.find("6 non-coprime -\n") != std::string::npos);

    r = run_cli({"scan", "--x", "2", "--lo", "10", "--hi", "3"});
    CHECK(r.code == kExitUsage);
}

TEST_CASE("compare against b-files") {
    auto r = run_cli({"compare", "--x", "2", "--rho", "3", "--file", data("jacobsthal.b")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "match: 16 records\n");

    r = run_cli({"compare", "--x", "4", "--rho", "3", "--file", data("powers_of_4.b")});
    CHECK(r.code == kExitOk);

    r = run_cli({"compare", "--x", "2", "--rho", "3", "--file", data("jacobsthal_corrupt.b"),
                 "--format", "json"});
    CHECK(r.code == kExitWitness);
    const json j = json::parse(r.out);
    CHECK(j["details"]["divergence"]["file_index"] == 7);
    CHECK(j["details"]["divergence"]["generated"] == "43");
    CHECK(j["details"]["matched"] == 7);

    r = run_cli({"compare", "--x", "2", "--rho", "3", "--file", data("malformed.b")});
    CHECK(r.code == kExitMalformed);
    CHECK(r.err.find("malformed.b:3") != std::string::npos);

    r = run_cli({"compare", "--x", "2", "--rho", "3", "--file", data("gap.b")});
    CHECK(r.code == kExitMalformed);

    r = run_cli({"compare", "--x", "2", "--rho", "3", "--file", data("does_not_exist.b")});
    CHECK(r.code == kExitNoInput);

    r = run_cli({"compare", "--x", "2", "--rho", "3", "--file", data("jacobsthal.b"),
                 "--offset-shift", "-1"});
    CHECK(r.code == kExitUsage);
}

TEST_CASE("gen output compares clean") {
    const auto path = std::filesystem::temp_directory_path() / "mcs_test_roundtrip.b";
    for (auto [x, rho, which] : {std::tuple{"3", "5", "J"}, {"7", "4", "S"}, {"2", "9", "J"}}) {
        const auto g = run_cli({"gen", "--x", x, "--rho", rho, "--which", which, "--count", "60",
                                "--format", "bfile", "--offset", "2"});
        REQUIRE(g.code == kExitOk);
        std::ofstream(path) << g.out;
        const auto c = run_cli({"compare", "--x", x, "--rho", rho, "--which", which, "--file",
                                path.string(), "--offset-shift", "-2"});
        CHECK(c.code == kExitOk);
        CHECK(c.out == "match: 60 records\n");
    }
    std::filesystem::remove(path);
}

TEST_CASE("bench agreement") {
    auto r = run_cli({"bench", "--x", "2", "--rho", "3", "-n", "10000", "--repetitions", "1",
                      "--format", "json"});
    CHECK(r.code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["details"]["agree"] == true);
    CHECK(j["details"]["value_digits"] == 3010);
    for (const char* s : {"floor", "recurrence", "matrix-power", "binet"}) {
        CHECK(j["details"]["strategies"][s]["status"] == "ok");
        CHECK(j["timings_ms"].contains(s));
    }

    r = run_cli({"bench", "--x", "3", "--rho", "5", "-n", "3", "--repetitions", "1", "--format", "json"});
    CHECK(r.code == kExitOk);
    j = json::parse(r.out);
    CHECK(j["details"]["strategies"]["binet"]["status"] == "ok");
    CHECK(j["details"]["strategies"]["matrix-power"]["status"] == "ok");

    r = run_cli({"bench", "--x", "2", "--rho", "9", "-n", "30", "--repetitions", "1", "--format", "json"});
    j = json::parse(r.out);
    CHECK(j["details"]["strategies"]["binet"]["status"] == "unavailable");
    CHECK(j["details"]["strategies"]["recurrence"]["status"] == "mismatch");
    CHECK(r.code == kExitWitness);

    r = run_cli({"bench", "--x", "2", "--rho", "3", "-n", "200", "--binet-precision", "double",
                 "--strategies", "floor,binet", "--repetitions", "1", "--format", "json"});
    j = json::parse(r.out);
    CHECK(j["details"]["strategies"]["binet"]["status"] == "uncertified");
}

TEST_CASE("bench without timings is deterministic") {
    const std::vector<std::string> args{"bench", "--x", "3", "--rho", "5", "-n", "64",
                                        "--repetitions", "2", "--no-timing", "--print-value"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find(" ms") == std::string::npos);

    auto with_json = args;
    with_json.insert(with_json.end(), {"--format", "json"});
    const json j = json::parse(run_cli(with_json).out);
    CHECK_FALSE(j.contains("timings_ms"));
}

TEST_CASE("matrix and eig commands") {
    auto r = run_cli({"matrix", "--x", "2", "--rho", "3", "--kind", "L"});
    CHECK(r.out == "1 2 1\n1 0 0\n0 0 1\n");
    r = run_cli({"eig", "--x", "3", "--rho", "5", "--format", "json"});
    CHECK(r.code == kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["details"]["eigenvalues"].size() == 4);
    CHECK(j["details"]["eigenpair_residual"].get<double>() < 1e-9);
    r = run_cli({"eig", "--x", "5", "--rho", "7", "--condition-ceiling", "1"});
    CHECK(r.code == kExitUsage);
}

TEST_CASE("usage errors") {
    CHECK(run_cli({}).code == kExitUsage);
    CHECK(run_cli({"frobnicate"}).code == kExitUsage);
    CHECK(run_cli({"gen", "--x", "2"}).code == kExitUsage);
    CHECK(run_cli({"gen", "--x", "1", "--rho", "3", "--count", "2"}).code == kExitUsage);
    CHECK(run_cli({"gen", "--x", "2", "--rho", "3", "--count", "2", "--which", "Q"}).code == kExitUsage);
    CHECK(run_cli({"verify", "--x", "2", "--rho", "9", "--n-max", "3"}).code == kExitUsage);
    CHECK(run_cli({"gen", "--help"}).code == kExitOk);
}
