#include "doctest.h"

#include "mtcheck/modular_data.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

using mtcheck::Json;
using mtcheck::ModularData;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the binary named by MTCHECK_BIN with the given arguments, capturing
// stdout and stderr together.
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("MTCHECK_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "MTCHECK_BIN must point at the CLI binary");
    const std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, n);
    const int rc = pclose(pipe);
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

}  // namespace

TEST_CASE("verify on built-ins exits 0 with an overall pass") {
    for (const char* name : {"@trivial", "@semion", "@fibonacci", "@ising"}) {
        CAPTURE(name);
        const RunResult res = run_cli(std::string("verify ") + name + " --no-timing");
        REQUIRE(res.exit_code == 0);
        const Json rep = Json::parse(res.output);
        CHECK(rep["overall"] == "pass");
        CHECK(rep["checks"].size() == 18);
    }
}

TEST_CASE("verify output is byte-identical across runs without timing") {
    const RunResult a = run_cli("verify @ising --no-timing --seed 11");
    const RunResult b = run_cli("verify @ising --no-timing --seed 11");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"ms\"") == std::string::npos);
}

TEST_CASE("verify honors the check filter") {
    const RunResult res = run_cli("verify @semion --no-timing --checks congruence");
    REQUIRE(res.exit_code == 0);
    const Json rep = Json::parse(res.output);
    REQUIRE(rep["checks"].size() == 6);  // the five axioms plus the requested check
    CHECK(rep["checks"].back()["name"] == "congruence");
}

TEST_CASE("verify exits 1 on failing input") {
    const ModularData md = mtcheck::catalog("ising");
    Json doc = mtcheck::serialize_modular_data(md);
    doc["t_exponents"] = Json::array({47, 23, 2});  // swap the last two exponents
    const std::string path = "cli_bad_input.json";
    std::ofstream(path) << doc.dump();
    const RunResult res = run_cli("verify " + path + " --no-timing");
    CHECK(res.exit_code == 1);
    const Json rep = Json::parse(res.output);
    CHECK(rep["overall"] == "fail");
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("verify does_not_exist.json").exit_code == 2);
    CHECK(run_cli("verify @unknown_entry").exit_code == 2);
    CHECK(run_cli("verify @semion --checks nonsense").exit_code == 2);
    CHECK(run_cli("seifert @semion --genus 0 --word S").exit_code == 2);
    CHECK(run_cli("seifert @semion --genus 1").exit_code == 2);  // --word required
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("verify @semion --samples 0").exit_code == 2);
}

TEST_CASE("malformed JSON input exits 2 and names the problem") {
    const std::string path = "cli_malformed.json";
    std::ofstream(path) << "{ not json";
    const RunResult res = run_cli("verify " + path);
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("error:") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("dims table ends at the requested genus") {
    const RunResult res = run_cli("dims @ising --genus-max 2 --pretty");
    REQUIRE(res.exit_code == 0);
    const std::string want = "g=2  dim=10\n";
    REQUIRE(res.output.size() >= want.size());
    CHECK(res.output.substr(res.output.size() - want.size()) == want);
}

TEST_CASE("fusion command reports the nonzero coefficients") {
    const RunResult res = run_cli("fusion @semion");
    REQUIRE(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["status"] == "pass");
    CHECK(j["nonzero"].size() == 4);  // the group Z/2 has four unit coefficients
}

TEST_CASE("galois command lists every unit") {
    const RunResult res = run_cli("galois @ising");
    REQUIRE(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["conductor"] == 48);
    CHECK(j["units"].size() == 16);
    for (const auto& u : j["units"]) CHECK(u["signed_permutation"] == true);
}

TEST_CASE("seifert command evaluates single-word sums") {
    const RunResult res = run_cli("seifert @ising --genus 1 --word S");
    REQUIRE(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["value"]["terms"] == Json::array({Json::array({3, 1, 0})}));
}

TEST_CASE("catalog command lists the built-ins") {
    const RunResult res = run_cli("catalog");
    REQUIRE(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    REQUIRE(j.is_array());
    CHECK(j.size() == 4);
    CHECK(j[0]["name"] == "trivial");
}

TEST_CASE("--out writes the report to a file") {
    const std::string path = "cli_report_out.json";
    const RunResult res = run_cli("verify @trivial --no-timing --out " + path);
    CHECK(res.exit_code == 0);
    CHECK(res.output.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    const Json rep = Json::parse(in);
    CHECK(rep["overall"] == "pass");
    std::remove(path.c_str());
}
