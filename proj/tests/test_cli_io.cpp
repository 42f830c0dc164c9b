#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "floerkit/json_io.hpp"

using namespace floerkit;
using floerkit::io::json;

namespace {

#ifndef FLOERKIT_CLI_PATH
#define FLOERKIT_CLI_PATH "floerkit"
#endif

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(FLOERKIT_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buffer{};
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    int status = pclose(pipe);
    result.exit_code = WEXITSTATUS(status);
    return result;
}

}  // namespace

TEST_CASE("series and matrix round trip") {
    auto s = TruncatedSeries::from_coeffs(5, 6, {1, 0, 4, 2});
    auto back = io::series_from_json(io::series_to_json(s), 5, 6);
    CHECK(back == s);
    SeriesMatrix m(2, 3, 5, 6);
    m.set(0, 1, s);
    m.set(1, 2, TruncatedSeries::x_power(5, 6, 3));
    auto mj = io::matrix_to_json(m);
    CHECK(io::matrix_from_json(mj) == m);
}

TEST_CASE("complex round trip and validation") {
    SeriesMatrix d(2, 2, 3, 8);
    d.set(0, 1, TruncatedSeries::x_power(3, 8, 2));
    ChainComplex c({{"a", 0}, {"b", 1}}, d);
    auto cj = io::complex_to_json(c);
    auto back = io::complex_from_json(cj);
    CHECK(back.size() == 2);
    CHECK(back.differential() == c.differential());
    CHECK(back.generators()[1].degree == 1);
    // invalid: differential not squaring to zero
    json bad = cj;
    bad["differential"][1][0] = json::array({1});
    CHECK_THROWS(io::complex_from_json(bad));
}

TEST_CASE("diagram json with unit label") {
    json obj;
    obj["p"] = 2;
    obj["precision"] = 8;
    obj["slopes"] = {0.0, 1.0};
    json cx;
    cx["generators"] = json::array({{{"label", "e"}, {"degree", 0}}});
    cx["differential"] = json::array({json::array({json::array({0})})});
    obj["complexes"] = json::array({cx, cx});
    obj["maps"] = json::array({json::array({json::array({json::array({0, 1})})})});
    obj["unit"] = "e";
    auto d = io::diagram_from_json(obj);
    CHECK(d.length() == 2);
    CHECK(d.has_unit());
    auto mu0 = mu_from_diagram(d, 0);
    auto mu1 = mu_from_diagram(d, 1);
    CHECK(mu0.value == 0);
    CHECK(mu1.value == 1);
}

TEST_CASE("cli cz prints the index and exits zero") {
    auto r = run_cli(
        "cz '{\"n\":2,\"segments\":[{\"type\":\"exp\",\"S\":[[3.14159265358979,0,0,0],"
        "[0,3.14159265358979,0,0],[0,0,3.14159265358979,0],[0,0,0,3.14159265358979]],"
        "\"duration\":1.0}]}'");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "2\n");
}

TEST_CASE("cli paths matches the worked example") {
    auto r = run_cli("paths --n 3 --cube 1/2,1/2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("taus: 0 7/4 5/2 3") != std::string::npos);
}

TEST_CASE("cli exit codes: verification failure vs input error") {
    // a one-simplex whose edge map is not a chain map: structural error -> 2
    auto bad_json = run_cli("nerve-verify '{\"p\":2 nope'");
    CHECK(bad_json.exit_code == 2);
    // strict composition 2-simplex verifies -> 0
    std::string good =
        "nerve-verify '{\"p\":2,\"precision\":4,\"vertices\":["
        "{\"generators\":[{\"label\":\"a\",\"degree\":0}],\"differential\":[[[0]]]},"
        "{\"generators\":[{\"label\":\"b\",\"degree\":0}],\"differential\":[[[0]]]},"
        "{\"generators\":[{\"label\":\"c\",\"degree\":0}],\"differential\":[[[0]]]}],"
        "\"maps\":{\"01\":[[[1]]],\"12\":[[[1]]],\"02\":[[[1]]],\"012\":[[[0]]]}}'";
    CHECK(run_cli(good).exit_code == 0);
    // broken composition: residual nonzero -> 1
    std::string broken =
        "nerve-verify '{\"p\":2,\"precision\":4,\"vertices\":["
        "{\"generators\":[{\"label\":\"a\",\"degree\":0}],\"differential\":[[[0]]]},"
        "{\"generators\":[{\"label\":\"b\",\"degree\":0}],\"differential\":[[[0]]]},"
        "{\"generators\":[{\"label\":\"c\",\"degree\":0}],\"differential\":[[[0]]]}],"
        "\"maps\":{\"01\":[[[1]]],\"12\":[[[1]]],\"02\":[[[0]]],\"012\":[[[0]]]}}'";
    CHECK(run_cli(broken).exit_code == 1);
}

TEST_CASE("cli json output is byte-deterministic") {
    std::string cmd = "-f json morse-eq pt:p=3 --level 6";
    auto first = run_cli(cmd);
    auto second = run_cli(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(!first.output.empty());
}

TEST_CASE("precision environment override") {
    // precision 4 limits the torsion bound of the free-orbit model's unit
    std::string cmd = "FLOERKIT_PRECISION=4 " FLOERKIT_CLI_PATH " -f json morse-eq free-orbit:p=3 2>/dev/null";
    std::array<char, 4096> buffer{};
    std::string output;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        output.append(buffer.data(), got);
    pclose(pipe);
    auto parsed = json::parse(output);
    CHECK(parsed.at("unit").get<std::string>() == "TORSION");
}
