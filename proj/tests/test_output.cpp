#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "unruhmet/output.hpp"

#include "test_support.hpp"

using namespace unruhmet;
using namespace testsupport;

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string path = "cli_capture_" + std::to_string(counter++) + ".tmp";
    const std::string command =
        std::string(UNRUHMET_CLI_PATH) + " " + args + " > " + path + " 2>/dev/null";
    const int status = std::system(command.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    std::ifstream file(path, std::ios::binary);
    std::ostringstream content;
    content << file.rdbuf();
    std::remove(path.c_str());
    return CliResult{code, content.str()};
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(field);
    return fields;
}

} // namespace

TEST_CASE("17-significant-digit formatting round-trips") {
    std::mt19937_64 rng(0x17D161ULL);
    for (int i = 0; i < 1000; ++i) {
        const double value = uniform(rng, -20.0, 20.0);
        const std::string text = format_double(value);
        CHECK(std::strtod(text.c_str(), nullptr) == value);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("CSV layout") {
    SweepRecord r1;
    r1.coordinates = {{AxisName::nu, 0.5}, {AxisName::a, 2.0}};
    r1.qfi = 0.25;
    r1.concurrence = 1.0;
    r1.coefficients = StateCoefficients{1.0, 0.0, 0.0};
    SweepRecord r2 = r1;
    r2.flags = {"nu_soft_limit_exceeded", "scale_hierarchy_violated"};

    const std::string csv = records_to_csv({r1, r2});
    CHECK(csv ==
          "nu,a,qfi,concurrence,alpha,beta,gamma,flags\n"
          "0.5,2,0.25,1,1,0,0,\n"
          "0.5,2,0.25,1,1,0,0,nu_soft_limit_exceeded;scale_hierarchy_violated\n");
    CHECK(csv.back() == '\n');
}

TEST_CASE("JSON documents reserialise identically") {
    SweepRecord record;
    record.coordinates = {{AxisName::T, 1.25}};
    record.qfi = 0.0067330871532157166;
    record.concurrence = 0.97128853633129952;
    record.coefficients =
        StateCoefficients{kRefAlpha, kRefBeta, kRefGamma};
    record.flags = {"nu_soft_limit_exceeded"};

    nlohmann::json meta;
    meta["command"] = "sweep";
    meta["theta"] = kQuarterPi;

    const std::string first = records_to_json(meta, {record});
    const std::string second =
        nlohmann::json::parse(first).dump(2) + "\n";
    CHECK(first == second);
}

TEST_CASE("cli: eval with no interaction") {
    const CliResult r = run_cli("eval --nu 0");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc["records"][0]["qfi"].get<double>() == 0.0);
    // Default theta = pi/4: the probe stays maximally entangled.
    CHECK(doc["records"][0]["concurrence"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(doc["records"][0]["alpha"].get<double>() == 1.0);
}

TEST_CASE("cli: eval at the reference point") {
    const CliResult r = run_cli(
        "eval --theta 0.7853981634 --nu 0.1 --omega 1 --temperature 1.442695");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc["records"][0]["qfi"].get<double>() ==
          doctest::Approx(6.73e-3).epsilon(5e-3));
    CHECK(doc["records"][0]["concurrence"].get<double>() ==
          doctest::Approx(0.9713).epsilon(1e-3));
    CHECK(doc["meta"]["coupling"]["nu"].get<double>() == 0.1);
    CHECK(doc["meta"]["kinematics"]["temperature"].get<double>() == 1.442695);
}

TEST_CASE("cli: resolved coupling appears in the metadata") {
    const CliResult r =
        run_cli("eval --epsilon 6.283185307179586e-3 --delta 30 --kappa 0.02");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc["meta"]["coupling"]["mode"] == "physical");
    CHECK(doc["meta"]["coupling"]["nu"].get<double>() ==
          doctest::Approx(0.01372662289382701).epsilon(1e-12));
}

TEST_CASE("cli: Cramer-Rao reporting") {
    const CliResult r = run_cli("eval --n-trials 100");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    const double qfi = doc["records"][0]["qfi"].get<double>();
    CHECK(doc["meta"]["cramer_rao"]["n_trials"].get<int>() == 100);
    CHECK(doc["meta"]["cramer_rao"]["variance_bound"].get<double>() ==
          doctest::Approx(1.0 / (100.0 * qfi)).epsilon(1e-12));
}

TEST_CASE("cli: conflicting coupling or kinematics flags are usage errors") {
    CHECK(run_cli("eval --nu 0.1 --epsilon 1e-3 --delta 30 --kappa 0.02")
              .exit_code == 1);
    CHECK(run_cli("eval --acceleration 1 --temperature 1").exit_code == 1);
    CHECK(run_cli("eval --epsilon 1e-3").exit_code == 1); // partial triple
    CHECK(run_cli("eval --theta 9").exit_code == 1);      // out of domain
    CHECK(run_cli("nonsense").exit_code == 1);
}

TEST_CASE("cli: computation failures exit with code 2") {
    CHECK(run_cli("eval --epsilon 10 --delta 100 --kappa 1e-6").exit_code == 2);
}

TEST_CASE("cli: fig2 CSV has a strictly decreasing concurrence column") {
    const CliResult r = run_cli("figure fig2 --format csv");
    REQUIRE(r.exit_code == 0);
    const std::vector<std::string> lines = split_lines(r.output);
    REQUIRE(lines.size() == 101);
    CHECK(lines[0] == "a,qfi,concurrence,alpha,beta,gamma,flags");
    double previous = 2.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 7);
        const double c = std::strtod(fields[2].c_str(), nullptr);
        CHECK(c < previous);
        previous = c;
    }
}

TEST_CASE("cli: selftest passes and reports identically across runs") {
    const CliResult first = run_cli("selftest");
    const CliResult second = run_cli("selftest");
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(first.output.find("selftest: 6/6 checks passed") != std::string::npos);
}

TEST_CASE("cli: figure output is byte-identical across runs") {
    for (const char* cmd :
         {"figure fig1 --format csv", "figure fig3 --format json"}) {
        const CliResult first = run_cli(cmd);
        const CliResult second = run_cli(cmd);
        CHECK(first.exit_code == 0);
        CHECK(first.output == second.output);
        CHECK(!first.output.empty());
    }
}

TEST_CASE("cli: optimize reports a refined interior maximum") {
    const CliResult r = run_cli(
        "optimize --omega 0.15915494309189535 --nu 0.1 --axis a:0.02:2:100");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc["optimum"]["refined"].get<bool>());
    CHECK(doc["optimum"]["argmax"].get<double>() ==
          doctest::Approx(0.2773580).epsilon(1e-5));
}
