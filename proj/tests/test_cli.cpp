#include "tabor/scenario_io.hpp"
#include "tabor/series.hpp"

#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace tabor;

namespace {

std::string bin() {
    const char* b = std::getenv("TABOR_SVA_BIN");
    REQUIRE(b != nullptr);
    return b;
}

std::string scenarios_dir() {
    const char* d = std::getenv("TABOR_SVA_SCENARIOS");
    REQUIRE(d != nullptr);
    return d;
}

int run(const std::string& cmd) {
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("exit code contract on the bundled scenarios") {
    std::string sd = scenarios_dir();
    CHECK(run(bin() + " verify " + sd + "/sharp_tau2.json --depth 4 --no-extensions >/dev/null") == 0);
    CHECK(run(bin() + " verify " + sd + "/concave_negative_control.json >/dev/null") == 3);
    CHECK(run(bin() + " verify " + sd + "/induction_gap.json --depth 4 >/dev/null") == 1);

    std::ofstream bad("cli_bad.json");
    bad << "{\"domain\": \"nope\"}";
    bad.close();
    CHECK(run(bin() + " verify cli_bad.json >/dev/null 2>&1") == 2);

    // depth 0: hypothesis stage only, and induction_gap's hypotheses pass
    CHECK(run(bin() + " verify " + sd + "/induction_gap.json --depth 0 >/dev/null") == 0);

    // the reading flag switches the induction coefficient convention; the
    // halved-B reading breaks the two-template sharp equality
    CHECK(run(bin() + " verify " + sd + "/sharp_two_sided.json --depth 3 --reading cvn-b"
              " --no-mutations >/dev/null") == 0);
    CHECK(run(bin() + " verify " + sd + "/sharp_two_sided.json --depth 3 --reading cvn-a"
              " --no-mutations >/dev/null") == 1);
}

TEST_CASE("verify output is deterministic and JSON lines parse") {
    std::string cmd = bin() + " verify " + scenarios_dir() +
                      "/sharp_tau2.json --depth 3 --no-extensions --json > cli_run";
    CHECK(run(cmd + "1.txt") == 0);
    CHECK(run(cmd + "2.txt") == 0);
    std::string first = slurp("cli_run1.txt");
    CHECK(first == slurp("cli_run2.txt"));

    std::istringstream lines(first);
    std::string line;
    std::size_t count = 0;
    bool saw_summary = false;
    while (std::getline(lines, line)) {
        Json j = Json::parse(line);  // throws on malformed output
        if (j.contains("summary")) {
            saw_summary = true;
            CHECK(j["summary"]["exit_code"] == 0);
        }
        ++count;
    }
    CHECK(saw_summary);
    CHECK(count > 5);
}

TEST_CASE("eval CSV: tau alpha=2 tracks 4t(1-t) within the stated bound") {
    CHECK(run(bin() + " eval --function tau --alpha 2 --grid 1000 --tol 5e-11 --out cli_tau2.csv") == 0);
    std::istringstream csv(slurp("cli_tau2.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,value,error_bound,t_exact,value_exact");
    std::string line;
    std::size_t rows = 0;
    double prev_t = -1.0;
    while (std::getline(csv, line)) {
        double t = 0, value = 0, err = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &value, &err) == 3);
        CHECK(std::abs(value - 4.0 * t * (1.0 - t)) <= err + 1e-12);
        CHECK(t > prev_t);  // ascending grid
        prev_t = t;
        ++rows;
    }
    CHECK(rows == 1001);

    CHECK(run(bin() + " eval --function tau --alpha 2 --grid 1000 --tol 5e-11 --out cli_tau2b.csv") == 0);
    CHECK(slurp("cli_tau2.csv") == slurp("cli_tau2b.csv"));
}

TEST_CASE("eval CSV: takagi grid containing 1/2 emits the exact row") {
    CHECK(run(bin() + " eval --function takagi --grid 8 --tol 1e-12 --out cli_tak.csv") == 0);
    std::string data = slurp("cli_tak.csv");
    CHECK(data.find("0.5,0.5,0,1/2,1/2") != std::string::npos);
}

TEST_CASE("eval CSV: tau alpha=1 on a dyadic grid matches the exact finite sums") {
    CHECK(run(bin() + " eval --function tau --alpha 1 --grid 64 --tol 1e-12 --out cli_tau1.csv") == 0);
    std::istringstream csv(slurp("cli_tau1.csv"));
    std::string line;
    std::getline(csv, line);  // header
    int j = 0;
    while (std::getline(csv, line)) {
        auto last_comma = line.rfind(',');
        std::string value_exact = line.substr(last_comma + 1);
        REQUIRE(!value_exact.empty());
        Rational expected = tau_alpha_dyadic_exact(1, DyadicRational(Int(j), 6));
        CHECK(rational_from_string(value_exact) == expected);
        ++j;
    }
    CHECK(j == 65);
}

TEST_CASE("set-dump blocks") {
    std::string sd = scenarios_dir();
    // t = 1/2: the transform blocks equal the one-term evaluations
    CHECK(run(bin() + " set-dump " + sd + "/sharp_tau2.json --t 1/2 --pair 0 --out cli_dump_half.csv") == 0);
    std::string half = slurp("cli_dump_half.csv");
    // pair 0 is (-1, 1), so u = -2 and A(u) = {-1}: one point, no rays
    CHECK(half.find("A_perp,0,point,-1,") != std::string::npos);
    CHECK(half.find("B_perp,0,ray,1,") != std::string::npos);

    // t = 0: both transform blocks are the single generator 0
    CHECK(run(bin() + " set-dump " + sd + "/sharp_tau2.json --t 0 --pair 0 --out cli_dump_zero.csv") == 0);
    std::string zero = slurp("cli_dump_zero.csv");
    CHECK(zero.find("A_perp,0,point,0,0\n") != std::string::npos);
    CHECK(zero.find("A_perp,0,ray") == std::string::npos);
    CHECK(zero.find("B_perp,0,point,0,0\n") != std::string::npos);

    // sharp scenario at t = 3/8: LHS and RHS describe the same half-line
    CHECK(run(bin() + " set-dump " + sd + "/sharp_tau2.json --t 3/8 --pair 0 --out cli_dump38.csv") == 0);
    std::string dump38 = slurp("cli_dump38.csv");
    auto block = [&](const std::string& name) {
        std::istringstream lines(dump38);
        std::string line, lo;
        while (std::getline(lines, line))
            if (line.rfind(name + ",", 0) == 0 && line.find("point") != std::string::npos) {
                auto fields = line;
                // last point line wins; the sharp LHS/RHS are single points + up ray
                lo = fields;
            }
        return lo;
    };
    std::string lhs = block("LHS"), rhs = block("RHS");
    REQUIRE(!lhs.empty());
    // identical generator coordinates after block and part prefixes
    auto coords = [](const std::string& line) { return line.substr(line.find(",point,")); };
    CHECK(coords(lhs) == coords(rhs));

    // exactness gate: non-dyadic t is rejected
    CHECK(run(bin() + " set-dump " + sd + "/sharp_tau2.json --t 1/3 --out cli_dump_bad.csv 2>/dev/null") == 2);
}

TEST_CASE("scenario JSON round trip is the identity on the bundled pool") {
    for (const char* name : {"sharp_tau2", "concave_negative_control", "induction_gap",
                             "sharp_two_sided"}) {
        std::string path = scenarios_dir() + "/" + name + ".json";
        Scenario sc = load_scenario(path);
        Json first = scenario_to_json(sc);
        Scenario reparsed = scenario_from_json(first);
        Json second = scenario_to_json(reparsed);
        CHECK(first == second);
    }
}

TEST_CASE("generator set JSON round trip") {
    GeneratorSet g(2,
                   {{Rational(1, 3), Rational(-7, 2)}, {Rational(0), Rational(5)}},
                   {{Rational(2), Rational(1)}});
    GeneratorSet back = generator_set_from_json(generator_set_to_json(g));
    CHECK(back.dim == g.dim);
    CHECK(sets_equal(back, g));
    CHECK(generator_set_to_json(back) == generator_set_to_json(g));

    CHECK_THROWS_AS(generator_set_from_json(Json::parse("{\"dim\":1,\"points\":[]}")),
                    ScenarioError);
    CHECK_THROWS_AS(rational_from_json(Json::parse("[\"1\",\"0\"]")), ScenarioError);
}
