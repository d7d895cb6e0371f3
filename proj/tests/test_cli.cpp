#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sgcell/experiment.hpp"

namespace {

struct RunResult {
    int status;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SGCELL_CLI_BINARY) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    int rc = pclose(pipe);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (first) {
            t.header = cells;
            first = false;
        } else {
            t.rows.push_back(cells);
        }
    }
    return t;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("outage sweep: analytic column hits the averaged closed form") {
    RunResult r = run_cli("outage --sweep threshold-db:-10:10:21");
    REQUIRE(r.status == 0);
    CsvTable t = parse_csv(r.output);
    REQUIRE(t.header.size() == 7);
    CHECK(t.header[0] == "x");
    CHECK(t.header[1] == "analytic");
    CHECK(t.header[2] == "monte_carlo");
    CHECK(t.header[6] == "seed");
    REQUIRE(t.rows.size() == 21);
    bool found = false;
    double prev = -1.0;
    for (const auto& row : t.rows) {
        double x = std::stod(row[0]);
        double a = std::stod(row[1]);
        CHECK(a > prev);  // outage monotone in the threshold
        prev = a;
        if (std::abs(x) < 1e-12) {
            found = true;
            CHECK(a == doctest::Approx(0.43990).epsilon(2e-5));
        }
        CHECK(row[2].empty());  // no --simulate: MC cells empty
    }
    CHECK(found);
}

TEST_CASE("asep sweep over r0 is monotone increasing") {
    RunResult r =
        run_cli("asep --scenario fixed_r0 --mod 4qam --sweep r0:100:500:9");
    REQUIRE(r.status == 0);
    CsvTable t = parse_csv(r.output);
    REQUIRE(t.rows.size() == 9);
    double prev = -1.0;
    for (const auto& row : t.rows) {
        double a = std::stod(row[1]);
        CHECK(a > prev);
        CHECK(a < 1.0);
        prev = a;
    }
}

TEST_CASE("eta at the boundary exits 2 naming the constraint") {
    RunResult r = run_cli("outage --eta 2");
    CHECK(r.status == 2);
    CHECK(r.output.find("eta must be > 2") != std::string::npos);
}

TEST_CASE("other config errors exit 2 with a field diagnostic") {
    RunResult bad_scenario = run_cli("outage --scenario downhill");
    CHECK(bad_scenario.status == 2);
    CHECK(bad_scenario.output.find("scenario") != std::string::npos);

    RunResult bad_sweep = run_cli("outage --sweep threshold-db:5:1:10");
    CHECK(bad_sweep.status == 2);
    CHECK(bad_sweep.output.find("strictly increasing") != std::string::npos);

    RunResult bad_mod = run_cli("asep --mod 3qam");
    CHECK(bad_mod.status == 2);
    CHECK(bad_mod.output.find("mod") != std::string::npos);

    RunResult no_sub = run_cli("");
    CHECK(no_sub.status == 2);
}

TEST_CASE("config file round trip through --dump-config") {
    const char* path = "/tmp/sgcell_cli_roundtrip.cfg";
    RunResult first = run_cli(
        "outage --scenario load_aware --access-probability 0.6 --lambda-bs 2.5 "
        "--simulate --realizations 1234 --seed 77 --dump-config");
    REQUIRE(first.status == 0);
    {
        std::ofstream out(path, std::ios::binary);
        out << first.output;
    }
    RunResult second =
        run_cli(std::string("outage --config ") + path + " --dump-config");
    REQUIRE(second.status == 0);
    CHECK(first.output == second.output);
    // flag wins over the file
    RunResult overridden = run_cli(std::string("outage --config ") + path +
                                   " --seed 99 --dump-config");
    REQUIRE(overridden.status == 0);
    CHECK(overridden.output.find("seed = 99") != std::string::npos);
    std::remove(path);
}

TEST_CASE("config files reject unknown keys with a line number") {
    const char* path = "/tmp/sgcell_cli_badkey.cfg";
    {
        std::ofstream out(path);
        out << "# comment\npower = 10\nwattage = 5\n";
    }
    RunResult r = run_cli(std::string("outage --config ") + path);
    CHECK(r.status == 2);
    CHECK(r.output.find("line 3") != std::string::npos);
    CHECK(r.output.find("wattage") != std::string::npos);
    std::remove(path);
}

TEST_CASE("CSV bytes are identical across worker counts") {
    const char* p1 = "/tmp/sgcell_cli_w1.csv";
    const char* p3 = "/tmp/sgcell_cli_w3.csv";
    std::string base =
        "outage --simulate --realizations 3000 --seed 42 "
        "--sweep threshold-db:-5:5:3 ";
    REQUIRE(run_cli(base + "--workers 1 --out " + p1).status == 0);
    REQUIRE(run_cli(base + "--workers 3 --out " + p3).status == 0);
    std::string b1 = read_file(p1);
    CHECK(b1 == read_file(p3));
    // MC columns populated and CI brackets the estimate
    CsvTable t = parse_csv(b1);
    REQUIRE(t.rows.size() == 3);
    for (const auto& row : t.rows) {
        REQUIRE(row.size() == 7);
        double mc = std::stod(row[2]);
        CHECK(std::stod(row[3]) <= mc);
        CHECK(mc <= std::stod(row[4]));
        CHECK(row[5] == "3000");
        CHECK(row[6] == "42");
    }
    std::remove(p1);
    std::remove(p3);
}

TEST_CASE("library-level config plumbing") {
    using namespace sgcell;
    ExperimentConfig cfg;
    cfg.metric = "outage";
    cfg.lambda_bs_km2 = 2.0;
    CHECK(cfg.network().lambda_bs == doctest::Approx(2e-6));
    CHECK_NOTHROW(cfg.validate());
    cfg.eta = 2.0;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    cfg.eta = 4.0;

    SweepGrid g = resolve_sweep(cfg);
    CHECK(g.var == "threshold-db");
    CHECK(g.points.size() == 21);
    CHECK(g.points.front() == doctest::Approx(-10.0));
    CHECK(g.points.back() == doctest::Approx(10.0));

    cfg.sweep = "r0:100:500:5";
    SweepGrid g2 = resolve_sweep(cfg);
    for (std::size_t i = 1; i < g2.points.size(); ++i)
        CHECK(g2.points[i] > g2.points[i - 1]);

    std::string dumped = dump_config(cfg);
    ExperimentConfig reparsed;
    std::istringstream in(dumped);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
        parse_config_line(reparsed, line, ++line_no);
    CHECK(dump_config(reparsed) == dumped);
}
