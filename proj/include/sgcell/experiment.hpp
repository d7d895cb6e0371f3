// Batch experiment runner behind the command-line front-end: flat key-value
// configs, sweep grids, and CSV emission for the analytic evaluators with
// optional Monte-Carlo companion columns.
#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sgcell/geometry.hpp"

namespace sgcell {

struct ExperimentConfig {
    std::string metric = "outage";  // outage | rate | asep |
                                    // interference-pdf | ks
    std::string scenario = "random_r0";
    double lambda_bs_km2 = 1.0;  // BS per km²; converted once at the boundary
    double power = 10.0;         // W
    double eta = 4.0;
    double noise = 0.0;  // W
    double r0 = 250.0;   // m, fixed-distance scenarios
    int reuse_delta = 1;
    double access_probability = 1.0;  // load_aware
    double rho = 1.0;                 // uplink power-control target, W
    double threshold_db = 0.0;        // outage threshold when not swept
    std::string tiers_file;  // lines: lambda_km2 power bias [eta]
    std::string mod = "4qam";
    std::string sweep;  // var:lo:hi:steps; empty -> metric default
    bool simulate = false;
    long realizations = 10000;
    std::uint64_t seed = 1;
    std::string out;  // CSV path; empty -> stdout
    int workers = 0;  // 0 -> available parallelism

    void validate() const;       // throws std::domain_error naming the field
    NetworkConfig network() const;
};

// flat `key = value` text, '#' comments; unknown keys are an error with a
// line number
ExperimentConfig load_config_file(const std::string& path);
void parse_config_line(ExperimentConfig& cfg, const std::string& line,
                       int line_no);

// canonical echo that re-parses to the identical experiment
std::string dump_config(const ExperimentConfig& cfg);

struct SweepGrid {
    std::string var;
    std::vector<double> points;  // strictly increasing
};
SweepGrid resolve_sweep(const ExperimentConfig& cfg);

// runs the experiment and writes the CSV; returns the process exit status
// (0 success, 2 config error, 3 numerical failure) with diagnostics on err
int run_experiment(const ExperimentConfig& cfg, std::ostream& err);

// oracle-equivalence spot checks for the `validate` subcommand
int run_validation(std::ostream& out);

}  // namespace sgcell
