// Command-line front-end: one experiment per invocation, CSV out.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sgcell/experiment.hpp"

namespace {

struct Flags {
    std::string config_path;
    bool dump = false;
    std::string scenario, tiers, mod, sweep, out;
    double lambda_bs = 0, power = 0, eta = 0, noise = 0, r0 = 0;
    double access_probability = 0, rho = 0, threshold_db = 0;
    int reuse = 0, workers = 0;
    long realizations = 0;
    std::uint64_t seed = 0;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path,
                    "flat key = value config file; flags win over file keys");
    cmd->add_flag("--dump-config", f.dump,
                  "echo the resolved config and exit");
    cmd->add_option("--scenario", f.scenario,
                    "fixed_r0|random_r0|load_aware|multitier|reuse|uplink");
    cmd->add_option("--lambda-bs", f.lambda_bs, "BS intensity, per km^2");
    cmd->add_option("--power", f.power, "transmit power, W");
    cmd->add_option("--eta", f.eta, "path-loss exponent (> 2)");
    cmd->add_option("--noise", f.noise, "noise power N0, W");
    cmd->add_option("--r0", f.r0, "service distance, m");
    cmd->add_option("--reuse", f.reuse, "frequency reuse factor");
    cmd->add_option("--access-probability", f.access_probability,
                    "load-aware channel access probability");
    cmd->add_option("--rho", f.rho, "uplink power-control target, W");
    cmd->add_option("--threshold-db", f.threshold_db,
                    "outage SINR threshold when not swept, dB");
    cmd->add_option("--tiers", f.tiers,
                    "tier file: lambda_km2 power bias [eta] per line");
    cmd->add_option("--mod", f.mod, "bpsk|qpsk|4qam|16qam|64qam|8psk");
    cmd->add_option("--sweep", f.sweep, "var:lo:hi:steps");
    cmd->add_option("--realizations", f.realizations,
                    "Monte-Carlo realizations");
    cmd->add_option("--seed", f.seed, "Monte-Carlo seed");
    cmd->add_option("--out", f.out, "CSV output path (default stdout)");
    cmd->add_option("--workers", f.workers,
                    "simulation threads (0 = available parallelism)");
}

// flags win over config-file keys
void merge(const CLI::App* cmd, const Flags& f, bool simulate,
           sgcell::ExperimentConfig& cfg) {
    if (cmd->count("--scenario")) cfg.scenario = f.scenario;
    if (cmd->count("--lambda-bs")) cfg.lambda_bs_km2 = f.lambda_bs;
    if (cmd->count("--power")) cfg.power = f.power;
    if (cmd->count("--eta")) cfg.eta = f.eta;
    if (cmd->count("--noise")) cfg.noise = f.noise;
    if (cmd->count("--r0")) cfg.r0 = f.r0;
    if (cmd->count("--reuse")) cfg.reuse_delta = f.reuse;
    if (cmd->count("--access-probability"))
        cfg.access_probability = f.access_probability;
    if (cmd->count("--rho")) cfg.rho = f.rho;
    if (cmd->count("--threshold-db")) cfg.threshold_db = f.threshold_db;
    if (cmd->count("--tiers")) cfg.tiers_file = f.tiers;
    if (cmd->count("--mod")) cfg.mod = f.mod;
    if (cmd->count("--sweep")) cfg.sweep = f.sweep;
    if (simulate) cfg.simulate = true;
    if (cmd->count("--realizations")) cfg.realizations = f.realizations;
    if (cmd->count("--seed")) cfg.seed = f.seed;
    if (cmd->count("--out")) cfg.out = f.out;
    if (cmd->count("--workers")) cfg.workers = f.workers;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Stochastic-geometry cellular interference analysis: analytic "
        "evaluators with a Monte-Carlo oracle"};
    app.require_subcommand(1);

    struct Sub {
        CLI::App* cmd;
        Flags flags;
        bool simulate = false;
        std::string metric;
    };
    std::vector<Sub> subs;
    subs.reserve(8);  // CLI11 binds to field addresses: no reallocation
    auto add_metric = [&](const char* name, const char* help) {
        Sub s;
        s.cmd = app.add_subcommand(name, help);
        s.metric = name;
        add_common_flags(s.cmd, subs.emplace_back(std::move(s)).flags);
        subs.back().cmd->add_flag("--simulate", subs.back().simulate,
                                  "add Monte-Carlo columns");
    };
    add_metric("outage", "SINR CDF at swept thresholds");
    add_metric("rate", "ergodic rate in nats");
    add_metric("asep", "average symbol error probability");
    add_metric("interference-pdf",
               "per-dimension aggregate interference density");
    add_metric("ks", "KS distance to the matched-variance Gaussian");
    CLI::App* validate =
        app.add_subcommand("validate", "run the oracle-equivalence suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (validate->parsed()) return sgcell::run_validation(std::cout);

    for (const Sub& s : subs) {
        if (!s.cmd->parsed()) continue;
        sgcell::ExperimentConfig cfg;
        try {
            if (s.cmd->count("--config"))
                cfg = sgcell::load_config_file(s.flags.config_path);
            cfg.metric = s.metric;
            merge(s.cmd, s.flags, s.simulate, cfg);
            if (s.flags.dump) {
                cfg.validate();
                std::cout << sgcell::dump_config(cfg);
                return 0;
            }
        } catch (const std::domain_error& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return 2;
        }
        return sgcell::run_experiment(cfg, std::cerr);
    }
    return 2;
}
