#include "sgcell/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sgcell/interference.hpp"
#include "sgcell/metrics.hpp"
#include "sgcell/numerics.hpp"
#include "sgcell/simulator.hpp"
#include "sgcell/transforms.hpp"

namespace sgcell {
namespace {

// 9 significant digits, locale-independent
std::string fmt9(double v) {
    char buf[40];
    auto res =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::domain_error("config: key '" + key +
                                "' expects a number, got '" + v + "'");
    }
}

long parse_long(const std::string& v, const std::string& key) {
    double d = parse_double(v, key);
    if (d != std::floor(d))
        throw std::domain_error("config: key '" + key +
                                "' expects an integer, got '" + v + "'");
    return static_cast<long>(d);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::domain_error("config: key '" + key + "' expects true/false");
}

const std::vector<std::string> kScenarios = {
    "fixed_r0", "random_r0", "load_aware", "multitier",
    "reuse",    "uplink"};

struct ModChoice {
    ModulationScheme scheme;
    Constellation constellation;
};

ModChoice modulation_by_name(const std::string& name) {
    if (name == "bpsk") return {ModulationScheme::bpsk(), Constellation::bpsk()};
    if (name == "qpsk" || name == "4qam")
        return {ModulationScheme::mqam(4), Constellation::qam(4)};
    if (name == "16qam") return {ModulationScheme::mqam(16), Constellation::qam(16)};
    if (name == "64qam") return {ModulationScheme::mqam(64), Constellation::qam(64)};
    if (name == "8psk") return {ModulationScheme::mpsk_ub(8), Constellation::psk(8)};
    throw std::domain_error(
        "config: mod must be one of bpsk, qpsk, 4qam, 16qam, 64qam, 8psk");
}

TierSet load_tiers_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("config: cannot open tiers file " + path);
    TierSet tiers;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        std::istringstream row(body);
        Tier t{0, 0, 1.0, 4.0};
        if (!(row >> t.lambda >> t.power))
            throw std::domain_error("tiers file line " +
                                    std::to_string(line_no) +
                                    ": expected `lambda_km2 power [bias [eta]]`");
        row >> t.bias >> t.eta;
        t.lambda *= 1e-6;  // per km² on the surface, per m² inside
        tiers.tiers.push_back(t);
    }
    tiers.validate();
    return tiers;
}

}  // namespace

NetworkConfig ExperimentConfig::network() const {
    NetworkConfig net;
    net.lambda_bs = lambda_bs_km2 * 1e-6;
    net.power = power;
    net.eta = eta;
    net.noise = noise;
    net.exclusion_radius = scenario == "fixed_r0" ? r0 : 0.0;
    return net;
}

void ExperimentConfig::validate() const {
    static const std::vector<std::string> kMetrics = {
        "outage", "rate", "asep", "interference-pdf", "ks"};
    if (std::find(kMetrics.begin(), kMetrics.end(), metric) == kMetrics.end())
        throw std::domain_error("config: unknown metric '" + metric + "'");
    if (std::find(kScenarios.begin(), kScenarios.end(), scenario) ==
        kScenarios.end())
        throw std::domain_error("config: unknown scenario '" + scenario + "'");
    network().validate();  // eta/lambda/power/noise constraints
    if (r0 <= 0) throw std::domain_error("config: r0 must be > 0");
    if (reuse_delta < 1)
        throw std::domain_error("config: reuse must be >= 1");
    if (access_probability <= 0 || access_probability > 1)
        throw std::domain_error("config: access-probability in (0, 1]");
    if (rho <= 0) throw std::domain_error("config: rho must be > 0");
    if (realizations < 1)
        throw std::domain_error("config: realizations must be >= 1");
    if (workers < 0) throw std::domain_error("config: workers must be >= 0");
    modulation_by_name(mod);
    if (scenario == "multitier" && tiers_file.empty())
        throw std::domain_error("config: multitier needs a tiers file");
    if ((metric == "interference-pdf" || metric == "ks") &&
        scenario != "fixed_r0")
        throw std::domain_error("config: metric '" + metric +
                                "' requires scenario fixed_r0");
    if (!sweep.empty()) resolve_sweep(*this);  // grid shape errors
}

void parse_config_line(ExperimentConfig& cfg, const std::string& line,
                       int line_no) {
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) return;
    std::size_t eq = body.find('=');
    if (eq == std::string::npos)
        throw std::domain_error("config line " + std::to_string(line_no) +
                                ": expected `key = value`");
    std::string key = trim(body.substr(0, eq));
    std::string val = trim(body.substr(eq + 1));
    if (key == "metric") cfg.metric = val;
    else if (key == "scenario") cfg.scenario = val;
    else if (key == "lambda-bs") cfg.lambda_bs_km2 = parse_double(val, key);
    else if (key == "power") cfg.power = parse_double(val, key);
    else if (key == "eta") cfg.eta = parse_double(val, key);
    else if (key == "noise") cfg.noise = parse_double(val, key);
    else if (key == "r0") cfg.r0 = parse_double(val, key);
    else if (key == "reuse") cfg.reuse_delta = static_cast<int>(parse_long(val, key));
    else if (key == "access-probability") cfg.access_probability = parse_double(val, key);
    else if (key == "rho") cfg.rho = parse_double(val, key);
    else if (key == "threshold-db") cfg.threshold_db = parse_double(val, key);
    else if (key == "tiers") cfg.tiers_file = val;
    else if (key == "mod") cfg.mod = val;
    else if (key == "sweep") cfg.sweep = val;
    else if (key == "simulate") cfg.simulate = parse_bool(val, key);
    else if (key == "realizations") cfg.realizations = parse_long(val, key);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(val, key));
    else if (key == "out") cfg.out = val;
    else if (key == "workers") cfg.workers = static_cast<int>(parse_long(val, key));
    else
        throw std::domain_error("config line " + std::to_string(line_no) +
                                ": unknown key '" + key + "'");
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("config: cannot open " + path);
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) parse_config_line(cfg, line, ++line_no);
    return cfg;
}

std::string dump_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "metric = " << c.metric << '\n'
        << "scenario = " << c.scenario << '\n'
        << "lambda-bs = " << fmt9(c.lambda_bs_km2) << '\n'
        << "power = " << fmt9(c.power) << '\n'
        << "eta = " << fmt9(c.eta) << '\n'
        << "noise = " << fmt9(c.noise) << '\n'
        << "r0 = " << fmt9(c.r0) << '\n'
        << "reuse = " << c.reuse_delta << '\n'
        << "access-probability = " << fmt9(c.access_probability) << '\n'
        << "rho = " << fmt9(c.rho) << '\n'
        << "threshold-db = " << fmt9(c.threshold_db) << '\n';
    if (!c.tiers_file.empty()) out << "tiers = " << c.tiers_file << '\n';
    out << "mod = " << c.mod << '\n';
    if (!c.sweep.empty()) out << "sweep = " << c.sweep << '\n';
    out << "simulate = " << (c.simulate ? "true" : "false") << '\n'
        << "realizations = " << c.realizations << '\n'
        << "seed = " << c.seed << '\n';
    if (!c.out.empty()) out << "out = " << c.out << '\n';
    out << "workers = " << c.workers << '\n';
    return out.str();
}

SweepGrid resolve_sweep(const ExperimentConfig& cfg) {
    std::string spec = cfg.sweep;
    if (spec.empty()) {
        if (cfg.metric == "outage") spec = "threshold-db:-10:10:21";
        else if (cfg.metric == "rate") spec = "lambda-bs:1:10:10";
        else if (cfg.metric == "asep") spec = "r0:100:500:9";
        else if (cfg.metric == "ks") spec = "r0:150:500:8";
        else {  // interference-pdf: cover +-4 per-dimension std deviations
            SignalingMode mode =
                SignalingMode::exact(modulation_by_name(cfg.mod).constellation);
            double sigma =
                std::sqrt(cumulant(2, cfg.network(), mode, cfg.r0));
            spec = "x:" + fmt9(-4.0 * sigma) + ":" + fmt9(4.0 * sigma) + ":41";
        }
    }
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t colon = spec.find(':', pos);
        parts.push_back(spec.substr(pos, colon - pos));
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (parts.size() != 4)
        throw std::domain_error("config: sweep must be var:lo:hi:steps");
    static const std::vector<std::string> kVars = {
        "threshold-db", "r0",   "lambda-bs", "power",
        "noise",        "rho",  "access-probability", "x"};
    if (std::find(kVars.begin(), kVars.end(), parts[0]) == kVars.end())
        throw std::domain_error("config: unknown sweep variable '" + parts[0] +
                                "'");
    double lo = parse_double(parts[1], "sweep lo");
    double hi = parse_double(parts[2], "sweep hi");
    long steps = parse_long(parts[3], "sweep steps");
    if (steps < 1 || (steps > 1 && !(lo < hi)))
        throw std::domain_error(
            "config: sweep grid must be nonempty and strictly increasing");
    SweepGrid grid;
    grid.var = parts[0];
    for (long i = 0; i < steps; ++i)
        grid.points.push_back(
            steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                       static_cast<double>(steps - 1));
    return grid;
}

namespace {

// sweep variables other than threshold-db / x change the sampled field
bool sweep_changes_field(const std::string& var) {
    return var != "threshold-db" && var != "x";
}

ExperimentConfig with_sweep_value(const ExperimentConfig& base,
                                  const std::string& var, double v) {
    ExperimentConfig c = base;
    if (var == "threshold-db") c.threshold_db = v;
    else if (var == "r0") c.r0 = v;
    else if (var == "lambda-bs") c.lambda_bs_km2 = v;
    else if (var == "power") c.power = v;
    else if (var == "noise") c.noise = v;
    else if (var == "rho") c.rho = v;
    else if (var == "access-probability") c.access_probability = v;
    // "x" is an evaluation point, not a parameter
    return c;
}

LaplaceTransform scenario_lt(const ExperimentConfig& c) {
    NetworkConfig net = c.network();
    if (c.scenario == "fixed_r0") return make_lt_baseline(net, c.r0);
    if (c.scenario == "random_r0") return make_lt_random_distance();
    if (c.scenario == "load_aware")
        return make_lt_load_aware(c.access_probability);
    if (c.scenario == "reuse")
        return make_lt_frequency_reuse(net.lambda_bs, c.reuse_delta);
    if (c.scenario == "uplink") return make_lt_uplink();
    if (c.scenario == "multitier")
        return make_lt_multitier(load_tiers_file(c.tiers_file));
    throw std::domain_error("config: scenario '" + c.scenario +
                            "' has no Laplace transform for this metric");
}

double analytic_outage(const ExperimentConfig& c) {
    double t = std::pow(10.0, c.threshold_db / 10.0);
    if (c.scenario == "fixed_r0")
        return sinr_cdf(t, scenario_lt(c), c.network(), c.r0);
    return sinr_cdf(t, scenario_lt(c));
}

double analytic_rate(const ExperimentConfig& c) {
    ErgodicRate r = c.scenario == "fixed_r0"
                        ? ergodic_rate(scenario_lt(c), c.network(), c.r0)
                        : ergodic_rate(scenario_lt(c));
    return r.nats;  // infinity when divergent
}

double analytic_asep(const ExperimentConfig& c) {
    ModChoice mod = modulation_by_name(c.mod);
    if (c.scenario == "fixed_r0")
        return asep_eid(c.r0, c.network(), mod.constellation, mod.scheme);
    if (c.scenario == "random_r0")
        return asep_gaussian(mod.scheme, make_lt_random_distance());
    throw std::domain_error(
        "config: asep supports scenarios fixed_r0 and random_r0");
}

double analytic_density(const ExperimentConfig& c, double x) {
    SignalingMode mode =
        SignalingMode::exact(modulation_by_name(c.mod).constellation);
    NetworkConfig net = c.network();
    auto cf = [&](double w) {
        return std::complex<double>(cf_aggregate(w, net, mode, c.r0), 0.0);
    };
    return gil_pelaez_density(cf, x);
}

// per-dimension exact CDF on a grid via normalized cumulative density
std::pair<std::vector<double>, std::vector<double>> exact_cdf_grid(
    const ExperimentConfig& c) {
    SignalingMode mode =
        SignalingMode::exact(modulation_by_name(c.mod).constellation);
    NetworkConfig net = c.network();
    double sigma = std::sqrt(cumulant(2, net, mode, c.r0));
    const int kPts = 161;
    std::vector<double> grid(kPts), cdf(kPts), pdf(kPts);
    auto cf = [&](double w) {
        return std::complex<double>(cf_aggregate(w, net, mode, c.r0), 0.0);
    };
    for (int i = 0; i < kPts; ++i) {
        grid[i] = -5.0 * sigma + 10.0 * sigma * i / (kPts - 1);
        pdf[i] = std::max(0.0, gil_pelaez_density(cf, grid[i]));
    }
    double mass = 0.0;
    cdf[0] = 0.0;
    for (int i = 1; i < kPts; ++i) {
        mass += 0.5 * (pdf[i - 1] + pdf[i]) * (grid[i] - grid[i - 1]);
        cdf[i] = mass;
    }
    for (double& v : cdf) v /= mass;  // tail mass beyond 5 sigma is dropped
    return {grid, cdf};
}

double analytic_ks(const ExperimentConfig& c) {
    auto [grid, cdf] = exact_cdf_grid(c);
    SignalingMode mode =
        SignalingMode::exact(modulation_by_name(c.mod).constellation);
    double sigma = std::sqrt(cumulant(2, c.network(), mode, c.r0));
    auto exact = [&](double x) {
        auto it = std::lower_bound(grid.begin(), grid.end(), x);
        if (it == grid.begin()) return 0.0;
        if (it == grid.end()) return 1.0;
        std::size_t i = it - grid.begin();
        double w = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
        return cdf[i - 1] + w * (cdf[i] - cdf[i - 1]);
    };
    auto gauss = [&](double x) {
        return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0)));
    };
    return ks_distance(exact, gauss, grid);
}

SimulationPlan build_plan(const ExperimentConfig& c) {
    SimulationPlan plan;
    if (c.scenario == "fixed_r0") plan.scenario = SimulationPlan::Scenario::fixed_r0;
    else if (c.scenario == "random_r0") plan.scenario = SimulationPlan::Scenario::random_r0;
    else if (c.scenario == "load_aware") plan.scenario = SimulationPlan::Scenario::load_aware;
    else if (c.scenario == "multitier") plan.scenario = SimulationPlan::Scenario::multitier;
    else if (c.scenario == "reuse") plan.scenario = SimulationPlan::Scenario::reuse;
    else if (c.scenario == "uplink") plan.scenario = SimulationPlan::Scenario::uplink;
    else
        throw std::domain_error("config: scenario '" + c.scenario +
                                "' cannot be simulated");
    plan.cfg = c.network();
    plan.access_probability = c.access_probability;
    if (plan.scenario == SimulationPlan::Scenario::multitier)
        plan.tiers = load_tiers_file(c.tiers_file);
    plan.reuse_delta = c.reuse_delta;
    plan.rho = c.rho;
    plan.realizations = c.realizations;
    plan.seed = c.seed;
    plan.workers = c.workers > 0
                       ? c.workers
                       : std::max(1u, std::thread::hardware_concurrency());
    return plan;
}

struct McColumns {
    double value, ci_low, ci_high;
};

constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% normal quantile

McColumns mc_outage(const EmpiricalDistribution& d, double threshold_db) {
    double t = std::pow(10.0, threshold_db / 10.0);
    auto ci = d.ci(t, 0.99);
    return {d.cdf(t), ci.low, ci.high};
}

McColumns mc_rate(const EmpiricalDistribution& d) {
    double sum = 0.0, sum2 = 0.0;
    for (double s : d.sorted_samples()) {
        double v = std::log1p(s);
        sum += v;
        sum2 += v * v;
    }
    double n = static_cast<double>(d.size());
    double mean = sum / n;
    double se = std::sqrt(std::max(0.0, sum2 / n - mean * mean) / n);
    return {mean, mean - kZ99 * se, mean + kZ99 * se};
}

McColumns mc_asep(const ExperimentConfig& c) {
    if (c.scenario != "fixed_r0")
        throw std::domain_error(
            "config: asep simulation requires scenario fixed_r0");
    ModChoice mod = modulation_by_name(c.mod);
    SimulationPlan plan = build_plan(c);
    plan.symbols_per_realization = 64;
    SepEstimate sep = simulate_symbol_errors(
        plan.cfg, mod.constellation, SignalingMode::exact(mod.constellation),
        plan);
    return {sep.sep, sep.sep - kZ99 * sep.std_error,
            sep.sep + kZ99 * sep.std_error};
}

std::vector<double> field_real_parts(const ExperimentConfig& c) {
    SimulationPlan plan = build_plan(c);
    SignalingMode mode =
        SignalingMode::exact(modulation_by_name(c.mod).constellation);
    std::vector<std::complex<double>> field =
        simulate_downlink_field(plan.cfg, mode, c.r0, plan);
    std::vector<double> re(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) re[i] = field[i].real();
    return re;
}

McColumns mc_density(const EmpiricalDistribution& d, double x, double h) {
    double n = static_cast<double>(d.size());
    double p = d.cdf(x + h) - d.cdf(x - h);
    double dens = p / (2.0 * h);
    double se = std::sqrt(std::max(0.0, p * (1.0 - p)) / n) / (2.0 * h);
    return {dens, dens - kZ99 * se, dens + kZ99 * se};
}

McColumns mc_ks(const ExperimentConfig& c, const EmpiricalDistribution& d) {
    SignalingMode mode =
        SignalingMode::exact(modulation_by_name(c.mod).constellation);
    double sigma = std::sqrt(cumulant(2, c.network(), mode, c.r0));
    std::vector<double> grid;
    for (int i = 0; i <= 160; ++i)
        grid.push_back(-5.0 * sigma + 10.0 * sigma * i / 160.0);
    auto emp = [&](double x) { return d.cdf(x); };
    auto gauss = [&](double x) {
        return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0)));
    };
    double ks = ks_distance(emp, gauss, grid);
    double band = 1.628 / std::sqrt(static_cast<double>(d.size()));  // 99% DKW
    return {ks, ks - band, ks + band};
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& err) {
    SweepGrid grid;
    try {
        cfg.validate();
        grid = resolve_sweep(cfg);
        if (cfg.simulate) build_plan(cfg).validate();
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }

    std::ofstream file;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) {
            err << "config error: cannot write " << cfg.out << '\n';
            return 2;
        }
    }
    std::ostream& out = cfg.out.empty() ? std::cout : file;

    try {
        out << "x,analytic,monte_carlo,mc_ci_low,mc_ci_high,n_realizations,"
               "seed\n";
        // a field-invariant sweep reuses one simulation across all points
        bool shared_sim = cfg.simulate && !sweep_changes_field(grid.var);
        std::vector<double> shared_samples;
        if (shared_sim) {
            if (cfg.metric == "interference-pdf" || cfg.metric == "ks")
                shared_samples = field_real_parts(cfg);
            else
                shared_samples =
                    simulate_sinr(build_plan(cfg)).sorted_samples();
        }
        double step = grid.points.size() > 1
                          ? grid.points[1] - grid.points[0]
                          : 1.0;
        for (double x : grid.points) {
            ExperimentConfig point = with_sweep_value(cfg, grid.var, x);
            double analytic;
            if (cfg.metric == "outage") analytic = analytic_outage(point);
            else if (cfg.metric == "rate") analytic = analytic_rate(point);
            else if (cfg.metric == "asep") analytic = analytic_asep(point);
            else if (cfg.metric == "interference-pdf")
                analytic = analytic_density(point, x);
            else analytic = analytic_ks(point);

            out << fmt9(x) << ',' << fmt9(analytic);
            if (cfg.simulate) {
                McColumns mc{};
                if (cfg.metric == "asep") {
                    mc = mc_asep(point);
                } else if (cfg.metric == "interference-pdf" ||
                           cfg.metric == "ks") {
                    EmpiricalDistribution d(shared_sim
                                                ? shared_samples
                                                : field_real_parts(point));
                    mc = cfg.metric == "ks"
                             ? mc_ks(point, d)
                             : mc_density(d, x, 0.5 * step);
                } else {
                    EmpiricalDistribution d(
                        shared_sim ? shared_samples
                                   : simulate_sinr(build_plan(point))
                                         .sorted_samples());
                    mc = cfg.metric == "outage" ? mc_outage(d, point.threshold_db)
                                                : mc_rate(d);
                }
                out << ',' << fmt9(mc.value) << ',' << fmt9(mc.ci_low) << ','
                    << fmt9(mc.ci_high) << ',' << cfg.realizations << ','
                    << cfg.seed;
            } else {
                out << ",,,,,";
            }
            out << '\n';
        }
    } catch (const AccuracyError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

int run_validation(std::ostream& out) {
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        out << (ok ? "PASS " : "FAIL ") << name << '\n';
        if (!ok) ++failures;
    };

    NetworkConfig net{1e-6, 10.0, 4.0, 0.0, 0.0};
    bool lt_ok = true;
    std::vector<LaplaceTransform> lts = {
        make_lt_baseline(net, 250.0), make_lt_random_distance(),
        make_lt_load_aware(0.5), make_lt_uplink(),
        make_lt_frequency_reuse(1e-6, 2)};
    for (const LaplaceTransform& lt : lts) {
        if (std::abs(lt(0.0) - 1.0) > 1e-9) lt_ok = false;
        double prev = 1.0 + 1e-12;
        for (int i = 0; i <= 50; ++i) {
            double z = std::pow(10.0, -3.0 + 6.0 * i / 50.0);
            double v = lt(z);
            if (v > prev + 1e-12 || v < 0.0) lt_ok = false;
            prev = v;
        }
    }
    report("laplace transforms: L(0)=1, monotone nonincreasing", lt_ok);

    SimulationPlan plan;
    plan.scenario = SimulationPlan::Scenario::random_r0;
    plan.cfg = net;
    plan.realizations = 20000;
    plan.seed = 404;
    EmpiricalDistribution d = simulate_sinr(plan);
    double outage = sinr_cdf(1.0, make_lt_random_distance());
    auto ci = d.ci(1.0, 0.99);
    report("downlink outage matches simulation at 99% confidence",
           ci.low <= outage && outage <= ci.high);

    plan.scenario = SimulationPlan::Scenario::fixed_r0;
    plan.cfg.exclusion_radius = 250.0;
    plan.realizations = 20000;
    std::vector<std::complex<double>> field = simulate_downlink_field(
        plan.cfg, SignalingMode::exact(Constellation::qam(4)), 250.0, plan);
    double p = 0.0;
    for (const std::complex<double>& s : field) p += std::norm(s);
    p /= static_cast<double>(field.size());
    double expected = mean_power(plan.cfg, 250.0);
    report("mean interference power within 5% of the closed form",
           std::abs(p - expected) / expected < 0.05);

    return failures == 0 ? 0 : 3;
}

}  // namespace sgcell
