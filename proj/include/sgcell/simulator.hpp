// Monte-Carlo oracle: samples PPP fields, fading and symbols to produce
// empirical interference statistics, SINR distributions and symbol error
// rates.  Realizations draw from counter-based streams keyed by
// (seed, realization index), so results are bit-identical for any worker
// count.
#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "sgcell/geometry.hpp"
#include "sgcell/interference.hpp"

namespace sgcell {

struct SimulationPlan {
    enum class Scenario {
        fixed_r0,
        random_r0,
        load_aware,
        multitier,
        reuse,
        uplink,
        nakagami,
        mrc,
        comp
    };
    Scenario scenario = Scenario::fixed_r0;
    NetworkConfig cfg;

    // scenario parameters
    double access_probability = 1.0;  // load_aware
    TierSet tiers;                    // multitier
    int reuse_delta = 1;              // reuse
    double rho = 1e-6;                // uplink power-control level
    int nakagami_m = 1;               // nakagami
    int mrc_branches = 1;             // mrc
    int comp_n = 1;                   // comp

    long realizations = 10000;
    int symbols_per_realization = 1;
    std::uint64_t seed = 1;
    // if outer_radius == 0 the region follows the truncation rule
    AnnularRegion region{0.0, 0.0};
    int workers = 1;

    void validate() const;
    AnnularRegion effective_region(double inner) const;
};

class EmpiricalDistribution {
  public:
    explicit EmpiricalDistribution(std::vector<double> samples);

    double cdf(double x) const;
    struct Interval {
        double low, high;
    };
    // normal-approximation CI for the CDF at x
    Interval ci(double x, double level = 0.99) const;
    const std::vector<double>& sorted_samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    double quantile(double p) const;

  private:
    std::vector<double> samples_;
};

// raw complex aggregate-interference samples, one per realization
std::vector<std::complex<double>> simulate_downlink_field(
    const NetworkConfig& cfg, const SignalingMode& mode, double r0,
    const SimulationPlan& plan);

EmpiricalDistribution simulate_sinr(const SimulationPlan& plan);

struct SepEstimate {
    double sep;
    double std_error;
    long symbols;
};

SepEstimate simulate_symbol_errors(const NetworkConfig& cfg,
                                   const Constellation& constellation,
                                   const SignalingMode& mode,
                                   const SimulationPlan& plan);

EmpiricalDistribution simulate_uplink(double lambda_bs, double rho,
                                      const SimulationPlan& plan);

}  // namespace sgcell
