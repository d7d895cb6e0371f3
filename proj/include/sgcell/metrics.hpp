// Error-probability, outage and ergodic-rate evaluators: the exact
// symbol-level pipeline, the Gaussian-signaling pipeline and the
// gamma-fading LT-derivative pipeline, all driven by scenario Laplace
// transforms.
#pragma once
#include <functional>
#include <string>
#include <vector>

#include "sgcell/geometry.hpp"
#include "sgcell/interference.hpp"
#include "sgcell/numerics.hpp"

namespace sgcell {

struct ModulationScheme {
    struct Row {
        int c;          // erfc power, 1 or 2
        double weight;  // w_c
        double beta;    // beta_c
    };
    std::vector<Row> rows;
    std::string name;
    int order;  // constellation size M

    void validate() const;

    static ModulationScheme bpsk();
    static ModulationScheme bfsk();
    static ModulationScheme qpsk();
    static ModulationScheme mqam(int m);
    static ModulationScheme mpam(int m);
    static ModulationScheme mpsk_ub(int m);
    static ModulationScheme de_bpsk();
    static ModulationScheme msk();
};

// sum_c w_c erfc^c(sqrt(beta_c snr)) over an unfaded AWGN channel
double asep_awgn(double snr, const ModulationScheme& scheme);

// E[erfc^c(sqrt(Y/(X+C)))] with Y unit-mean Gamma(m, 1/m) and X having the
// given Laplace transform
double hamdi_expectation(int c, int m, double C, const LaplaceTransform& lt_x);

// exact-constellation ASEP for a fixed service distance (EiD pipeline)
double asep_eid(double r0, const NetworkConfig& cfg,
                const Constellation& constellation,
                const ModulationScheme& scheme);

// Gaussian-signaling ASEP, fixed service distance: lt is the interference
// LT in the raw argument z (e.g. the baseline LT)
double asep_gaussian(const ModulationScheme& scheme,
                     const LaplaceTransform& lt, const NetworkConfig& cfg,
                     double r0);
// spatially averaged variant: lt already folds the service-distance law
double asep_gaussian(const ModulationScheme& scheme,
                     const LaplaceTransform& lt);

// SINR CDF under Rayleigh intended fading
double sinr_cdf(double threshold, const LaplaceTransform& lt,
                const NetworkConfig& cfg, double r0);
double sinr_cdf(double threshold, const LaplaceTransform& lt);

// gamma intended gain with integer shape (Nakagami / MRC), fixed r0; lt is
// the conditional interference LT.  Noise is not applied here: fold any
// e^{-z N0} factor into lt so the derivative sum differentiates the product
double sinr_cdf_gamma(double threshold, int shape, const LaplaceTransform& lt,
                      const NetworkConfig& cfg, double r0);
// spatial average over the nearest-BS service distance; conditional_lt maps
// (z, r0) to the fixed-r0 LT value
double sinr_cdf_gamma_averaged(
    double threshold, int shape,
    const std::function<double(double z, double r0)>& conditional_lt,
    const NetworkConfig& cfg);

struct ErgodicRate {
    double nats;
    bool divergent;
};

ErgodicRate ergodic_rate(const LaplaceTransform& lt, const NetworkConfig& cfg,
                         double r0);
ErgodicRate ergodic_rate(const LaplaceTransform& lt);

// SINR threshold whose AWGN BER equals epsilon (c=1 row inversion)
double ber_outage_threshold(double epsilon, const ModulationScheme& scheme);

}  // namespace sgcell
