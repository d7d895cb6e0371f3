// Statistics of the complex baseband aggregate interference: exact and
// Gaussian-signaling characteristic functions, cumulants, moments, kurtosis,
// the alpha-stable (r0 -> 0) limit and equivalent-in-distribution variances.
#pragma once
#include <complex>
#include <vector>

#include "sgcell/geometry.hpp"

namespace sgcell {

struct Constellation {
    std::vector<std::complex<double>> symbols;
    void validate() const;  // unit average power, zero mean
    // E{|s|^p}, average over the alphabet
    double abs_moment(double p) const;

    static Constellation qam(int m);  // m in {4, 16, 64}
    static Constellation bpsk();
    static Constellation psk(int m);
};

struct SignalingMode {
    enum class Kind { exact, gaussian };
    Kind kind = Kind::gaussian;
    Constellation constellation;  // used by exact mode

    static SignalingMode exact(Constellation c);
    static SignalingMode gaussian();
    // E{|s|^p}: alphabet average (exact) or Gamma moment of a unit-power
    // complex Gaussian symbol, E{|s|^{2q}} = q! (gaussian)
    double abs_moment(double p) const;
};

struct EiDRepresentation {
    std::vector<double> variances;  // sigma_q^2, q = 1..Q
    int truncation_order = 0;
    double tail_bound = 0;  // size of the first dropped exponent term over
                            // the working |omega| range
};

// CF of i_agg at |omega| (real-valued: the field is circularly symmetric)
double cf_aggregate(double omega_magnitude, const NetworkConfig& cfg,
                    const SignalingMode& mode, double r0);

// r0 = 0 limit: the heavy-tailed alpha-stable comparison curve
double cf_alpha_stable_limit(double omega_magnitude, const NetworkConfig& cfg,
                             const SignalingMode& mode);

// per-dimension cumulant of Re(i_agg); zero for odd n
double cumulant(int n, const NetworkConfig& cfg, const SignalingMode& mode,
                double r0);

// cumulant -> raw moment map (Bell recursion); cumulants[j] = kappa_{j+1}
double moment_from_cumulants(int n, const std::vector<double>& cumulants);

// E{|i_agg|^2} = 2 pi lambda P r0^{2-eta} / (eta - 2)
double mean_power(const NetworkConfig& cfg, double r0);

// per-dimension kurtosis kappa_4 / kappa_2^2
double kurtosis(const NetworkConfig& cfg, const SignalingMode& mode, double r0);

EiDRepresentation eid_variances(const NetworkConfig& cfg,
                                const Constellation& constellation, double r0,
                                int truncation = 12);

// exp{ sum_q (-sigma_q^2 |omega|^2 / 4)^q }: the EiD reconstruction of the CF
double cf_from_eid(const EiDRepresentation& eid, double omega_magnitude);

}  // namespace sgcell
