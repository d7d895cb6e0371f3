// Laplace transforms of the aggregate interference power for every network
// scenario; the single currency consumed by the performance metrics.  The
// dimensionless argument is `a` (= T for outage, 1/beta_c for ASEP) for the
// spatially averaged scenarios and a plain `z` for the conditional ones.
#pragma once
#include <cstdint>

#include "sgcell/geometry.hpp"
#include "sgcell/interference.hpp"
#include "sgcell/numerics.hpp"

namespace sgcell {

// one-tier downlink, fixed exclusion radius r0 (Rayleigh fading)
double lt_baseline(double z, double lambda, double power, double eta,
                   double r0);

// eta = 4 with separate service distance r0, exclusion r_excl and powers
double lt_generalized(double a, double lambda, double r0, double r_excl,
                      double p0, double p_int);

// service distance averaged over the nearest-BS law; lambda-free
double lt_random_distance(double a);

// interferers thinned by channel-access probability p
double lt_load_aware(double a, double p);

// biased multi-tier association, all eta = 4
inline constexpr int kAveragedTiers = -1;
double lt_multitier(double a, const TierSet& tiers,
                    int serving_tier = kAveragedTiers);

// frequency reuse Delta: nearest Delta-1 BSs silent on the user's channel,
// remainder thinned to lambda/Delta; lambda-free after substitution
double lt_frequency_reuse(double a, double lambda, int delta);

// uplink with full channel-inversion power control; rho- and lambda-free
double lt_uplink(double a);

// Nakagami-m (integer m) interferer fading, unit mean power
double lt_nakagami(double a, double lambda, double r0, double r_excl, int m,
                   double eta, double power_ratio);

// LT of the EiD noise aggregate zeta (exact-constellation ASEP pipeline)
double lt_zeta(double z, double lambda, double r0, double eta,
               const Constellation& constellation);

struct MonteCarloEstimate {
    double value;
    double std_error;
};

// network MIMO / CoMP with the n nearest BSs cooperating; Monte-Carlo over
// the joint ordered-distance law, deterministic for a given seed
MonteCarloEstimate lt_network_mimo(double a, double lambda, int n,
                                   long mc_samples,
                                   std::uint64_t seed = 0x5eed);

// lognormal (or any) shadowing folded into an effective intensity
double effective_intensity_shadowing(double lambda, double eta,
                                     double shadowing_fractional_moment);

// ---- LaplaceTransform factories -------------------------------------------

LaplaceTransform make_lt_baseline(const NetworkConfig& cfg, double r0);
LaplaceTransform make_lt_random_distance();
LaplaceTransform make_lt_load_aware(double p);
LaplaceTransform make_lt_multitier(const TierSet& tiers,
                                   int serving_tier = kAveragedTiers);
LaplaceTransform make_lt_frequency_reuse(double lambda, int delta);
LaplaceTransform make_lt_uplink();
LaplaceTransform make_lt_nakagami(double lambda, double r0, double r_excl,
                                  int m, double eta, double power_ratio);

}  // namespace sgcell
