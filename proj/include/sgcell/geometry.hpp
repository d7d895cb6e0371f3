// Poisson-point-process sampling and the closed-form spatial distributions
// of the downlink model: nearest/ordered distances, Voronoi cell load,
// tier association.  Intensities are per m² throughout.
#pragma once
#include <cmath>
#include <vector>

#include "sgcell/random.hpp"

namespace sgcell {

struct NetworkConfig {
    double lambda_bs = 1e-6;      // BS per m²
    double power = 1.0;           // transmit power, W
    double eta = 4.0;             // path-loss exponent, > 2
    double noise = 0.0;           // N₀, W
    double exclusion_radius = 0;  // r₀ for fixed-distance analysis, m
    void validate() const;        // throws std::domain_error
};

struct Tier {
    double lambda;  // per m²
    double power;   // W
    double bias;    // ≥ 0
    double eta;
};

struct TierSet {
    std::vector<Tier> tiers;
    void validate() const;
    bool all_eta4() const;
};

struct AnnularRegion {
    double inner_radius = 0;
    double outer_radius = 0;
    void validate() const;
};

struct Point2 {
    double x, y;
    double r() const { return std::hypot(x, y); }
};

// Simulation truncation radius: expected interference beyond R is under
// 1e-4 of the aggregate for eta >= 4 network geometries of interest.
double truncation_radius(double lambda, double r0);

std::vector<Point2> sample_ppp(double intensity, const AnnularRegion& region,
                               RandomStream& rng);

// distance to the nearest PPP point
double nearest_distance_pdf(double lambda, double r);
double nearest_distance_cdf(double lambda, double r);
double sample_nearest_distance(double lambda, RandomStream& rng);

// joint density of the nearest (x) and n-th nearest (y) point distances,
// with the nearest indexed 0 — so n=1 pairs the first two points.
double joint_nearest_nth_pdf(double lambda, int n, double x, double y);

// (r_0, ..., r_{n-1}) with πλ r_k² ~ Gamma(k+1, 1); strictly ascending.
std::vector<double> sample_ordered_distances(double lambda, int n,
                                             RandomStream& rng);

// number of users in the Voronoi cell of a random BS
double cell_load_pmf(double lambda_bs, double lambda_ue, int n);

// probability that a generic channel of a random BS is occupied
double channel_access_probability(double lambda_bs, double lambda_ue,
                                  int num_channels);

// biased-received-power association across tiers
double tier_association_probability(const TierSet& tiers, int k);
double tier_service_distance_pdf(const TierSet& tiers, int k, double x);

}  // namespace sgcell
