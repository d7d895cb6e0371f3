#include "sgcell/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "sgcell/numerics.hpp"

namespace sgcell {
namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kVoronoiC = 3.575;  // Voronoi-area gamma-fit constant
}  // namespace

void NetworkConfig::validate() const {
    if (eta <= 2) throw std::domain_error("NetworkConfig: eta must be > 2");
    if (lambda_bs <= 0) throw std::domain_error("NetworkConfig: lambda_bs <= 0");
    if (power <= 0) throw std::domain_error("NetworkConfig: power <= 0");
    if (noise < 0) throw std::domain_error("NetworkConfig: noise < 0");
    if (exclusion_radius < 0)
        throw std::domain_error("NetworkConfig: exclusion_radius < 0");
}

void TierSet::validate() const {
    if (tiers.empty()) throw std::domain_error("TierSet: needs at least one tier");
    for (const Tier& t : tiers) {
        if (t.lambda <= 0 || t.power <= 0)
            throw std::domain_error("TierSet: intensities and powers positive");
        if (t.bias < 0) throw std::domain_error("TierSet: bias must be >= 0");
        if (t.eta <= 2) throw std::domain_error("TierSet: eta must be > 2");
    }
}

bool TierSet::all_eta4() const {
    return std::all_of(tiers.begin(), tiers.end(), [](const Tier& t) {
        return std::abs(t.eta - 4.0) < 1e-12;
    });
}

void AnnularRegion::validate() const {
    if (!(inner_radius >= 0 && inner_radius < outer_radius &&
          std::isfinite(outer_radius)))
        throw std::domain_error("AnnularRegion: need 0 <= inner < outer < inf");
}

double truncation_radius(double lambda, double r0) {
    return std::max(30.0 / std::sqrt(kPi * lambda), 20.0 * r0);
}

std::vector<Point2> sample_ppp(double intensity, const AnnularRegion& region,
                               RandomStream& rng) {
    region.validate();
    if (intensity < 0) throw std::domain_error("sample_ppp: intensity < 0");
    std::vector<Point2> pts;
    if (intensity == 0) return pts;
    double in2 = region.inner_radius * region.inner_radius;
    double out2 = region.outer_radius * region.outer_radius;
    std::uint64_t n = rng.poisson(intensity * kPi * (out2 - in2));
    pts.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        double r = std::sqrt(in2 + rng.uniform() * (out2 - in2));
        double th = 2.0 * kPi * rng.uniform();
        pts.push_back({r * std::cos(th), r * std::sin(th)});
    }
    return pts;
}

double nearest_distance_pdf(double lambda, double r) {
    if (lambda <= 0) throw std::domain_error("nearest_distance_pdf: lambda <= 0");
    if (r < 0) throw std::domain_error("nearest_distance_pdf: r < 0");
    return 2.0 * kPi * lambda * r * std::exp(-kPi * lambda * r * r);
}

double nearest_distance_cdf(double lambda, double r) {
    if (r <= 0) return 0.0;
    return 1.0 - std::exp(-kPi * lambda * r * r);
}

double sample_nearest_distance(double lambda, RandomStream& rng) {
    return std::sqrt(-std::log(rng.uniform()) / (kPi * lambda));
}

double joint_nearest_nth_pdf(double lambda, int n, double x, double y) {
    if (n < 1) throw std::domain_error("joint_nearest_nth_pdf: n >= 1");
    if (x < 0 || x > y) throw std::domain_error("joint_nearest_nth_pdf: 0<=x<=y");
    double pl = kPi * lambda;
    double expo = pl * y * y;
    if (expo > 745.0 || x == 0.0) return 0.0;  // underflow / boundary
    double log_val = std::log(4.0) + (n + 1) * std::log(pl) + std::log(x) +
                     std::log(y) - expo - std::lgamma(n);
    if (n > 1) log_val += (n - 1) * std::log(y * y - x * x);
    return std::exp(log_val);
}

std::vector<double> sample_ordered_distances(double lambda, int n,
                                             RandomStream& rng) {
    if (n < 1) throw std::domain_error("sample_ordered_distances: n >= 1");
    std::vector<double> out(n);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        acc += rng.exponential();
        out[k] = std::sqrt(acc / (kPi * lambda));
    }
    return out;
}

double cell_load_pmf(double lambda_bs, double lambda_ue, int n) {
    if (lambda_bs <= 0 || lambda_ue < 0 || n < 0)
        throw std::domain_error("cell_load_pmf: bad arguments");
    if (lambda_ue == 0) return n == 0 ? 1.0 : 0.0;
    double c = kVoronoiC;
    double denom = lambda_bs * c + lambda_ue;
    double log_p = std::lgamma(n + c) - std::lgamma(n + 1.0) - std::lgamma(c) +
                   n * std::log(lambda_ue / denom) +
                   c * std::log(lambda_bs * c / denom);
    return std::exp(log_p);
}

double channel_access_probability(double lambda_bs, double lambda_ue,
                                  int num_channels) {
    if (num_channels < 1)
        throw std::domain_error("channel_access_probability: N >= 1");
    if (lambda_ue <= 0) return 0.0;
    // min(k,N)/N saturates at 1, so only k < N terms need the PMF
    double p = 1.0;
    for (int k = 0; k < num_channels; ++k)
        p -= cell_load_pmf(lambda_bs, lambda_ue, k) *
             (1.0 - static_cast<double>(k) / num_channels);
    return p;
}

namespace {

// exponent of the joint void probability for biased association at range x
double association_exponent(const TierSet& ts, int k, double x) {
    const Tier& tk = ts.tiers[k];
    double s = 0.0;
    for (const Tier& tl : ts.tiers) {
        double ratio = (tl.bias * tl.power) / (tk.bias * tk.power);
        s += tl.lambda * std::pow(ratio, 2.0 / tl.eta) *
             std::pow(x, 2.0 * tk.eta / tl.eta);
    }
    return kPi * s;
}

}  // namespace

double tier_association_probability(const TierSet& ts, int k) {
    ts.validate();
    if (k < 0 || k >= static_cast<int>(ts.tiers.size()))
        throw std::domain_error("tier_association_probability: bad tier index");
    const Tier& tk = ts.tiers[k];
    if (tk.bias * tk.power <= 0)
        throw std::domain_error("tier_association_probability: bias*power == 0");
    if (ts.all_eta4()) {
        double num = tk.lambda * std::sqrt(tk.bias * tk.power);
        double den = 0.0;
        for (const Tier& t : ts.tiers) den += t.lambda * std::sqrt(t.bias * t.power);
        return num / den;
    }
    auto f = [&](double x) {
        return 2.0 * kPi * tk.lambda * x *
               std::exp(-association_exponent(ts, k, x));
    };
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    return integrate_semi_infinite(f, 0.0, spec);
}

double tier_service_distance_pdf(const TierSet& ts, int k, double x) {
    ts.validate();
    if (k < 0 || k >= static_cast<int>(ts.tiers.size()))
        throw std::domain_error("tier_service_distance_pdf: bad tier index");
    if (x < 0) throw std::domain_error("tier_service_distance_pdf: x < 0");
    double ak = tier_association_probability(ts, k);
    return 2.0 * kPi * ts.tiers[k].lambda * x / ak *
           std::exp(-association_exponent(ts, k, x));
}

}  // namespace sgcell
