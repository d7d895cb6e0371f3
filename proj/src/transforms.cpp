#include "sgcell/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "sgcell/random.hpp"

namespace sgcell {
namespace {
constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}
}  // namespace

double lt_baseline(double z, double lambda, double power, double eta,
                   double r0) {
    require(eta > 2, "lt_baseline: eta must be > 2");
    require(lambda > 0 && power > 0 && r0 > 0, "lt_baseline: positive params");
    require(z >= 0, "lt_baseline: z >= 0");
    if (z == 0) return 1.0;
    if (eta == 4.0) {
        double t = std::sqrt(z * power);
        return std::exp(-kPi * lambda * t * std::atan(t / (r0 * r0)));
    }
    double s = 2.0 / eta;
    double pre = 2.0 * kPi * lambda * z * power * std::pow(r0, 2.0 - eta) /
                 (eta - 2.0);
    double h = gauss_2f1(1.0, 1.0 - s, 2.0 - s, -z * power / std::pow(r0, eta));
    return std::exp(-pre * h);
}

double lt_generalized(double a, double lambda, double r0, double r_excl,
                      double p0, double p_int) {
    require(r0 > 0 && r_excl > 0, "lt_generalized: radii must be positive");
    require(a >= 0, "lt_generalized: a >= 0");
    require(lambda > 0 && p0 > 0 && p_int > 0, "lt_generalized: positive params");
    if (a == 0) return 1.0;
    double q = std::sqrt(a * p_int / p0);
    double ratio2 = (r0 / r_excl) * (r0 / r_excl);
    return std::exp(-kPi * lambda * q * r0 * r0 * std::atan(ratio2 * q));
}

double lt_random_distance(double a) {
    require(a >= 0, "lt_random_distance: a >= 0");
    double sa = std::sqrt(a);
    return 1.0 / (sa * std::atan(sa) + 1.0);
}

double lt_load_aware(double a, double p) {
    require(a >= 0, "lt_load_aware: a >= 0");
    require(p >= 0 && p <= 1, "lt_load_aware: p in [0,1]");
    double sa = std::sqrt(a);
    return 1.0 / (p * sa * std::atan(sa) + 1.0);
}

namespace {

// exponential decay rate C of the conditional LT exp{-C r^2} for tier k,
// plus the association rate D with A_k = pi lambda_k / D
double multitier_rate_c(double a, const TierSet& ts, int k) {
    const Tier& tk = ts.tiers[k];
    double c = 0.0;
    for (const Tier& ti : ts.tiers)
        c += kPi * ti.lambda * std::sqrt(a * ti.power / tk.power) *
             std::atan(std::sqrt(a * tk.bias / ti.bias));
    return c;
}

double multitier_rate_d(const TierSet& ts, int k) {
    const Tier& tk = ts.tiers[k];
    double d = 0.0;
    for (const Tier& tl : ts.tiers)
        d += kPi * tl.lambda *
             std::sqrt(tl.bias * tl.power / (tk.bias * tk.power));
    return d;
}

}  // namespace

double lt_multitier(double a, const TierSet& tiers, int serving_tier) {
    tiers.validate();
    require(a >= 0, "lt_multitier: a >= 0");
    if (!tiers.all_eta4())
        throw std::invalid_argument(
            "lt_multitier: mixed path-loss exponents unsupported (only eta=4)");
    int K = static_cast<int>(tiers.tiers.size());
    if (serving_tier != kAveragedTiers && (serving_tier < 0 || serving_tier >= K))
        throw std::domain_error("lt_multitier: bad serving tier index");
    if (a == 0) return 1.0;
    auto per_tier = [&](int k) {
        double c = multitier_rate_c(a, tiers, k);
        double d = multitier_rate_d(tiers, k);
        return d / (c + d);
    };
    if (serving_tier != kAveragedTiers) return per_tier(serving_tier);
    double acc = 0.0;
    for (int k = 0; k < K; ++k)
        acc += tier_association_probability(tiers, k) * per_tier(k);
    return acc;
}

double lt_frequency_reuse(double a, double lambda, int delta) {
    require(delta >= 1, "lt_frequency_reuse: delta >= 1");
    require(a >= 0, "lt_frequency_reuse: a >= 0");
    require(lambda > 0, "lt_frequency_reuse: lambda > 0");
    if (a == 0) return 1.0;
    double sa = std::sqrt(a);
    if (delta == 1) return lt_random_distance(a);
    // exclusion at the delta-th nearest BS; with u = pi*lambda*r0^2 and
    // w = pi*lambda*(r_excl^2 - r0^2) ~ Gamma(delta-1) the result is
    // lambda-free
    QuadratureSpec inner;
    inner.abs_tol = 1e-13;
    inner.rel_tol = 1e-11;
    double norm = std::tgamma(delta - 1.0);
    auto outer_f = [&](double u) {
        auto inner_f = [&](double w) {
            return std::pow(w, delta - 2.0) * std::exp(-u - w) *
                   std::exp(-(sa * u / delta) * std::atan(sa * u / (u + w)));
        };
        return integrate_semi_infinite(inner_f, 0.0, inner) / norm;
    };
    QuadratureSpec outer;
    outer.abs_tol = 1e-11;
    outer.rel_tol = 1e-9;
    return integrate_semi_infinite(outer_f, 0.0, outer);
}

double lt_uplink(double a) {
    require(a >= 0, "lt_uplink: a >= 0");
    double sa = std::sqrt(a);
    return std::exp(-sa * std::atan(sa));
}

double lt_nakagami(double a, double lambda, double r0, double r_excl, int m,
                   double eta, double power_ratio) {
    require(eta > 2, "lt_nakagami: eta must be > 2");
    require(m >= 1, "lt_nakagami: m must be a positive integer");
    require(a >= 0, "lt_nakagami: a >= 0");
    require(lambda > 0 && r0 > 0 && r_excl > 0 && power_ratio > 0,
            "lt_nakagami: positive params");
    if (a == 0) return 1.0;
    double s = 2.0 / eta;
    // unit-mean Gamma(m, 1/m) interferer power; the /m keeps E{g} = 1
    double x = std::pow(r0 / r_excl, eta) * a * power_ratio / m;
    double h = gauss_2f1(-s, static_cast<double>(m), 1.0 - s, -x);
    return std::exp(-kPi * lambda * r_excl * r_excl * (h - 1.0));
}

double lt_zeta(double z, double lambda, double r0, double eta,
               const Constellation& constellation) {
    require(eta > 2, "lt_zeta: eta must be > 2");
    require(r0 > 0, "lt_zeta: r0 must be > 0");
    require(z >= 0, "lt_zeta: z >= 0");
    require(lambda >= 0, "lt_zeta: lambda >= 0");
    constellation.validate();
    if (z == 0 || lambda == 0) return 1.0;
    double s = 2.0 / eta;
    double acc = 0.0;
    for (auto sym : constellation.symbols)
        acc += kummer_1f1(-s, 1.0 - s, -z * std::norm(sym));
    acc /= static_cast<double>(constellation.symbols.size());
    return std::exp(kPi * lambda * r0 * r0 * (1.0 - acc));
}

MonteCarloEstimate lt_network_mimo(double a, double lambda, int n,
                                   long mc_samples, std::uint64_t seed) {
    require(n >= 1, "lt_network_mimo: n >= 1");
    require(lambda > 0, "lt_network_mimo: lambda > 0");
    require(a >= 0, "lt_network_mimo: a >= 0");
    if (mc_samples < 1000)
        throw std::invalid_argument("lt_network_mimo: mc_samples >= 1000");
    if (a == 0) return {1.0, 0.0};
    long double sum = 0.0L, sum2 = 0.0L;
    for (long i = 0; i < mc_samples; ++i) {
        RandomStream rng(seed, static_cast<std::uint64_t>(i));
        std::vector<double> r = sample_ordered_distances(lambda, n, rng);
        double inv4 = 0.0;
        for (double ri : r) inv4 += 1.0 / (ri * ri * ri * ri);
        double q = std::sqrt(a / inv4);
        double r_excl = r.back();
        double v = std::exp(-kPi * lambda * q *
                            std::atan(q / (r_excl * r_excl)));
        sum += v;
        sum2 += static_cast<long double>(v) * v;
    }
    double mean = static_cast<double>(sum / mc_samples);
    double var = static_cast<double>(sum2 / mc_samples) - mean * mean;
    if (var < 0) var = 0;
    return {mean, std::sqrt(var / mc_samples)};
}

double effective_intensity_shadowing(double lambda, double eta,
                                     double shadowing_fractional_moment) {
    require(lambda > 0, "effective_intensity_shadowing: lambda > 0");
    require(eta > 2, "effective_intensity_shadowing: eta > 2");
    require(shadowing_fractional_moment > 0,
            "effective_intensity_shadowing: moment > 0");
    return lambda * shadowing_fractional_moment;
}

LaplaceTransform make_lt_baseline(const NetworkConfig& cfg, double r0) {
    cfg.validate();
    double lambda = cfg.lambda_bs, power = cfg.power, eta = cfg.eta;
    return {[=](double z) { return lt_baseline(z, lambda, power, eta, r0); },
            "baseline"};
}

LaplaceTransform make_lt_random_distance() {
    return {[](double a) { return lt_random_distance(a); }, "random_distance"};
}

LaplaceTransform make_lt_load_aware(double p) {
    return {[=](double a) { return lt_load_aware(a, p); }, "load_aware"};
}

LaplaceTransform make_lt_multitier(const TierSet& tiers, int serving_tier) {
    return {[=](double a) { return lt_multitier(a, tiers, serving_tier); },
            "multitier"};
}

LaplaceTransform make_lt_frequency_reuse(double lambda, int delta) {
    return {[=](double a) { return lt_frequency_reuse(a, lambda, delta); },
            "frequency_reuse"};
}

LaplaceTransform make_lt_uplink() {
    return {[](double a) { return lt_uplink(a); }, "uplink"};
}

LaplaceTransform make_lt_nakagami(double lambda, double r0, double r_excl,
                                  int m, double eta, double power_ratio) {
    return {[=](double a) {
                return lt_nakagami(a, lambda, r0, r_excl, m, eta, power_ratio);
            },
            "nakagami"};
}

}  // namespace sgcell
