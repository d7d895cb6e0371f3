#include "sgcell/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sgcell/transforms.hpp"

namespace sgcell {
namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

void check_sqrt_m(int m, const char* who) {
    if (m < 2 || static_cast<int>(std::lround(std::sqrt(m))) *
                         static_cast<int>(std::lround(std::sqrt(m))) !=
                     m)
        throw std::domain_error(std::string(who) + ": M must be a square >= 4");
}

// sum_c w_c (1 - (c/sqrt(pi)) Int z^{-1/2} erfc(sqrt(z) 1{c=2})
//             e^{-z noise_factor_c} lt_arg_c(z) dz): the unified ASEP shell
double unified_asep(const ModulationScheme& scheme,
                    const std::function<double(double z, double beta)>& lt_arg,
                    const std::function<double(double beta)>& noise_factor) {
    scheme.validate();
    double asep = 0.0;
    for (const ModulationScheme::Row& row : scheme.rows) {
        if (row.weight == 0.0) continue;
        double nf = noise_factor(row.beta);
        auto integrand = [&](double z) {
            double v = std::exp(-z * nf) / std::sqrt(z) *
                       lt_arg(z, row.beta);
            if (row.c == 2) v *= std::erfc(std::sqrt(z));
            return v;
        };
        QuadratureSpec spec;
        spec.rel_tol = 1e-9;
        double integral = integrate_semi_infinite(integrand, 0.0, spec);
        asep += row.weight * (1.0 - row.c / kSqrtPi * integral);
    }
    return asep;
}
}  // namespace

void ModulationScheme::validate() const {
    if (rows.empty() || rows.front().c != 1 || rows.front().weight <= 0)
        throw std::domain_error("ModulationScheme: first row must be (c=1, w>0)");
    for (const Row& row : rows) {
        if (row.c != 1 && row.c != 2)
            throw std::domain_error("ModulationScheme: c must be 1 or 2");
        if (row.weight != 0.0 && row.beta <= 0)
            throw std::domain_error("ModulationScheme: beta must be positive");
    }
    if (order < 2) throw std::domain_error("ModulationScheme: order >= 2");
}

ModulationScheme ModulationScheme::bpsk() {
    return {{{1, 0.5, 0.5}}, "BPSK", 2};
}

ModulationScheme ModulationScheme::bfsk() {
    return {{{1, 0.5, 1.0}}, "BFSK", 2};
}

ModulationScheme ModulationScheme::qpsk() {
    return {{{1, 1.0, 0.5}, {2, -0.25, 0.5}}, "QPSK", 4};
}

ModulationScheme ModulationScheme::mqam(int m) {
    check_sqrt_m(m, "ModulationScheme::mqam");
    double f = (std::sqrt(static_cast<double>(m)) - 1.0) /
               std::sqrt(static_cast<double>(m));
    double beta = 3.0 / (2.0 * (m - 1.0));
    return {{{1, 2.0 * f, beta}, {2, -f * f, beta}},
            std::to_string(m) + "-QAM", m};
}

ModulationScheme ModulationScheme::mpam(int m) {
    if (m < 2) throw std::domain_error("ModulationScheme::mpam: M >= 2");
    return {{{1, (m - 1.0) / m, 3.0 / (static_cast<double>(m) * m - 1.0)}},
            std::to_string(m) + "-PAM", m};
}

ModulationScheme ModulationScheme::mpsk_ub(int m) {
    if (m < 2) throw std::domain_error("ModulationScheme::mpsk_ub: M >= 2");
    return {{{1, 1.0, std::sin(kPi / m)}}, std::to_string(m) + "-PSK-UB", m};
}

ModulationScheme ModulationScheme::de_bpsk() {
    // 2Q(1-Q) expansion; the +1 second-row weight sometimes quoted breaks
    // the (M-1)/M bound, so the probability-consistent -1/2 is used
    return {{{1, 1.0, 1.0}, {2, -0.5, 1.0}}, "DE-BPSK", 2};
}

ModulationScheme ModulationScheme::msk() {
    return {{{1, 0.5, 1.0}}, "MSK", 2};
}

double asep_awgn(double snr, const ModulationScheme& scheme) {
    scheme.validate();
    if (snr < 0) throw std::domain_error("asep_awgn: snr >= 0");
    double p = 0.0;
    for (const ModulationScheme::Row& row : scheme.rows) {
        if (row.weight == 0.0) continue;
        double e = std::erfc(std::sqrt(row.beta * snr));
        p += row.weight * (row.c == 2 ? e * e : e);
    }
    return p;
}

double hamdi_expectation(int c, int m, double C, const LaplaceTransform& lt_x) {
    if (c != 1 && c != 2)
        throw std::domain_error("hamdi_expectation: c must be 1 or 2");
    if (m < 1) throw std::domain_error("hamdi_expectation: m >= 1");
    if (C < 0) throw std::domain_error("hamdi_expectation: C >= 0");
    QuadratureSpec spec;
    spec.rel_tol = 1e-9;
    if (c == 1) {
        double pre = std::exp(std::lgamma(m + 0.5) - std::lgamma(m)) * 2.0 /
                     kPi;
        auto f = [&](double z) {
            return std::exp(-z * (1.0 + m * C)) / std::sqrt(z) *
                   kummer_1f1(1.0 - m, 1.5, z) * lt_x(m * z);
        };
        return 1.0 - pre * integrate_semi_infinite(f, 0.0, spec);
    }
    if (m == 1) {
        auto f = [&](double z) {
            return std::exp(-z * (1.0 + C)) * std::erfc(std::sqrt(z)) /
                   std::sqrt(z) * lt_x(z);
        };
        return 1.0 - 2.0 / kSqrtPi * integrate_semi_infinite(f, 0.0, spec);
    }
    // The theta-integral over (0, pi/4], recast via u = cot(theta) and the
    // Kummer reflection 1F1(m+1;2;-x) = e^{-x} 1F1(1-m;2;x), becomes
    // Int_1^inf e^{-z(1+u^2)} 1F1(1-m;2;z(1+u^2)) du.  The terminating 1F1
    // expands it into upper incomplete gammas of half-integer order.
    auto inner_closed = [m](double z) {
        std::vector<double> gam(m);  // gam[j] = Gamma(j+1/2, z)
        gam[0] = kSqrtPi * std::erfc(std::sqrt(z));
        double zpe = std::sqrt(z) * std::exp(-z);  // z^{j-1/2} e^{-z}
        for (int j = 1; j < m; ++j) {
            gam[j] = (j - 0.5) * gam[j - 1] + zpe;
            zpe *= z;
        }
        double ak = 1.0;  // (1-m)_k / ((2)_k k!)
        double sum = 0.0;
        for (int k = 0; k < m; ++k) {
            double binom = 1.0;
            double acc = 0.0;
            for (int j = 0; j <= k; ++j) {
                acc += binom * std::pow(z, k - j - 0.5) * gam[j];
                binom *= static_cast<double>(k - j) / (j + 1);
            }
            sum += ak * acc;
            ak *= (1.0 - m + k) / ((2.0 + k) * (k + 1.0));
        }
        return 0.5 * std::exp(-z) * sum;
    };
    auto outer = [&](double z) {
        return std::exp(-z * m * C) * lt_x(m * z) * inner_closed(z);
    };
    return 1.0 - 4.0 * m / kPi * integrate_semi_infinite(outer, 0.0, spec);
}

double asep_eid(double r0, const NetworkConfig& cfg,
                const Constellation& constellation,
                const ModulationScheme& scheme) {
    cfg.validate();
    constellation.validate();
    if (r0 <= 0) throw std::domain_error("asep_eid: r0 > 0");
    double noise_scale = cfg.noise * std::pow(r0, cfg.eta) / cfg.power;
    return unified_asep(
        scheme,
        [&](double z, double beta) {
            return lt_zeta(z / beta, cfg.lambda_bs, r0, cfg.eta,
                           constellation);
        },
        [&](double beta) { return 1.0 + noise_scale / beta; });
}

double asep_gaussian(const ModulationScheme& scheme,
                     const LaplaceTransform& lt, const NetworkConfig& cfg,
                     double r0) {
    cfg.validate();
    if (r0 <= 0) throw std::domain_error("asep_gaussian: r0 > 0");
    double scale = std::pow(r0, cfg.eta) / cfg.power;
    double noise_scale = cfg.noise * scale;
    return unified_asep(
        scheme, [&](double z, double beta) { return lt(z * scale / beta); },
        [&](double beta) { return 1.0 + noise_scale / beta; });
}

double asep_gaussian(const ModulationScheme& scheme,
                     const LaplaceTransform& lt) {
    return unified_asep(
        scheme, [&](double z, double beta) { return lt(z / beta); },
        [](double) { return 1.0; });
}

double sinr_cdf(double threshold, const LaplaceTransform& lt,
                const NetworkConfig& cfg, double r0) {
    cfg.validate();
    if (threshold < 0) throw std::domain_error("sinr_cdf: threshold >= 0");
    if (r0 <= 0) throw std::domain_error("sinr_cdf: r0 > 0");
    if (threshold == 0) return 0.0;
    double z = threshold * std::pow(r0, cfg.eta) / cfg.power;
    return 1.0 - std::exp(-z * cfg.noise) * lt(z);
}

double sinr_cdf(double threshold, const LaplaceTransform& lt) {
    if (threshold < 0) throw std::domain_error("sinr_cdf: threshold >= 0");
    if (threshold == 0) return 0.0;
    return 1.0 - lt(threshold);
}

double sinr_cdf_gamma(double threshold, int shape, const LaplaceTransform& lt,
                      const NetworkConfig& cfg, double r0) {
    cfg.validate();
    if (threshold < 0)
        throw std::domain_error("sinr_cdf_gamma: threshold >= 0");
    if (r0 <= 0) throw std::domain_error("sinr_cdf_gamma: r0 > 0");
    if (shape < 1) throw std::domain_error("sinr_cdf_gamma: shape >= 1");
    if (shape > 8)
        throw std::domain_error(
            "sinr_cdf_gamma: shape > 8 unsupported (derivative accuracy)");
    if (threshold == 0) return 0.0;
    double z = threshold * std::pow(r0, cfg.eta) / cfg.power;
    if (z == 0.0) return 0.0;  // underflow for tiny r0: CDF limit is 0
    double sum = 0.0, sign = 1.0, fact = 1.0, zpow = 1.0;
    for (int u = 0; u < shape; ++u) {
        sum += sign / fact * zpow * lt_derivative(lt.evaluate, u, z);
        sign = -sign;
        fact *= (u + 1);
        zpow *= z;
    }
    return 1.0 - sum;
}

double sinr_cdf_gamma_averaged(
    double threshold, int shape,
    const std::function<double(double z, double r0)>& conditional_lt,
    const NetworkConfig& cfg) {
    cfg.validate();
    if (threshold < 0)
        throw std::domain_error("sinr_cdf_gamma_averaged: threshold >= 0");
    if (threshold == 0) return 0.0;
    auto f = [&](double r) {
        if (r <= 0) return 0.0;
        LaplaceTransform cond{[&, r](double z) { return conditional_lt(z, r); },
                              "conditional"};
        return nearest_distance_pdf(cfg.lambda_bs, r) *
               sinr_cdf_gamma(threshold, shape, cond, cfg, r);
    };
    QuadratureSpec spec;
    spec.rel_tol = 1e-7;
    spec.abs_tol = 1e-9;
    return integrate_semi_infinite(f, 0.0, spec);
}

namespace {
ErgodicRate rate_from_ccdf(const std::function<double(double)>& ccdf) {
    // t = e^v - 1 flattens the logarithmic tail
    auto f = [&](double v) { return ccdf(std::expm1(v)); };
    QuadratureSpec spec;
    spec.rel_tol = 1e-8;
    spec.abs_tol = 1e-10;
    try {
        return {integrate_semi_infinite(f, 0.0, spec), false};
    } catch (const AccuracyError&) {
        if (ccdf(1e15) > 1e-6)
            return {std::numeric_limits<double>::infinity(), true};
        throw;
    }
}
}  // namespace

ErgodicRate ergodic_rate(const LaplaceTransform& lt, const NetworkConfig& cfg,
                         double r0) {
    cfg.validate();
    if (r0 <= 0) throw std::domain_error("ergodic_rate: r0 > 0");
    double scale = std::pow(r0, cfg.eta) / cfg.power;
    return rate_from_ccdf([&](double t) {
        return std::exp(-t * scale * cfg.noise) * lt(t * scale);
    });
}

ErgodicRate ergodic_rate(const LaplaceTransform& lt) {
    return rate_from_ccdf([&](double t) { return lt(t); });
}

double ber_outage_threshold(double epsilon, const ModulationScheme& scheme) {
    scheme.validate();
    const ModulationScheme::Row& row = scheme.rows.front();
    if (!(epsilon > 0 && epsilon < row.weight))
        throw std::domain_error("ber_outage_threshold: need 0 < eps < w1");
    double q = erfc_inverse(epsilon / row.weight);
    return q * q / row.beta;
}

}  // namespace sgcell
