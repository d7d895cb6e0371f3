#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "sgcell/interference.hpp"
#include "sgcell/numerics.hpp"
#include "sgcell/simulator.hpp"
#include "sgcell/transforms.hpp"

using namespace sgcell;

namespace {
constexpr double kPi = 3.14159265358979323846;

NetworkConfig fig_cfg() { return {1e-6, 10.0, 4.0, 0.0, 0.0}; }

// shared field samples at the reference operating point, generated once
const std::vector<std::complex<double>>& field_samples() {
    static const std::vector<std::complex<double>> samples = [] {
        SimulationPlan plan;
        plan.cfg = fig_cfg();
        plan.realizations = 100000;
        plan.seed = 42;
        plan.region = {250.0, 2500.0};  // far tail carries ~1% of the power
        return simulate_downlink_field(
            plan.cfg, SignalingMode::exact(Constellation::qam(4)), 250.0,
            plan);
    }();
    return samples;
}
}  // namespace

TEST_CASE("constellation factories are zero-mean unit-power") {
    for (int m : {4, 16, 64}) {
        Constellation c = Constellation::qam(m);
        CHECK(c.symbols.size() == static_cast<size_t>(m));
        CHECK_NOTHROW(c.validate());
        CHECK(c.abs_moment(2.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_NOTHROW(Constellation::bpsk().validate());
    CHECK_NOTHROW(Constellation::psk(8).validate());
    Constellation nonzero_mean{{{1.0, 0.0}}};
    Constellation bad_power{{{2.0, 0.0}, {-2.0, 0.0}}};
    CHECK_THROWS_AS(nonzero_mean.validate(), std::domain_error);
    CHECK_THROWS_AS(bad_power.validate(), std::domain_error);
    CHECK_THROWS_AS(Constellation::qam(8), std::domain_error);
}

TEST_CASE("constellation fourth moments") {
    // 4-QAM is constant-modulus; 16-QAM E|s|^4 = 1.32
    CHECK(Constellation::qam(4).abs_moment(4.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(Constellation::qam(16).abs_moment(4.0) ==
          doctest::Approx(1.32).epsilon(1e-12));
    CHECK(Constellation::psk(8).abs_moment(4.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // gaussian symbols: E|s|^{2q} = q!
    SignalingMode g = SignalingMode::gaussian();
    CHECK(g.abs_moment(2.0) == doctest::Approx(1.0));
    CHECK(g.abs_moment(4.0) == doctest::Approx(2.0));
    CHECK(g.abs_moment(6.0) == doctest::Approx(6.0));
}

TEST_CASE("characteristic function basics") {
    NetworkConfig cfg = fig_cfg();
    SignalingMode q4 = SignalingMode::exact(Constellation::qam(4));
    SignalingMode gs = SignalingMode::gaussian();
    CHECK(cf_aggregate(0.0, cfg, q4, 250.0) == 1.0);
    CHECK(cf_aggregate(0.0, cfg, gs, 250.0) == 1.0);
    // monotone decreasing in |omega|, bounded by 1
    double prev = 1.0;
    for (double w = 1e3; w <= 1e6; w *= 2) {
        double v = cf_aggregate(w, cfg, q4, 250.0);
        CHECK(v <= prev + 1e-15);
        CHECK(v > 0);
        prev = v;
    }
    CHECK_THROWS_AS(cf_aggregate(1.0, cfg, q4, 0.0), std::domain_error);
}

TEST_CASE("gaussian-signaling CF equals the baseline LT at z = w^2/4") {
    NetworkConfig cfg = fig_cfg();
    SignalingMode gs = SignalingMode::gaussian();
    for (double w : {1e3, 1e4, 5e4, 2e5}) {
        double cf = cf_aggregate(w, cfg, gs, 250.0);
        double lt = lt_baseline(w * w / 4.0, cfg.lambda_bs, cfg.power, cfg.eta,
                                250.0);
        CHECK(cf == doctest::Approx(lt).epsilon(1e-12));
    }
}

TEST_CASE("exact CF equals lt_zeta at z = w^2 P / (4 r0^eta)") {
    NetworkConfig cfg = fig_cfg();
    Constellation q4 = Constellation::qam(4);
    SignalingMode mode = SignalingMode::exact(q4);
    for (double w : {1e3, 1e4, 5e4, 2e5}) {
        double cf = cf_aggregate(w, cfg, mode, 250.0);
        double z = w * w * cfg.power / (4.0 * std::pow(250.0, cfg.eta));
        CHECK(cf == doctest::Approx(lt_zeta(z, cfg.lambda_bs, 250.0, cfg.eta,
                                            q4))
                        .epsilon(1e-12));
    }
}

TEST_CASE("cumulants: closed forms and CF consistency") {
    NetworkConfig cfg = fig_cfg();
    SignalingMode q4 = SignalingMode::exact(Constellation::qam(4));
    SignalingMode gs = SignalingMode::gaussian();
    double r0 = 250.0;

    CHECK(cumulant(1, cfg, q4, r0) == 0.0);
    CHECK(cumulant(3, cfg, q4, r0) == 0.0);
    CHECK_THROWS_AS(cumulant(0, cfg, q4, r0), std::domain_error);

    double k2 = cumulant(2, cfg, q4, r0);
    CHECK(k2 == doctest::Approx(2.5132741e-10).epsilon(1e-6));
    // per-dimension variance is half the total mean power
    CHECK(2.0 * k2 == doctest::Approx(mean_power(cfg, r0)).epsilon(1e-12));
    CHECK(mean_power(cfg, r0) == doctest::Approx(5.0265482e-10).epsilon(1e-6));

    // gaussian vs 4-QAM kappa_4 ratio = E|s|^4 ratio = 2; 16-QAM/4-QAM = 1.32
    SignalingMode q16 = SignalingMode::exact(Constellation::qam(16));
    CHECK(cumulant(4, cfg, gs, r0) / cumulant(4, cfg, q4, r0) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cumulant(4, cfg, q16, r0) / cumulant(4, cfg, q4, r0) ==
          doctest::Approx(1.32).epsilon(1e-12));
    // eta=4, 4-QAM: kappa_4 = pi lambda P^2 / (4 r0^6) * ... spot value
    CHECK(cumulant(4, cfg, q4, r0) ==
          doctest::Approx(0.25 * kPi * cfg.lambda_bs * cfg.power * cfg.power /
                          std::pow(r0, 6.0))
              .epsilon(1e-12));

    // log-CF series: ln cf(w) = -k2 w^2/2 + k4 w^4/24 - ... for Re(i_agg)
    double k4 = cumulant(4, cfg, q4, r0);
    double k6 = cumulant(6, cfg, q4, r0);
    for (double w : {5e3, 2e4}) {
        double lhs = std::log(cf_aggregate(w, cfg, q4, r0));
        double series = -k2 * w * w / 2.0 + k4 * std::pow(w, 4.0) / 24.0 -
                        k6 * std::pow(w, 6.0) / 720.0;
        CHECK(lhs == doctest::Approx(series)
                         .epsilon(std::abs(k6) * std::pow(w, 6.0) / 720.0 /
                                      std::abs(lhs) * 10.0 +
                                  1e-9));
    }
}

TEST_CASE("kurtosis closed form") {
    NetworkConfig cfg = fig_cfg();
    SignalingMode q4 = SignalingMode::exact(Constellation::qam(4));
    double r0 = 250.0;
    // eta=4, constant-modulus: kurtosis = 1/(pi lambda r0^2)
    CHECK(kurtosis(cfg, q4, r0) ==
          doctest::Approx(1.0 / (kPi * cfg.lambda_bs * r0 * r0))
              .epsilon(1e-12));
    // matches kappa_4 / kappa_2^2
    double k2 = cumulant(2, cfg, q4, r0);
    double k4 = cumulant(4, cfg, q4, r0);
    CHECK(kurtosis(cfg, q4, r0) == doctest::Approx(k4 / (k2 * k2)));
    // grows as the guard zone shrinks (heavier non-Gaussian behavior)
    CHECK(kurtosis(cfg, q4, 100.0) > kurtosis(cfg, q4, 250.0));
}

TEST_CASE("moment_from_cumulants Bell recursion") {
    // pure Gaussian: m4 = 3 k2^2, m6 = 15 k2^3
    double k2 = 1.7;
    std::vector<double> kappa{0.0, k2, 0.0, 0.0, 0.0, 0.0};
    CHECK(moment_from_cumulants(2, kappa) == doctest::Approx(k2));
    CHECK(moment_from_cumulants(4, kappa) == doctest::Approx(3.0 * k2 * k2));
    CHECK(moment_from_cumulants(6, kappa) ==
          doctest::Approx(15.0 * k2 * k2 * k2));
    // with excess kurtosis: m4 = k4 + 3 k2^2
    kappa[3] = 0.9;
    CHECK(moment_from_cumulants(4, kappa) ==
          doctest::Approx(0.9 + 3.0 * k2 * k2));
    CHECK(moment_from_cumulants(0, kappa) == 1.0);
    CHECK_THROWS_AS(moment_from_cumulants(7, kappa), std::domain_error);
}

TEST_CASE("alpha-stable limit: CF approaches it as r0 -> 0") {
    NetworkConfig cfg = fig_cfg();
    SignalingMode q4 = SignalingMode::exact(Constellation::qam(4));
    double w = 1e4;
    double lim = cf_alpha_stable_limit(w, cfg, q4);
    CHECK(lim > 0);
    CHECK(lim < 1);
    CHECK(cf_alpha_stable_limit(0.0, cfg, q4) == 1.0);
    double prev_gap = 1e9;
    for (double r0 : {100.0, 30.0, 10.0, 3.0}) {
        double gap = std::abs(cf_aggregate(w, cfg, q4, r0) - lim);
        CHECK(gap < prev_gap + 1e-15);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-4);
    // eta=4: exponent is linear in |w| (Cauchy-type per dimension)
    double l1 = -std::log(cf_alpha_stable_limit(1e4, cfg, q4));
    double l2 = -std::log(cf_alpha_stable_limit(2e4, cfg, q4));
    CHECK(l2 == doctest::Approx(2.0 * l1).epsilon(1e-9));
}

TEST_CASE("EiD variances and CF reconstruction") {
    // dense network so that Q=24 covers the whole working |omega| range
    NetworkConfig cfg{1e-4, 10.0, 4.0, 0.0, 0.0};
    Constellation q4 = Constellation::qam(4);
    double r0 = 100.0;
    EiDRepresentation rep = eid_variances(cfg, q4, r0, 24);
    CHECK(rep.variances.size() == 24);
    CHECK(rep.truncation_order == 24);
    for (double v : rep.variances) CHECK(v > 0);
    // sigma_1^2 equals the total mean interference power (= pi lambda P/r0^2)
    CHECK(rep.variances[0] ==
          doctest::Approx(mean_power(cfg, r0)).epsilon(1e-12));
    CHECK(rep.tail_bound < 1e-12);
    CHECK_THROWS_AS(eid_variances(cfg, q4, r0, 0), std::domain_error);

    SignalingMode mode = SignalingMode::exact(q4);
    double w_edge = std::sqrt(32.0 / rep.variances[0]);
    for (double w = w_edge / 64.0; w <= w_edge; w *= 2) {
        double exact = cf_aggregate(w, cfg, mode, r0);
        CHECK(cf_from_eid(rep, w) ==
              doctest::Approx(exact).epsilon(1e-9));
    }

    // too-short truncations advertise their unusable range honestly
    EiDRepresentation coarse = eid_variances(fig_cfg(), q4, 250.0, 3);
    CHECK(coarse.tail_bound > 1.0);
}

TEST_CASE("field oracle: zero mean per dimension") {
    const auto& s = field_samples();
    double mr = 0, mi = 0, vr = 0, vi = 0;
    for (auto z : s) {
        mr += z.real();
        mi += z.imag();
    }
    mr /= s.size();
    mi /= s.size();
    for (auto z : s) {
        vr += (z.real() - mr) * (z.real() - mr);
        vi += (z.imag() - mi) * (z.imag() - mi);
    }
    double ser = std::sqrt(vr / s.size() / s.size());
    double sei = std::sqrt(vi / s.size() / s.size());
    CHECK(std::abs(mr) < 2.58 * ser);
    CHECK(std::abs(mi) < 2.58 * sei);
}

TEST_CASE("field oracle: mean power matches the closed form") {
    NetworkConfig cfg = fig_cfg();
    const auto& s = field_samples();
    double p = 0;
    for (auto z : s) p += std::norm(z);
    p /= s.size();
    // region truncated at 10 r0: ~1% of the power sits beyond
    double expected = mean_power(cfg, 250.0) * (1.0 - 0.01);
    CHECK(p == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("field oracle: per-dimension variance and kurtosis") {
    NetworkConfig cfg = fig_cfg();
    SignalingMode q4 = SignalingMode::exact(Constellation::qam(4));
    const auto& s = field_samples();
    double m2 = 0, m4 = 0;
    for (auto z : s) {
        double x = z.real();
        m2 += x * x;
        m4 += x * x * x * x;
    }
    m2 /= s.size();
    m4 /= s.size();
    double excess = m4 / (m2 * m2) - 3.0;
    // truncation inflates the ratio by ~(1/0.99)^2
    CHECK(excess == doctest::Approx(kurtosis(cfg, q4, 250.0) * 1.0203)
                        .epsilon(0.10));
    CHECK(m2 == doctest::Approx(cumulant(2, cfg, q4, 250.0) * 0.99)
                    .epsilon(0.05));
}

TEST_CASE("field oracle: empirical CF matches cf_aggregate") {
    NetworkConfig cfg = fig_cfg();
    SignalingMode q4 = SignalingMode::exact(Constellation::qam(4));
    const auto& s = field_samples();
    for (double w : {2e4, 6e4, 1e5}) {
        double acc = 0, acc2 = 0;
        for (auto z : s) {
            double c = std::cos(w * z.real());
            acc += c;
            acc2 += c * c;
        }
        double mean = acc / s.size();
        double var = acc2 / s.size() - mean * mean;
        double se = std::sqrt(var / s.size());
        double analytic = cf_aggregate(w, cfg, q4, 250.0);
        // small positive truncation offset: far field removed from the CF
        CHECK(std::abs(mean - analytic) < 3.0 * se + 5e-3);
    }
}
