#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sgcell/geometry.hpp"
#include "sgcell/numerics.hpp"

using namespace sgcell;

namespace {
constexpr double kPi = 3.14159265358979323846;

double empirical_ks_against(const std::vector<double>& samples,
                            const std::function<double(double)>& cdf) {
    std::vector<double> s = samples;
    std::sort(s.begin(), s.end());
    double ks = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
        double f = cdf(s[i]);
        ks = std::max(ks, std::abs(f - (i + 1.0) / s.size()));
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / s.size()));
    }
    return ks;
}
}  // namespace

TEST_CASE("config validation") {
    NetworkConfig bad;
    bad.eta = 2.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    CHECK_THROWS_AS(TierSet{}.validate(), std::domain_error);
    AnnularRegion r{100.0, 50.0};
    CHECK_THROWS_AS(r.validate(), std::domain_error);
}

TEST_CASE("sample_ppp: empty, mean count, variance") {
    RandomStream rng(42, 0);
    AnnularRegion ann{250.0, 1e4};
    CHECK(sample_ppp(0.0, ann, rng).empty());

    double mean_expect = kPi * 1e-6 * (1e8 - 250.0 * 250.0);
    double sum = 0.0, sumsq = 0.0;
    int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        RandomStream s(42, i);
        double n = static_cast<double>(sample_ppp(1e-6, ann, s).size());
        sum += n;
        sumsq += n * n;
    }
    double mean = sum / draws;
    double var = sumsq / draws - mean * mean;
    double se = std::sqrt(mean_expect / draws);
    CHECK(std::abs(mean - mean_expect) < 3.0 * se);
    CHECK(var == doctest::Approx(mean).epsilon(0.05));  // Poisson: var = mean

    // all points inside the annulus
    RandomStream s2(7, 3);
    for (const Point2& p : sample_ppp(1e-6, ann, s2)) {
        CHECK(p.r() >= 250.0);
        CHECK(p.r() <= 1e4);
    }
}

TEST_CASE("nearest point of a PPP follows nearest_distance_pdf") {
    std::vector<double> nearest;
    AnnularRegion disc{0.0, 5000.0};
    for (int i = 0; i < 20000; ++i) {
        RandomStream s(99, i);
        auto pts = sample_ppp(1e-6, disc, s);
        double best = 1e18;
        for (const Point2& p : pts) best = std::min(best, p.r());
        if (best < 1e18) nearest.push_back(best);
    }
    double ks = empirical_ks_against(
        nearest, [](double r) { return nearest_distance_cdf(1e-6, r); });
    CHECK(ks < 0.012);
}

TEST_CASE("nearest_distance closed forms") {
    CHECK(nearest_distance_pdf(1e-6, 0.0) == 0.0);
    double median = std::sqrt(std::log(2.0) / (kPi * 1e-6));
    CHECK(nearest_distance_cdf(1e-6, median) == doctest::Approx(0.5));
    CHECK(median == doctest::Approx(469.7).epsilon(1e-3));
    // mean = 1/(2 sqrt(lambda)) = 500 m, via sampler
    double sum = 0.0;
    int n = 200000;
    for (int i = 0; i < n; ++i) {
        RandomStream s(5, i);
        sum += sample_nearest_distance(1e-6, s);
    }
    double mean = sum / n;
    double sd = std::sqrt((1.0 / (kPi * 1e-6)) - 500.0 * 500.0);
    CHECK(std::abs(mean - 500.0) < 3.0 * sd / std::sqrt(n));
}

TEST_CASE("joint_nearest_nth_pdf normalization and marginal") {
    double lambda = 1e-6;
    // inner integrals must be noticeably more accurate than the outer target
    QuadratureSpec inner_spec;
    inner_spec.abs_tol = 1e-14;
    inner_spec.rel_tol = 1e-12;
    QuadratureSpec outer_spec;
    outer_spec.rel_tol = 1e-8;
    for (int n : {1, 2, 4}) {
        auto outer = [&](double x) {
            auto inner = [&](double y) {
                return joint_nearest_nth_pdf(lambda, n, x, y);
            };
            return integrate_semi_infinite(inner, x, inner_spec);
        };
        double total = integrate_semi_infinite(outer, 0.0, outer_spec);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    }
    // marginal over y recovers the nearest-distance pdf
    for (int i = 1; i <= 10; ++i) {
        double x = 100.0 * i;
        auto inner = [&](double y) {
            return joint_nearest_nth_pdf(lambda, 3, x, y);
        };
        double marginal = integrate_semi_infinite(inner, x, inner_spec);
        CHECK(marginal ==
              doctest::Approx(nearest_distance_pdf(lambda, x)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(joint_nearest_nth_pdf(lambda, 2, 10.0, 5.0),
                    std::domain_error);
}

TEST_CASE("sample_ordered_distances") {
    double lambda = 1e-6;
    // strictly ascending
    RandomStream rng(11, 0);
    for (int i = 0; i < 2000; ++i) {
        auto r = sample_ordered_distances(lambda, 6, rng);
        for (size_t k = 1; k < r.size(); ++k) CHECK(r[k] > r[k - 1]);
    }
    // E[pi lambda r_k^2] = k+1
    int n = 100000;
    std::vector<double> acc(5, 0.0);
    for (int i = 0; i < n; ++i) {
        RandomStream s(12, i);
        auto r = sample_ordered_distances(lambda, 5, s);
        for (int k = 0; k < 5; ++k) acc[k] += kPi * lambda * r[k] * r[k];
    }
    for (int k = 0; k < 5; ++k) {
        double se = std::sqrt((k + 1.0) / n);  // Gamma(k+1,1) variance = k+1
        CHECK(std::abs(acc[k] / n - (k + 1.0)) < 3.0 * se);
    }
    // nearest matches the closed-form law
    std::vector<double> first;
    for (int i = 0; i < 100000; ++i) {
        RandomStream s(13, i);
        first.push_back(sample_ordered_distances(lambda, 1, s)[0]);
    }
    double ks = empirical_ks_against(
        first, [&](double r) { return nearest_distance_cdf(lambda, r); });
    CHECK(ks < 0.01);
}

TEST_CASE("cell_load_pmf") {
    CHECK(cell_load_pmf(1e-6, 0.0, 0) == doctest::Approx(1.0));
    double lb = 1e-6, lu = 5e-6;
    double total = 0.0, mean = 0.0;
    for (int n = 0; n < 4000; ++n) {
        double p = cell_load_pmf(lb, lu, n);
        total += p;
        mean += n * p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mean == doctest::Approx(lu / lb).epsilon(1e-6));
}

TEST_CASE("channel_access_probability limits") {
    CHECK(channel_access_probability(1e-6, 0.0, 4) == doctest::Approx(0.0));
    CHECK(channel_access_probability(1e-6, 1e-2, 4) ==
          doctest::Approx(1.0).epsilon(1e-6));
    // direct PMF sum oracle for the min(k,N)/N weighting
    double lb = 1e-6, lu = 2e-6;
    int N = 4;
    double expect = 0.0;
    for (int k = 0; k < 2000; ++k)
        expect += cell_load_pmf(lb, lu, k) * std::min(k, N) / N;
    CHECK(channel_access_probability(lb, lu, N) ==
          doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("tier association probabilities") {
    TierSet one{{{1e-6, 10.0, 1.0, 4.0}}};
    CHECK(tier_association_probability(one, 0) == doctest::Approx(1.0));

    TierSet twin{{{1e-6, 10.0, 1.0, 4.0}, {1e-6, 10.0, 1.0, 4.0}}};
    CHECK(tier_association_probability(twin, 0) == doctest::Approx(0.5));

    // lambda2 = 2 lambda1, P1 = 50 P2, B = 1: A1 = sqrt(50)/(sqrt(50)+2)
    TierSet biased{{{1e-6, 50.0, 1.0, 4.0}, {2e-6, 1.0, 1.0, 4.0}}};
    double a1 = tier_association_probability(biased, 0);
    CHECK(a1 == doctest::Approx(std::sqrt(50.0) / (std::sqrt(50.0) + 2.0))
                    .epsilon(1e-12));
    CHECK(a1 + tier_association_probability(biased, 1) == doctest::Approx(1.0));

    // Monte-Carlo biased-RSS association oracle
    int assoc1 = 0, draws = 20000;
    for (int i = 0; i < draws; ++i) {
        RandomStream s(31, i);
        double best0 = 1e18, best1 = 1e18;
        AnnularRegion disc{0.0, 20000.0};
        for (const Point2& p : sample_ppp(1e-6, disc, s))
            best0 = std::min(best0, p.r());
        for (const Point2& p : sample_ppp(2e-6, disc, s))
            best1 = std::min(best1, p.r());
        double rss0 = 50.0 * std::pow(best0, -4.0);
        double rss1 = 1.0 * std::pow(best1, -4.0);
        if (rss0 > rss1) ++assoc1;
    }
    double frac = static_cast<double>(assoc1) / draws;
    CHECK(std::abs(frac - a1) < 3.0 * std::sqrt(a1 * (1 - a1) / draws));

    // general-eta integral path agrees with the closed form at eta = 4
    TierSet biased_num = biased;
    biased_num.tiers[0].eta = 4.0 + 1e-9;  // forces the numeric branch
    CHECK(tier_association_probability(biased_num, 0) ==
          doctest::Approx(a1).epsilon(1e-7));
}

TEST_CASE("tier_service_distance_pdf") {
    TierSet one{{{1e-6, 10.0, 1.0, 4.0}}};
    for (int i = 1; i <= 20; ++i) {
        double x = 75.0 * i;
        CHECK(tier_service_distance_pdf(one, 0, x) ==
              doctest::Approx(nearest_distance_pdf(1e-6, x)).epsilon(1e-12));
    }
    TierSet two{{{1e-6, 50.0, 1.0, 4.0}, {2e-6, 1.0, 0.5, 4.0}}};
    QuadratureSpec spec;
    for (int k = 0; k < 2; ++k) {
        double total = integrate_semi_infinite(
            [&](double x) { return tier_service_distance_pdf(two, k, x); }, 0.0,
            spec);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("truncation radius rule") {
    CHECK(truncation_radius(1e-6, 250.0) ==
          doctest::Approx(30.0 / std::sqrt(kPi * 1e-6)));
    CHECK(truncation_radius(1e-6, 1000.0) == doctest::Approx(20000.0));
}
