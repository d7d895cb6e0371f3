#include "sgcell/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "sgcell/numerics.hpp"
#include "sgcell/random.hpp"

namespace sgcell {
namespace {
constexpr double kPi = 3.14159265358979323846;

std::complex<double> cn01(RandomStream& rng) {
    return {rng.normal() / std::sqrt(2.0), rng.normal() / std::sqrt(2.0)};
}

std::complex<double> draw_symbol(const SignalingMode& mode, RandomStream& rng) {
    if (mode.kind == SignalingMode::Kind::gaussian) return cn01(rng);
    const auto& syms = mode.constellation.symbols;
    return syms[rng.uniform_index(syms.size())];
}

// run realizations [0, n) across `workers` threads; slot-indexed results keep
// the output independent of the thread schedule
template <typename Fn>
void for_each_realization(long n, int workers, Fn&& fn) {
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            for (long i = t; i < n; i += workers) fn(i);
        });
    for (auto& th : pool) th.join();
}

// uniform-grid spatial index over [-R,R]^2 for nearest-BS queries
class GridIndex {
  public:
    GridIndex(const std::vector<Point2>& pts, double extent, double cell)
        : pts_(pts), extent_(extent), cell_(cell) {
        n_ = std::max(1, static_cast<int>(std::ceil(2.0 * extent / cell)));
        buckets_.resize(static_cast<std::size_t>(n_) * n_);
        for (std::size_t i = 0; i < pts.size(); ++i)
            buckets_[bucket_of(pts[i].x, pts[i].y)].push_back(
                static_cast<int>(i));
    }

    int nearest(double x, double y) const {
        int cx = clampi(static_cast<int>((x + extent_) / cell_));
        int cy = clampi(static_cast<int>((y + extent_) / cell_));
        int best = -1;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring < n_; ++ring) {
            scan_ring(cx, cy, ring, x, y, best, best_d2);
            // cells on ring+1 are at least ring*cell away from the query
            double bound = static_cast<double>(ring) * cell_;
            if (best >= 0 && best_d2 <= bound * bound) break;
        }
        return best;
    }

  private:
    int clampi(int v) const { return std::min(std::max(v, 0), n_ - 1); }
    std::size_t bucket_of(double x, double y) const {
        return static_cast<std::size_t>(
                   clampi(static_cast<int>((y + extent_) / cell_))) *
                   n_ +
               clampi(static_cast<int>((x + extent_) / cell_));
    }
    void scan_ring(int cx, int cy, int ring, double x, double y, int& best,
                   double& best_d2) const {
        int lo_x = cx - ring, hi_x = cx + ring;
        int lo_y = cy - ring, hi_y = cy + ring;
        for (int iy = lo_y; iy <= hi_y; ++iy) {
            if (iy < 0 || iy >= n_) continue;
            for (int ix = lo_x; ix <= hi_x; ++ix) {
                if (ix < 0 || ix >= n_) continue;
                if (ring > 0 && ix != lo_x && ix != hi_x && iy != lo_y &&
                    iy != hi_y)
                    continue;  // interior already scanned
                for (int idx : buckets_[static_cast<std::size_t>(iy) * n_ + ix]) {
                    double dx = pts_[idx].x - x, dy = pts_[idx].y - y;
                    double d2 = dx * dx + dy * dy;
                    if (d2 < best_d2) {
                        best_d2 = d2;
                        best = idx;
                    }
                }
            }
        }
    }

    const std::vector<Point2>& pts_;
    double extent_, cell_;
    int n_;
    std::vector<std::vector<int>> buckets_;
};

}  // namespace

void SimulationPlan::validate() const {
    cfg.validate();
    if (realizations < 1)
        throw std::domain_error("SimulationPlan: realizations >= 1");
    if (symbols_per_realization < 1)
        throw std::domain_error("SimulationPlan: symbols_per_realization >= 1");
    if (workers < 1) throw std::domain_error("SimulationPlan: workers >= 1");
    if (access_probability < 0 || access_probability > 1)
        throw std::domain_error("SimulationPlan: access probability in [0,1]");
    if (reuse_delta < 1) throw std::domain_error("SimulationPlan: reuse >= 1");
    if (nakagami_m < 1 || mrc_branches < 1 || comp_n < 1)
        throw std::domain_error("SimulationPlan: m, N_r, n must be >= 1");
    if (rho <= 0) throw std::domain_error("SimulationPlan: rho > 0");
    if (scenario == Scenario::multitier) tiers.validate();
    if (scenario == Scenario::fixed_r0 || scenario == Scenario::nakagami) {
        if (cfg.exclusion_radius <= 0)
            throw std::domain_error("SimulationPlan: fixed scenarios need r0 > 0");
    }
}

AnnularRegion SimulationPlan::effective_region(double inner) const {
    if (region.outer_radius > 0)
        return {std::max(inner, region.inner_radius), region.outer_radius};
    return {inner, truncation_radius(cfg.lambda_bs, inner)};
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
    if (samples_.empty())
        throw std::domain_error("EmpiricalDistribution: no samples");
    std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::cdf(double x) const {
    auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
    return static_cast<double>(it - samples_.begin()) / samples_.size();
}

EmpiricalDistribution::Interval EmpiricalDistribution::ci(double x,
                                                          double level) const {
    if (level <= 0 || level >= 1)
        throw std::domain_error("EmpiricalDistribution::ci: level in (0,1)");
    double p = cdf(x);
    double z = std::sqrt(2.0) * erfc_inverse(1.0 - level);
    double half = z * std::sqrt(p * (1.0 - p) / samples_.size());
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

double EmpiricalDistribution::quantile(double p) const {
    if (p < 0 || p > 1)
        throw std::domain_error("EmpiricalDistribution::quantile: p in [0,1]");
    if (p == 0) return samples_.front();
    auto idx = static_cast<std::size_t>(
        std::ceil(p * static_cast<double>(samples_.size())));
    return samples_[std::min(idx, samples_.size()) - 1];
}

std::vector<std::complex<double>> simulate_downlink_field(
    const NetworkConfig& cfg, const SignalingMode& mode, double r0,
    const SimulationPlan& plan) {
    cfg.validate();
    if (r0 <= 0) throw std::domain_error("simulate_downlink_field: r0 > 0");
    if (plan.realizations < 1)
        throw std::domain_error("simulate_downlink_field: realizations >= 1");
    AnnularRegion region = plan.effective_region(r0);
    std::vector<std::complex<double>> out(plan.realizations);
    double sqrt_p = std::sqrt(cfg.power);
    for_each_realization(plan.realizations, plan.workers, [&](long i) {
        RandomStream rng(plan.seed, static_cast<std::uint64_t>(i));
        std::complex<double> agg{0.0, 0.0};
        for (const Point2& pt : sample_ppp(cfg.lambda_bs, region, rng)) {
            std::complex<double> s = draw_symbol(mode, rng);
            std::complex<double> h =
                std::complex<double>{rng.normal(), rng.normal()} /
                std::sqrt(2.0);
            agg += sqrt_p * s * h * std::pow(pt.r(), -cfg.eta / 2.0);
        }
        out[static_cast<std::size_t>(i)] = agg;
    });
    return out;
}

namespace {

double interference_power(const NetworkConfig& cfg, double intensity,
                          const AnnularRegion& region, int fading_m,
                          RandomStream& rng) {
    double acc = 0.0;
    bool eta4 = cfg.eta == 4.0;
    for (const Point2& pt : sample_ppp(intensity, region, rng)) {
        double g = (fading_m == 1)
                       ? rng.exponential()
                       : rng.gamma_int(fading_m, 1.0 / fading_m);
        double r2 = pt.x * pt.x + pt.y * pt.y;
        acc += cfg.power * g *
               (eta4 ? 1.0 / (r2 * r2) : std::pow(r2, -cfg.eta / 2.0));
    }
    return acc;
}

double multitier_sinr_sample(const SimulationPlan& plan, RandomStream& rng) {
    const TierSet& ts = plan.tiers;
    int K = static_cast<int>(ts.tiers.size());
    std::vector<std::vector<Point2>> fields(K);
    std::vector<double> nearest2(K,
                                 std::numeric_limits<double>::infinity());
    for (int i = 0; i < K; ++i) {
        AnnularRegion reg{0.0, truncation_radius(ts.tiers[i].lambda, 0.0)};
        fields[i] = sample_ppp(ts.tiers[i].lambda, reg, rng);
        for (const Point2& pt : fields[i]) {
            double d2 = pt.x * pt.x + pt.y * pt.y;
            if (d2 < nearest2[i]) nearest2[i] = d2;
        }
    }
    // biased association on the tier-nearest candidates
    int k_star = -1;
    double best_rx = -1.0;
    for (int i = 0; i < K; ++i) {
        if (!std::isfinite(nearest2[i])) continue;
        double rx = ts.tiers[i].bias * ts.tiers[i].power /
                    (nearest2[i] * nearest2[i]);  // B P d^-4
        if (rx > best_rx) {
            best_rx = rx;
            k_star = i;
        }
    }
    if (k_star < 0) return std::numeric_limits<double>::infinity();
    double r2_serv = nearest2[k_star];
    double interference = 0.0;
    bool serving_skipped = false;
    for (int i = 0; i < K; ++i) {
        for (const Point2& pt : fields[i]) {
            double d2 = pt.x * pt.x + pt.y * pt.y;
            if (!serving_skipped && i == k_star && d2 == r2_serv) {
                serving_skipped = true;
                continue;
            }
            interference +=
                ts.tiers[i].power * rng.exponential() / (d2 * d2);
        }
    }
    double signal =
        ts.tiers[k_star].power * rng.exponential() / (r2_serv * r2_serv);
    return signal / (plan.cfg.noise + interference);
}

double downlink_sinr_sample(const SimulationPlan& plan, RandomStream& rng) {
    using S = SimulationPlan::Scenario;
    const NetworkConfig& cfg = plan.cfg;
    double intensity = cfg.lambda_bs;
    int fading_m = 1;
    double r0 = 0.0, excl = 0.0;
    double signal_gain = 0.0;
    switch (plan.scenario) {
        case S::fixed_r0:
        case S::nakagami:
            r0 = excl = cfg.exclusion_radius;
            signal_gain = rng.exponential();
            if (plan.scenario == S::nakagami) fading_m = plan.nakagami_m;
            break;
        case S::random_r0:
            r0 = excl = sample_nearest_distance(cfg.lambda_bs, rng);
            signal_gain = rng.exponential();
            break;
        case S::load_aware:
            r0 = excl = sample_nearest_distance(cfg.lambda_bs, rng);
            intensity *= plan.access_probability;
            signal_gain = rng.exponential();
            break;
        case S::reuse:
        case S::mrc: {
            int delta = plan.reuse_delta;
            std::vector<double> ord =
                sample_ordered_distances(cfg.lambda_bs, delta, rng);
            r0 = ord.front();
            excl = ord.back();  // the delta-th nearest BS is the first
                                // co-channel interferer candidate
            intensity /= delta;
            int branches =
                plan.scenario == S::mrc ? plan.mrc_branches : 1;
            signal_gain = rng.gamma_int(branches, 1.0);
            break;
        }
        case S::comp: {
            std::vector<double> ord =
                sample_ordered_distances(cfg.lambda_bs, plan.comp_n, rng);
            excl = ord.back();
            // non-coherent combining: power adds across cooperating BSs
            double s = 0.0;
            for (double ri : ord)
                s += rng.exponential() * std::pow(ri, -cfg.eta);
            double interference = interference_power(
                cfg, intensity, plan.effective_region(excl), 1, rng);
            return cfg.power * s / (cfg.noise + interference);
        }
        default:
            throw std::logic_error("downlink_sinr_sample: bad scenario");
    }
    double interference = interference_power(
        cfg, intensity, plan.effective_region(excl), fading_m, rng);
    double signal = cfg.power * signal_gain * std::pow(r0, -cfg.eta);
    return signal / (cfg.noise + interference);
}

}  // namespace

EmpiricalDistribution simulate_sinr(const SimulationPlan& plan) {
    plan.validate();
    if (plan.scenario == SimulationPlan::Scenario::uplink)
        return simulate_uplink(plan.cfg.lambda_bs, plan.rho, plan);
    std::vector<double> sinr(plan.realizations);
    for_each_realization(plan.realizations, plan.workers, [&](long i) {
        RandomStream rng(plan.seed, static_cast<std::uint64_t>(i));
        sinr[static_cast<std::size_t>(i)] =
            plan.scenario == SimulationPlan::Scenario::multitier
                ? multitier_sinr_sample(plan, rng)
                : downlink_sinr_sample(plan, rng);
    });
    return EmpiricalDistribution(std::move(sinr));
}

SepEstimate simulate_symbol_errors(const NetworkConfig& cfg,
                                   const Constellation& constellation,
                                   const SignalingMode& mode,
                                   const SimulationPlan& plan) {
    cfg.validate();
    constellation.validate();
    if (plan.realizations < 1 || plan.symbols_per_realization < 1)
        throw std::domain_error("simulate_symbol_errors: bad plan");
    bool random_r0 = plan.scenario == SimulationPlan::Scenario::random_r0;
    if (!random_r0 && cfg.exclusion_radius <= 0)
        throw std::domain_error("simulate_symbol_errors: needs r0 > 0");
    const auto& syms = constellation.symbols;
    double sqrt_p = std::sqrt(cfg.power);
    double noise_dim = std::sqrt(cfg.noise / 2.0);
    std::vector<double> err_rate(plan.realizations);
    for_each_realization(plan.realizations, plan.workers, [&](long i) {
        RandomStream rng(plan.seed, static_cast<std::uint64_t>(i));
        double r0 = random_r0 ? sample_nearest_distance(cfg.lambda_bs, rng)
                              : cfg.exclusion_radius;
        std::vector<Point2> field =
            sample_ppp(cfg.lambda_bs, plan.effective_region(r0), rng);
        std::vector<double> amp(field.size());
        for (std::size_t k = 0; k < field.size(); ++k)
            amp[k] = sqrt_p * std::pow(field[k].r(), -cfg.eta / 2.0);
        double gain0 = sqrt_p * std::pow(r0, -cfg.eta / 2.0);
        long errors = 0;
        for (int sym = 0; sym < plan.symbols_per_realization; ++sym) {
            std::complex<double> h0 = cn01(rng);
            std::size_t tx = rng.uniform_index(syms.size());
            std::complex<double> y = gain0 * h0 * syms[tx];
            for (std::size_t k = 0; k < field.size(); ++k)
                y += amp[k] * draw_symbol(mode, rng) * cn01(rng);
            y += std::complex<double>{noise_dim * rng.normal(),
                                      noise_dim * rng.normal()};
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < syms.size(); ++m) {
                double d = std::norm(y - gain0 * h0 * syms[m]);
                if (d < best_d) {
                    best_d = d;
                    best = m;
                }
            }
            if (best != tx) ++errors;
        }
        err_rate[static_cast<std::size_t>(i)] =
            static_cast<double>(errors) / plan.symbols_per_realization;
    });
    long n_sym =
        plan.realizations * static_cast<long>(plan.symbols_per_realization);
    double mean = 0.0;
    for (double p : err_rate) mean += p;
    mean /= err_rate.size();
    double se;
    if (err_rate.size() > 1) {
        // cluster-robust: symbols within a realization share the field
        double ss = 0.0;
        for (double p : err_rate) ss += (p - mean) * (p - mean);
        se = std::sqrt(ss / (err_rate.size() * (err_rate.size() - 1.0)));
    } else {
        se = std::sqrt(mean * (1.0 - mean) / n_sym);
    }
    return {mean, se, n_sym};
}

EmpiricalDistribution simulate_uplink(double lambda_bs, double rho,
                                      const SimulationPlan& plan) {
    if (lambda_bs <= 0) throw std::domain_error("simulate_uplink: lambda > 0");
    if (rho <= 0) throw std::domain_error("simulate_uplink: rho > 0");
    if (plan.realizations < 1)
        throw std::domain_error("simulate_uplink: realizations >= 1");
    double extent = plan.region.outer_radius > 0
                        ? plan.region.outer_radius
                        : truncation_radius(lambda_bs, 0.0);
    double cell = 1.0 / std::sqrt(lambda_bs);
    // proposal disc: P{cell reaches past 3.5/sqrt(pi lambda)} ~ e^-12
    double r_prop = 3.5 / std::sqrt(kPi * lambda_bs);
    double noise = plan.cfg.noise;
    std::vector<double> sinr(plan.realizations);
    for_each_realization(plan.realizations, plan.workers, [&](long i) {
        RandomStream rng(plan.seed, static_cast<std::uint64_t>(i));
        std::vector<Point2> bs =
            sample_ppp(lambda_bs, AnnularRegion{0.0, extent}, rng);
        bs.push_back({0.0, 0.0});  // test BS
        int origin_idx = static_cast<int>(bs.size()) - 1;
        GridIndex grid(bs, extent + r_prop, cell);
        auto draw_ue = [&](int owner, Point2& ue) {
            for (int attempt = 0; attempt < 256; ++attempt) {
                double r = r_prop * std::sqrt(rng.uniform());
                double th = 2.0 * kPi * rng.uniform();
                ue = {bs[owner].x + r * std::cos(th),
                      bs[owner].y + r * std::sin(th)};
                if (grid.nearest(ue.x, ue.y) == owner) return true;
            }
            return false;
        };
        double interference = 0.0;
        for (int k = 0; k < origin_idx; ++k) {
            Point2 ue;
            if (!draw_ue(k, ue)) continue;  // degenerate sliver cell
            double rk2 = (ue.x - bs[k].x) * (ue.x - bs[k].x) +
                         (ue.y - bs[k].y) * (ue.y - bs[k].y);
            double dk2 = ue.x * ue.x + ue.y * ue.y;
            if (dk2 == 0.0) continue;
            // transmit power rho*R_k^4, received over distance D_k
            interference +=
                rho * rk2 * rk2 * rng.exponential() / (dk2 * dk2);
        }
        double signal = rho * rng.exponential();
        sinr[static_cast<std::size_t>(i)] = signal / (noise + interference);
    });
    return EmpiricalDistribution(std::move(sinr));
}

}  // namespace sgcell
