#include "sgcell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sgcell {
namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_nonpositive_integer(double a) {
    return a <= 1e-12 && std::abs(a - std::round(a)) < 1e-12;
}

// Σ (a)_n (b)_n / ((c)_n n!) u^n by term recurrence.  Terminates naturally
// when a or b is a nonpositive integer.  Returns NaN if not converged.
double series_2f1(double a, double b, double c, double u, long max_terms) {
    long double sum = 1.0L, term = 1.0L;
    int small_streak = 0;
    for (long n = 0; n < max_terms; ++n) {
        term *= static_cast<long double>(a + n) * (b + n) /
                ((c + n) * (n + 1)) * u;
        if (term == 0.0L) return static_cast<double>(sum);
        sum += term;
        if (std::abs(static_cast<double>(term)) <
            1e-16 * std::abs(static_cast<double>(sum))) {
            if (++small_streak >= 2) return static_cast<double>(sum);
        } else {
            small_streak = 0;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// Direct ₁F₁ series; safe for x ≥ 0 with a,b > 0 (positive terms) and for
// terminating parameter sets.
double series_1f1(double a, double b, double x) {
    long double sum = 1.0L, term = 1.0L;
    for (long n = 0; n < 100000; ++n) {
        term *= static_cast<long double>(a + n) / ((b + n) * (n + 1)) * x;
        if (term == 0.0L) break;
        sum += term;
        if (std::abs(static_cast<double>(term)) <
            1e-17 * std::abs(static_cast<double>(sum)) && n > 3)
            break;
    }
    return static_cast<double>(sum);
}

// Upper incomplete gamma Γ(s,x) by Lentz continued fraction, x ≥ s+1.
double upper_gamma_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    double lg = s * std::log(x) - x;
    if (lg < -700.0) return 0.0;
    return std::exp(lg) * h;
}

}  // namespace

double lower_incomplete_gamma(double s, double x) {
    if (s <= 0) throw std::domain_error("lower_incomplete_gamma: s must be > 0");
    if (x < 0) throw std::domain_error("lower_incomplete_gamma: x must be >= 0");
    if (x == 0) return 0.0;
    if (x < s + 1.0) {
        // series: γ(s,x) = x^s e^{-x} Σ x^n / (s(s+1)...(s+n))
        long double term = 1.0L / s, sum = term;
        for (int n = 1; n < 10000; ++n) {
            term *= x / (s + n);
            sum += term;
            if (term < 1e-17L * sum) break;
        }
        return std::exp(s * std::log(x) - x) * static_cast<double>(sum);
    }
    return std::tgamma(s) - upper_gamma_cf(s, x);
}

double kummer_1f1(double a, double b, double x) {
    if (is_nonpositive_integer(b) && !is_nonpositive_integer(a))
        throw std::domain_error("kummer_1f1: b is a nonpositive integer");
    if (x == 0) return 1.0;
    if (is_nonpositive_integer(a)) {
        // terminating polynomial
        long double sum = 1.0L, term = 1.0L;
        long nmax = static_cast<long>(-std::round(a));
        for (long n = 0; n < nmax; ++n) {
            term *= static_cast<long double>(a + n) / ((b + n) * (n + 1)) * x;
            sum += term;
        }
        return static_cast<double>(sum);
    }
    if (a < 0 && std::abs((b - a) - 1.0) < 1e-12 && x < 0) {
        // ₁F₁(-s; 1-s; -y) = e^{-y} + y^s γ(1-s, y): the interference-CF
        // kernel, stable for arbitrarily large y.
        double s = -a, y = -x;
        if (s >= 1.0)
            throw std::domain_error("kummer_1f1: path-loss regime needs 0<s<1");
        return std::exp(-y) + std::pow(y, s) * lower_incomplete_gamma(1.0 - s, y);
    }
    if (x < 0) {
        // Kummer transform to a positive-argument series.
        if (b > 0 && b - a >= 0) return std::exp(x) * series_1f1(b - a, b, -x);
        throw std::domain_error("kummer_1f1: unsupported parameter regime");
    }
    if (x > 700)
        throw std::domain_error("kummer_1f1: argument too large for series");
    return series_1f1(a, b, x);
}

double gauss_2f1(double a, double b, double c, double x) {
    if (is_nonpositive_integer(c) &&
        !(is_nonpositive_integer(a) || is_nonpositive_integer(b)))
        throw std::domain_error("gauss_2f1: c is a nonpositive integer");
    if (x == 0) return 1.0;
    if (x >= 1) throw std::domain_error("gauss_2f1: x must be < 1");
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
        double r = series_2f1(a, b, c, x, 1000000);
        if (std::isfinite(r)) return r;
        throw AccuracyError("gauss_2f1: terminating series failed", r, 1.0);
    }
    if (x > 0) {
        double r = series_2f1(a, b, c, x, 2000000);
        if (std::isfinite(r)) return r;
        throw AccuracyError("gauss_2f1: series not converged", r, 1.0);
    }
    // x < 0: Pfaff transform ₂F₁(a,b;c;x) = (1-x)^{-b} ₂F₁(c-a,b;c;x/(x-1))
    // maps to argument u ∈ (0,1).
    double u = x / (x - 1.0);
    double r = series_2f1(c - a, b, c, u, 50000000);
    if (std::isfinite(r)) return std::pow(1.0 - x, -b) * r;
    r = series_2f1(a, c - b, c, u, 50000000);
    if (std::isfinite(r)) return std::pow(1.0 - x, -a) * r;
    throw AccuracyError("gauss_2f1: transformed series not converged", r, 1.0);
}

double erfc_inverse(double y) {
    if (y <= 0 || y >= 2) throw std::domain_error("erfc_inverse: y in (0,2)");
    if (y == 1) return 0.0;
    // start from an inverse-normal rational approximation (Acklam)
    double p = y / 2.0;  // erfc(x) = 2Φ(-x√2)
    bool flip = false;
    if (p > 0.5) {
        p = 1.0 - p;
        flip = true;
    }
    double t = std::sqrt(-2.0 * std::log(p));
    double z = t - (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t));
    double x = (flip ? -z : z) / std::sqrt(2.0);
    // Newton polish on erfc(x) - y
    for (int i = 0; i < 4; ++i) {
        double f = std::erfc(x) - y;
        double df = -2.0 / std::sqrt(kPi) * std::exp(-x * x);
        double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    return x;
}

double eval_special(SpecialFn fn, const std::vector<double>& p) {
    auto need = [&](size_t n) {
        if (p.size() != n)
            throw std::domain_error("eval_special: wrong parameter count");
    };
    switch (fn) {
        case SpecialFn::kummer_1f1:
            need(3);
            return kummer_1f1(p[0], p[1], p[2]);
        case SpecialFn::gauss_2f1:
            need(4);
            return gauss_2f1(p[0], p[1], p[2], p[3]);
        case SpecialFn::lower_incomplete_gamma:
            need(2);
            return lower_incomplete_gamma(p[0], p[1]);
        case SpecialFn::erfc:
            need(1);
            return std::erfc(p[0]);
        case SpecialFn::erfc_inverse:
            need(1);
            return erfc_inverse(p[0]);
    }
    throw std::domain_error("eval_special: unknown function id");
}

// ---- adaptive Simpson ------------------------------------------------------

namespace {

struct SimpsonState {
    const std::function<double(double)>* f;
    int panels_left;
    bool budget_hit = false;
};

double simpson_recur(SimpsonState& st, double a, double b, double fa, double fm,
                     double fb, double whole, double eps, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = (*st.f)(lm), frm = (*st.f)(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * eps || depth <= 0 || st.panels_left <= 0) {
        if (std::abs(diff) > 15.0 * eps) st.budget_hit = true;
        return left + right + diff / 15.0;
    }
    st.panels_left -= 2;
    return simpson_recur(st, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
           simpson_recur(st, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

}  // namespace

double integrate_finite(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_subdivisions) {
    if (a == b) return 0.0;
    SimpsonState st{&f, max_subdivisions};
    double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double r = simpson_recur(st, a, b, fa, fm, fb, whole, tol, 48);
    if (st.budget_hit)
        throw AccuracyError("integrate_finite: subdivision budget exhausted", r,
                            tol * 16);
    return r;
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               double lower, const QuadratureSpec& spec) {
    if (spec.abs_tol <= 0 || spec.rel_tol <= 0 || spec.max_subdivisions < 1)
        throw std::domain_error("integrate_semi_infinite: bad QuadratureSpec");
    // substitution z = lower + t² removes a z^{-1/2} endpoint singularity;
    // t=0 is nudged so 2t·f(t²) takes its limit instead of 0·inf
    auto g = [&](double t) {
        if (t == 0.0) t = 1e-150;
        return 2.0 * t * f(lower + t * t);
    };

    double upper_t;
    double tail_estimate = 0.0;
    if (spec.tail_cutoff_policy == QuadratureSpec::TailPolicy::fixed_upper_bound) {
        if (spec.upper_bound <= lower)
            throw std::domain_error("integrate_semi_infinite: bad upper bound");
        upper_t = std::sqrt(spec.upper_bound - lower);
    } else {
        // scan octaves for the peak, then cut where |g| stays below
        // abs_tol·peak for 3 consecutive doublings
        double peak = 0.0;
        std::vector<double> mag(101);
        for (int k = 0; k <= 100; ++k) {
            double t = std::ldexp(1.0, k - 40);
            mag[k] = std::abs(g(t));
            peak = std::max(peak, mag[k]);
        }
        if (peak == 0.0) return 0.0;
        double thresh = spec.abs_tol * peak;  // may underflow to 0 for
                                              // subnormal peaks, hence <=
        // cut after the last octave above threshold, so a late resurgence
        // (e.g. a non-decaying integrand) is never mistaken for a tail
        int last_big = 0;
        for (int k = 0; k <= 100; ++k)
            if (mag[k] > thresh) last_big = k;
        int cut = last_big <= 98 ? std::max(last_big + 2, 42) : -1;
        if (cut < 0)
            throw AccuracyError(
                "integrate_semi_infinite: no decaying tail detected", 0.0, 1.0);
        upper_t = std::ldexp(1.0, cut - 40);
        // exponential tail extrapolation from the last two octaves
        double g1 = mag[cut - 1], g2 = mag[cut];
        double t1 = upper_t / 2.0;
        if (g2 > 0 && g1 > g2) {
            double rate = std::log(g1 / g2) / (upper_t - t1);
            tail_estimate = g2 / rate;  // ∫_T^∞ g(T) e^{-rate (t-T)} dt
        }
    }

    // composite panels so narrow features far from the endpoints are seen
    // before the adaptive refinement takes over; panel tolerances are
    // weighted by the mass each panel roughly carries
    const int kPanels = 64;
    double h = upper_t / kPanels;
    double rough = 0.0;
    std::vector<double> panel_rough(kPanels);
    for (int i = 0; i < kPanels; ++i) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) s += std::abs(g((i + (j + 0.5) / 4.0) * h));
        panel_rough[i] = s * h / 4.0;
        rough += panel_rough[i];
    }
    double tol = std::max(spec.abs_tol, spec.rel_tol * rough) * 0.5;
    if (tail_estimate > 10.0 * tol)
        throw AccuracyError(
            "integrate_semi_infinite: tail beyond cutoff is not negligible",
            rough + tail_estimate, tail_estimate);
    std::function<double(double)> gf = g;
    SimpsonState st{&gf, spec.max_subdivisions};
    double core = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        double share = rough > 0 ? panel_rough[i] / rough : 1.0;
        double ptol = tol * std::max(share, 1.0 / kPanels);
        double a = i * h, b = (i + 1) * h;
        double fa = g(a), fb = g(b), m = 0.5 * (a + b), fm = g(m);
        double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        core += simpson_recur(st, a, b, fa, fm, fb, whole, ptol, 44);
    }
    if (st.budget_hit)
        throw AccuracyError("integrate_semi_infinite: subdivision budget",
                            core + tail_estimate, tol * 16);
    return core + tail_estimate;
}

// ---- Gil-Pelaez inversion --------------------------------------------------

namespace {

// Filon weights for ∫ f(t)cos(xt)dt / ∫ f(t)sin(xt)dt on a uniform grid.
struct FilonCoeff {
    double alpha, beta, gamma;
};

FilonCoeff filon_coeff(double theta) {
    FilonCoeff c;
    if (std::abs(theta) < 1e-3) {
        double t2 = theta * theta;
        c.alpha = theta * t2 * (2.0 / 45.0 - t2 * 2.0 / 315.0);
        c.beta = 2.0 / 3.0 + t2 * (2.0 / 15.0 - t2 * 4.0 / 105.0);
        c.gamma = 4.0 / 3.0 - t2 * (2.0 / 15.0 - t2 / 210.0);
        return c;
    }
    double s = std::sin(theta), co = std::cos(theta), t3 = theta * theta * theta;
    c.alpha = (theta * theta + theta * s * co - 2.0 * s * s) / t3;
    c.beta = (2.0 * theta * (1.0 + co * co) - 4.0 * s * co) / t3;
    c.gamma = 4.0 * (s - theta * co) / t3;
    return c;
}

// Composite Filon: ∫_a^b f(t)·cos(xt) dt (or sin) with 2n panels.
double filon_integrate(const std::function<double(double)>& f, double a,
                       double b, double x, int two_n, bool use_sin) {
    int n2 = two_n % 2 ? two_n + 1 : two_n;
    double h = (b - a) / n2;
    FilonCoeff c = filon_coeff(x * h);
    double even = 0.0, odd = 0.0;
    for (int i = 0; i <= n2; ++i) {
        double t = a + i * h;
        double fi = f(t);
        double w = use_sin ? std::sin(x * t) : std::cos(x * t);
        if (i % 2 == 0) {
            double half = (i == 0 || i == n2) ? 0.5 : 1.0;
            even += half * fi * w;
        } else {
            odd += fi * w;
        }
    }
    double fa = f(a), fb = f(b);
    double endpoint;
    if (use_sin)
        endpoint = c.alpha * (fa * std::cos(x * a) - fb * std::cos(x * b));
    else
        endpoint = c.alpha * (fb * std::sin(x * b) - fa * std::sin(x * a));
    return h * (endpoint + c.beta * even + c.gamma * odd);
}

}  // namespace

double gil_pelaez_density(const std::function<std::complex<double>(double)>& cf,
                          double x, const QuadratureSpec& spec) {
    // cutoff where |φ| has decayed for 3 consecutive doublings
    double cut = -1.0;
    int below = 0;
    for (int k = -30; k <= 70; ++k) {
        double w = std::ldexp(1.0, k);
        if (std::abs(cf(w)) < 1e-15) {
            if (++below >= 3) {
                cut = w;
                break;
            }
        } else {
            below = 0;
        }
    }
    if (cut < 0)
        throw AccuracyError("gil_pelaez_density: CF decays too slowly", 0.0, 1.0);

    auto re_part = [&](double w) { return cf(w).real(); };
    auto im_part = [&](double w) { return cf(w).imag(); };
    // f(x) = (1/π) ∫₀^Ω [Reφ cos(ωx) + Imφ sin(ωx)] dω
    double prev = 0.0;
    for (int n = 256; n <= (1 << 20); n *= 2) {
        double val = filon_integrate(re_part, 0.0, cut, x, n, false) +
                     filon_integrate(im_part, 0.0, cut, x, n, true);
        val /= kPi;
        if (n > 256 &&
            std::abs(val - prev) <
                std::max(spec.abs_tol, spec.rel_tol * std::abs(val)))
            return val;
        prev = val;
    }
    throw AccuracyError("gil_pelaez_density: no convergence", prev, 1.0);
}

// ---- LT derivatives --------------------------------------------------------

double lt_derivative(const std::function<double(double)>& f, int order,
                     double z) {
    if (order < 0 || order > 8)
        throw std::domain_error("lt_derivative: order must be in [0,8]");
    if (order == 0) return f(z);

    double scale = (z != 0.0) ? std::abs(z) : 1.0;
    double h0 = 2.0 * scale / (order + 4);  // keeps all stencil points > 0
    // binomial coefficients for the order-n central difference
    double binom[9];
    binom[0] = 1.0;
    for (int k = 1; k <= order; ++k)
        binom[k] = binom[k - 1] * (order - k + 1) / k;

    auto central = [&](double h) {
        long double acc = 0.0L;
        for (int k = 0; k <= order; ++k) {
            double off = (order / 2.0 - k) * h;
            double sign = (k % 2 == 0) ? 1.0 : -1.0;
            acc += static_cast<long double>(sign * binom[k]) * f(z + off);
        }
        return static_cast<double>(acc / std::pow(static_cast<long double>(h),
                                                  order));
    };

    // Richardson (Romberg in h²) over successive halvings; keep the diagonal
    // entry whose last correction was smallest.
    constexpr int kLevels = 6;
    double tableau[kLevels][kLevels];
    double best = 0.0, best_err = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kLevels; ++i) {
        tableau[i][0] = central(h0 / std::ldexp(1.0, i));
        double pow4 = 1.0;
        for (int j = 1; j <= i; ++j) {
            pow4 *= 4.0;
            tableau[i][j] =
                tableau[i][j - 1] +
                (tableau[i][j - 1] - tableau[i - 1][j - 1]) / (pow4 - 1.0);
        }
        if (i > 0) {
            double err = std::abs(tableau[i][i] - tableau[i - 1][i - 1]);
            if (err <= best_err) {
                best_err = err;
                best = tableau[i][i];
            }
        }
    }
    return best;
}

double lt_derivative(const LaplaceTransform& lt, int order, double z) {
    return lt_derivative(lt.evaluate, order, z);
}

// ---- KS distance -----------------------------------------------------------

double ks_distance(const std::function<double(double)>& cdf_a,
                   const std::function<double(double)>& cdf_b,
                   const std::vector<double>& grid) {
    if (grid.empty()) throw std::domain_error("ks_distance: empty grid");
    double sup = 0.0;
    double prev_a = -std::numeric_limits<double>::infinity();
    double prev_b = prev_a;
    for (double x : grid) {
        double fa = cdf_a(x), fb = cdf_b(x);
        if (fa < prev_a - 1e-9 || fb < prev_b - 1e-9)
            throw std::invalid_argument("ks_distance: CDF not nondecreasing");
        prev_a = fa;
        prev_b = fb;
        sup = std::max(sup, std::abs(fa - fb));
    }
    return sup;
}

}  // namespace sgcell
