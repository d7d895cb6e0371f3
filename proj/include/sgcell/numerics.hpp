// Shared numerical kernels: special functions, semi-infinite quadrature,
// characteristic-function inversion, Laplace-transform derivatives and
// CDF distance.  Everything here is a pure function of its arguments.
#pragma once
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgcell {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 100000;
    enum class TailPolicy { exponential_decay_detect, fixed_upper_bound };
    TailPolicy tail_cutoff_policy = TailPolicy::exponential_decay_detect;
    double upper_bound = 0;  // only with fixed_upper_bound
};

// Quadrature / series failure that still carries the best available value.
struct AccuracyError : std::runtime_error {
    AccuracyError(const std::string& what, double best, double bound)
        : std::runtime_error(what), best_estimate(best), error_bound(bound) {}
    double best_estimate;
    double error_bound;
};

// ---- special functions ----------------------------------------------------

enum class SpecialFn {
    kummer_1f1,
    gauss_2f1,
    lower_incomplete_gamma,
    erfc,
    erfc_inverse
};

double eval_special(SpecialFn fn, const std::vector<double>& params);

double kummer_1f1(double a, double b, double x);
double gauss_2f1(double a, double b, double c, double x);
double lower_incomplete_gamma(double s, double x);
double erfc_inverse(double y);

// ---- quadrature -----------------------------------------------------------

// ∫_lower^∞ f(z) dz.  Internally substitutes z = lower + t² so a z^{-1/2}
// endpoint singularity is integrated exactly; the upper cutoff is found by
// decay detection (or taken from spec.upper_bound).
double integrate_semi_infinite(const std::function<double(double)>& f,
                               double lower, const QuadratureSpec& spec = {});

// Adaptive Simpson on a finite interval (building block, also used directly).
double integrate_finite(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_subdivisions = 100000);

// ---- characteristic-function inversion ------------------------------------

// Gil-Pelaez density: f(x) = (1/π)∫₀^∞ Re[φ(ω)e^{-iωx}] dω, evaluated with
// Filon quadrature so large |x| oscillation does not force a fine grid.
double gil_pelaez_density(const std::function<std::complex<double>(double)>& cf,
                          double x, const QuadratureSpec& spec = {});

// ---- Laplace transforms ---------------------------------------------------

// z ↦ E{e^{-zI}} plus the scenario it came from.  Built by the transforms
// module; consumed by metrics.
struct LaplaceTransform {
    std::function<double(double)> evaluate;
    std::string scenario;
    double operator()(double z) const { return evaluate(z); }
};

// d^order L / dz^order by Richardson-extrapolated central differences.
// order ∈ [0,8]; relative accuracy ≥ 1e-6 for orders ≤ 4 on smooth inputs.
double lt_derivative(const LaplaceTransform& lt, int order, double z);
double lt_derivative(const std::function<double(double)>& f, int order,
                     double z);

// ---- distribution distance ------------------------------------------------

// sup_x |F_a(x) - F_b(x)| over the grid; both CDFs must be nondecreasing.
double ks_distance(const std::function<double(double)>& cdf_a,
                   const std::function<double(double)>& cdf_b,
                   const std::vector<double>& grid);

}  // namespace sgcell
