#include "cdfmr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cdfmr/analytic_engine.hpp"

namespace cdfmr {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, integral, error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);

    double res_k = kWgk[7] * fv[7];
    double res_g = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i)
        res_k += kWgk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i)
        res_g += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    return {a, b, res_k * h, std::abs((res_k - res_g) * h)};
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec)
{
    // Seed with geometrically graded panels so integrands concentrated in a
    // narrow layer near `a` are seen before the error estimate can stop us.
    std::vector<Panel> panels;
    double lo = a;
    for (int k = 12; k >= 1; --k) {
        const double hi = a + (b - a) * std::pow(10.0, -k);
        if (hi > lo) {
            panels.push_back(evaluate_panel(f, lo, hi));
            lo = hi;
        }
    }
    panels.push_back(evaluate_panel(f, lo, b));
    for (int iter = 0; iter < spec.max_subdivisions; ++iter) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].integral;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error)
                worst = i;
        }
        if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
            return total;
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        panels[worst] = evaluate_panel(f, p.a, mid);
        panels.push_back(evaluate_panel(f, mid, p.b));
    }
    throw std::runtime_error("integrate_adaptive: subdivision budget exhausted");
}

namespace {

// Smallest x with 1 - F(x) below `target`, by doubling then bisection.
double survival_cutoff(const ClusterTopology& topology, const LinkBudget& budget,
                       double target)
{
    double hi = 1.0;
    while (1.0 - cdf_product(hi, topology, budget) >= target) {
        hi *= 2.0;
        if (hi > 1e300)
            return hi;
    }
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-9 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (1.0 - cdf_product(mid, topology, budget) >= target)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

} // namespace

double capacity_by_quadrature(const ClusterTopology& topology, const LinkBudget& budget,
                              const QuadratureSpec& spec)
{
    // Survival decays at the slowest hop's exponential rate; pushing the
    // cutoff a few slow time constants past the bisection point bounds the
    // dropped tail mass by abs_tol.
    const auto eff = effective_gammas(topology, budget);
    const double slow = *std::max_element(eff.begin(), eff.end());
    double cutoff = spec.upper_cutoff;
    if (cutoff <= 0.0)
        cutoff = survival_cutoff(topology, budget, spec.abs_tol / 10.0) +
                 slow * std::log(10.0 * std::max(1.0, slow));

    const auto integrand = [&](double x) {
        return (1.0 - cdf_product(x, topology, budget)) / (1.0 + x);
    };
    const int n = topology.n_clusters();
    return integrate_adaptive(integrand, 0.0, cutoff, spec) / ((n + 1) * M_LN2);
}

double ser_by_quadrature(const ClusterTopology& topology, const LinkBudget& budget,
                         const ModulationParams& mod, const QuadratureSpec& spec)
{
    // After x = u^2 the integral is 2 alpha sqrt(beta/pi) * int e^{-beta u^2} F(u^2) du;
    // the truncated Gaussian tail beyond beta u^2 = 45 is below 1e-19.
    const double beta = mod.beta;
    double cutoff = spec.upper_cutoff;
    if (cutoff <= 0.0)
        cutoff = std::sqrt(45.0 / beta);
    const auto integrand = [&](double u) {
        return std::exp(-beta * u * u) * cdf_product(u * u, topology, budget);
    };
    const double sqrt_pi = 1.7724538509055160272981674833411452;
    return 2.0 * mod.alpha * std::sqrt(beta) / sqrt_pi *
           integrate_adaptive(integrand, 0.0, cutoff, spec);
}

double snr_gain_by_quadrature(const ClusterTopology& topology, const LinkBudget& budget,
                              double mu, const QuadratureSpec& spec)
{
    if (mu == 0.0)
        return 1.0;
    const double gd = budget.direct_avg_snr();
    double cutoff = spec.upper_cutoff;
    if (cutoff <= 0.0)
        cutoff = gd * std::log(10.0 / spec.abs_tol);
    // Integrating the survival keeps the result relatively accurate when the
    // gain probability is small; the survival is O(1) wherever the mass is.
    const auto integrand = [&](double x) {
        return (1.0 - cdf_product(mu * x, topology, budget)) * std::exp(-x / gd) / gd;
    };
    return integrate_adaptive(integrand, 0.0, cutoff, spec);
}

} // namespace cdfmr
