#ifndef CDFMR_QUADRATURE_HPP
#define CDFMR_QUADRATURE_HPP

#include <functional>

#include "cdfmr/network_model.hpp"

namespace cdfmr {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
    double upper_cutoff = 0.0; // 0 = choose automatically from the CDF tail
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Throws std::runtime_error when the
// subdivision budget is exhausted before the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec);

// Independent quadrature routes for the three metrics that have no stable
// closed form. All three integrate against the product-form CDF only, so
// they share no failure mode with the expanded alternating sums they check.

// (1/((N+1) ln 2)) * integral of (1 - F(x)) / (1 + x)
double capacity_by_quadrature(const ClusterTopology& topology, const LinkBudget& budget,
                              const QuadratureSpec& spec);

// alpha * integral of sqrt(beta/(pi x)) e^{-beta x} F(x), via x = u^2 to
// remove the endpoint singularity
double ser_by_quadrature(const ClusterTopology& topology, const LinkBudget& budget,
                         const ModulationParams& mod, const QuadratureSpec& spec);

// 1 - integral of F(mu x) * (1/G_d) e^{-x/G_d}
double snr_gain_by_quadrature(const ClusterTopology& topology, const LinkBudget& budget,
                              double mu, const QuadratureSpec& spec);

} // namespace cdfmr

#endif
