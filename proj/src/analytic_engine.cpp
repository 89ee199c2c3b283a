#include "cdfmr/analytic_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "cdfmr/special_functions.hpp"

namespace cdfmr {

OutageThreshold::OutageThreshold(double r_th) : rate_threshold(r_th)
{
    if (!(r_th >= 0.0) || !std::isfinite(r_th))
        throw std::invalid_argument("OutageThreshold: rate must be nonnegative and finite");
}

double OutageThreshold::snr_threshold(int n_clusters) const
{
    return std::expm1((n_clusters + 1) * rate_threshold * M_LN2);
}

namespace {

constexpr int kCancellationWindow = 30;

void check_window(const ClusterTopology& topology)
{
    int total = 0;
    for (int l : topology.cluster_sizes())
        total += l;
    if (total > kCancellationWindow)
        throw std::domain_error(
            "expanded multi-index sum: sum of cluster sizes exceeds the "
            "cancellation-safe window (30); use the product-form path");
}

// Neumaier compensated sum.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v)
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

// Sum f(term) over all terms, largest weights first, compensated.
template <typename F>
double term_sum(const std::vector<MultiIndexTerm>& terms, F&& f)
{
    CompensatedSum acc;
    for (const auto& t : terms)
        acc.add(f(t));
    return acc.value();
}

} // namespace

std::vector<MultiIndexTerm> enumerate_terms(const ClusterTopology& topology,
                                            const LinkBudget& budget)
{
    check_window(topology);
    const auto eff = effective_gammas(topology, budget);
    const int n = topology.n_clusters();
    const auto& sizes = topology.cluster_sizes();

    std::size_t total = 1;
    for (int l : sizes)
        total *= static_cast<std::size_t>(l);

    std::vector<MultiIndexTerm> terms;
    terms.reserve(total);

    // Odometer over (j_1..j_N), each j_i in [1, L_i].
    std::vector<int> j(static_cast<std::size_t>(n), 1);
    for (;;) {
        std::int64_t w = 1;
        int jsum = 0;
        double k = 0.0;
        for (int i = 0; i < n; ++i) {
            w *= static_cast<std::int64_t>(binom(sizes[static_cast<std::size_t>(i)],
                                                 j[static_cast<std::size_t>(i)]));
            jsum += j[static_cast<std::size_t>(i)];
            k += j[static_cast<std::size_t>(i)] / eff[static_cast<std::size_t>(i)];
        }
        if ((jsum + n) % 2 != 0)
            w = -w;
        terms.push_back({j, static_cast<double>(w), k});

        int pos = n - 1;
        while (pos >= 0 && j[static_cast<std::size_t>(pos)] == sizes[static_cast<std::size_t>(pos)]) {
            j[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0)
            break;
        ++j[static_cast<std::size_t>(pos)];
    }

    std::sort(terms.begin(), terms.end(), [](const MultiIndexTerm& a, const MultiIndexTerm& b) {
        return std::abs(a.weight) > std::abs(b.weight);
    });
    return terms;
}

double cdf_product(double x, const ClusterTopology& topology, const LinkBudget& budget)
{
    if (!(x >= 0.0))
        throw std::domain_error("cdf_product: x must be nonnegative");
    const auto eff = effective_gammas(topology, budget);
    const auto& sizes = topology.cluster_sizes();

    // F = 1 - prod_i (1 - p_i), p_i = (1 - e^{-x/G^t_i})^{L_i}, computed
    // through log1p/expm1 so deep tails keep full relative precision.
    double log_survival = 0.0;
    for (std::size_t i = 0; i < eff.size(); ++i) {
        const double p = std::pow(-std::expm1(-x / eff[i]), sizes[i]);
        log_survival += std::log1p(-p);
    }
    return -std::expm1(log_survival);
}

double cdf_expanded(double x, const ClusterTopology& topology, const LinkBudget& budget)
{
    if (!(x >= 0.0))
        throw std::domain_error("cdf_expanded: x must be nonnegative");
    const auto terms = enumerate_terms(topology, budget);
    const double s = term_sum(terms, [x](const MultiIndexTerm& t) {
        return t.weight * std::exp(-t.k_factor * x);
    });
    return 1.0 - s;
}

double pdf(double x, const ClusterTopology& topology, const LinkBudget& budget)
{
    if (!(x >= 0.0))
        throw std::domain_error("pdf: x must be nonnegative");
    const auto terms = enumerate_terms(topology, budget);
    const double f = term_sum(terms, [x](const MultiIndexTerm& t) {
        return t.weight * t.k_factor * std::exp(-t.k_factor * x);
    });
    if (f < -1e-9)
        throw std::runtime_error("pdf: negative density beyond cancellation floor");
    return std::max(f, 0.0);
}

double ergodic_capacity(const ClusterTopology& topology, const LinkBudget& budget)
{
    const auto terms = enumerate_terms(topology, budget);
    const double s = term_sum(terms, [](const MultiIndexTerm& t) {
        return t.weight * exp_e1(t.k_factor);
    });
    const double c = s / ((topology.n_clusters() + 1) * M_LN2);
    return std::max(c, 0.0);
}

double outage_probability(const ClusterTopology& topology, const LinkBudget& budget,
                          const OutageThreshold& threshold)
{
    return cdf_product(threshold.snr_threshold(topology.n_clusters()), topology, budget);
}

double ser(const ClusterTopology& topology, const LinkBudget& budget,
           const ModulationParams& mod)
{
    const auto terms = enumerate_terms(topology, budget);
    const double beta = mod.beta;
    return mod.alpha * term_sum(terms, [beta](const MultiIndexTerm& t) {
        // -expm1(-log1p(..)/2) keeps each term relatively accurate for tiny
        // K/beta; without it the deep-SNR cancellation leaves only noise.
        return t.weight * -std::expm1(-0.5 * std::log1p(t.k_factor / beta));
    });
}

double prob_snr_gain(const ClusterTopology& topology, const LinkBudget& budget,
                     double mu)
{
    if (!(mu >= 0.0))
        throw std::domain_error("prob_snr_gain: mu must be nonnegative");
    const auto terms = enumerate_terms(topology, budget);
    const double gd = budget.direct_avg_snr();
    return term_sum(terms, [mu, gd](const MultiIndexTerm& t) {
        return t.weight / (t.k_factor * mu * gd + 1.0);
    });
}

namespace {

// sum_{i in M} (G^t_i)^{-L_m}
double min_cluster_inverse_power(const ClusterTopology& topology, const LinkBudget& budget)
{
    const auto eff = effective_gammas(topology, budget);
    const int lm = topology.min_cluster_size();
    double s = 0.0;
    for (int i : topology.min_index_set())
        s += std::pow(eff[static_cast<std::size_t>(i)], -lm);
    return s;
}

} // namespace

double asymptotic_ser(const ClusterTopology& topology, const LinkBudget& budget,
                      const ModulationParams& mod)
{
    const int lm = topology.min_cluster_size();
    const double sqrt_pi = 1.7724538509055160272981674833411452;
    return mod.alpha * min_cluster_inverse_power(topology, budget) *
           gamma_half_integer(lm) / (sqrt_pi * std::pow(mod.beta, lm));
}

double asymptotic_outage(const ClusterTopology& topology, const LinkBudget& budget,
                         const OutageThreshold& threshold)
{
    const int lm = topology.min_cluster_size();
    const double a = threshold.snr_threshold(topology.n_clusters());
    return min_cluster_inverse_power(topology, budget) * std::pow(a, lm);
}

namespace {

void check_moment_order(const ClusterTopology& topology, int z)
{
    const int lm = topology.min_cluster_size();
    if (z < 1 || z > lm - 1)
        throw std::out_of_range("moment identity: z must be in [1, L_m - 1]");
}

} // namespace

double moment_identity_residual(const ClusterTopology& topology, const LinkBudget& budget,
                                int z)
{
    check_moment_order(topology, z);
    const auto terms = enumerate_terms(topology, budget);
    // Eq-form sign is (-1)^{sum j}, i.e. the stored weight times (-1)^N.
    const double flip = (topology.n_clusters() % 2 == 0) ? 1.0 : -1.0;
    return flip * term_sum(terms, [z](const MultiIndexTerm& t) {
        return t.weight * std::pow(t.k_factor, z);
    });
}

double moment_identity_scale(const ClusterTopology& topology, const LinkBudget& budget,
                             int z)
{
    check_moment_order(topology, z);
    const auto terms = enumerate_terms(topology, budget);
    double m = 0.0;
    for (const auto& t : terms)
        m = std::max(m, std::abs(t.weight) * std::pow(t.k_factor, z));
    return m;
}

} // namespace cdfmr
