#ifndef CDFMR_ANALYTIC_ENGINE_HPP
#define CDFMR_ANALYTIC_ENGINE_HPP

#include <vector>

#include "cdfmr/network_model.hpp"

namespace cdfmr {

// Outage rate threshold in bit/s/Hz. The SNR threshold A depends on the
// hop count through the half-duplex pre-log, so it is derived per topology.
struct OutageThreshold {
    double rate_threshold;

    explicit OutageThreshold(double r_th);

    // A = 2^{(N+1) R_th} - 1, via expm1 in the log-2 domain so tiny
    // thresholds keep full precision.
    double snr_threshold(int n_clusters) const;
};

// One term of the expanded multi-index sum: indices (j_1..j_N), the signed
// weight (-1)^{j_1+..+j_N+N} * prod_i binom(L_i, j_i) (exact in int64,
// stored as double), and the decay rate K = sum_i j_i / G^t_i.
struct MultiIndexTerm {
    std::vector<int> indices;
    double weight;
    double k_factor;
};

// Exhaustive enumeration of all prod_i L_i terms, sorted by descending
// |weight| for compensated summation. Throws std::domain_error when
// sum_i L_i exceeds the cancellation-safe window (30).
std::vector<MultiIndexTerm> enumerate_terms(const ClusterTopology& topology,
                                            const LinkBudget& budget);

// End-to-end SNR CDF, stable product form. Production path: no
// alternating cancellation, valid for any topology size.
double cdf_product(double x, const ClusterTopology& topology, const LinkBudget& budget);

// Same CDF through the expanded multi-index sum. Cross-check path;
// restricted to sum L_i <= 30.
double cdf_expanded(double x, const ClusterTopology& topology, const LinkBudget& budget);

// End-to-end SNR PDF (expanded sum). Cancellation residue down to -1e-9 is
// clamped to zero; anything more negative raises std::runtime_error.
double pdf(double x, const ClusterTopology& topology, const LinkBudget& budget);

// Ergodic capacity in bit/s/Hz, including the 1/(N+1) half-duplex pre-log.
double ergodic_capacity(const ClusterTopology& topology, const LinkBudget& budget);

// P(rate < R_th), evaluated through cdf_product.
double outage_probability(const ClusterTopology& topology, const LinkBudget& budget,
                          const OutageThreshold& threshold);

// Average symbol error rate for the (alpha, beta) modulation family.
double ser(const ClusterTopology& topology, const LinkBudget& budget,
           const ModulationParams& mod);

// Probability that the multi-hop SNR beats the direct link by factor mu:
// P(gamma_t / gamma_d > mu).
double prob_snr_gain(const ClusterTopology& topology, const LinkBudget& budget,
                     double mu);

// High-SNR SER: only the smallest clusters (index set M, size L_m) survive.
double asymptotic_ser(const ClusterTopology& topology, const LinkBudget& budget,
                      const ModulationParams& mod);

// High-SNR outage: (sum_{i in M} (G^t_i)^{-L_m}) * A^{L_m}.
double asymptotic_outage(const ClusterTopology& topology, const LinkBudget& budget,
                         const OutageThreshold& threshold);

// The vanishing-moment sum sum_terms (-1)^{j_1+..+j_N} prod binom * K^z,
// identically zero for z = 1..L_m-1. Exposed so tests can bound the
// numerical residual. Throws std::out_of_range for z outside [1, L_m-1].
double moment_identity_residual(const ClusterTopology& topology, const LinkBudget& budget,
                                int z);

// Scale of the largest |term| in the z-th moment sum, for relative residual
// checks.
double moment_identity_scale(const ClusterTopology& topology, const LinkBudget& budget,
                             int z);

} // namespace cdfmr

#endif
