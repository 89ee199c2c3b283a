#ifndef CDFMR_NETWORK_MODEL_HPP
#define CDFMR_NETWORK_MODEL_HPP

#include <string>
#include <vector>

namespace cdfmr {

// Relay clusters between source and destination. A topology with N
// clusters has N+1 hops.
class ClusterTopology {
public:
    explicit ClusterTopology(std::vector<int> cluster_sizes);

    int n_clusters() const { return static_cast<int>(sizes_.size()); }
    int n_hops() const { return n_clusters() + 1; }
    const std::vector<int>& cluster_sizes() const { return sizes_; }
    int cluster_size(int i) const { return sizes_[static_cast<std::size_t>(i)]; }

    // Minimum cluster size L_m: the diversity order of the system.
    int min_cluster_size() const;
    // Zero-based indices of clusters attaining the minimum size.
    std::vector<int> min_index_set() const;

    bool operator==(const ClusterTopology&) const = default;

private:
    std::vector<int> sizes_;
};

// Per-hop average SNRs (linear scale) plus the direct-link average SNR.
class LinkBudget {
public:
    LinkBudget(std::vector<double> hop_avg_snr, double direct_avg_snr);

    const std::vector<double>& hop_avg_snr() const { return hop_snr_; }
    double direct_avg_snr() const { return direct_snr_; }
    int n_hops() const { return static_cast<int>(hop_snr_.size()); }

    bool operator==(const LinkBudget&) const = default;

private:
    std::vector<double> hop_snr_;
    double direct_snr_;
};

// Effective per-cluster mean SNRs [G^t_1 .. G^t_N]: G^t_i = G_i except the
// last cluster, where hop N and hop N+1 combine harmonically.
std::vector<double> effective_gammas(const ClusterTopology& topology,
                                     const LinkBudget& budget);

// Friis placement with terminal k at distance d_k = 2k/((N+1)(N+2)) from
// its predecessor: hop k mean SNR ((N+1)(N+2)/(2k))^delta * gamma_d.
LinkBudget unbalanced_budget(int n_clusters, double delta, double gamma_d);

// Equidistant placement: every hop mean SNR (N+1)^delta * gamma_d.
LinkBudget balanced_budget(int n_clusters, double delta, double gamma_d);

// SER family parameters (alpha, beta); `exact` marks modulations whose
// conditional error probability 2*alpha*Q(sqrt(2*beta*x)) is exact rather
// than a nearest-neighbour approximation.
struct ModulationParams {
    double alpha;
    double beta;
    bool exact;
    std::string name;

    bool operator==(const ModulationParams&) const = default;
};

// name in {BPSK, BFSK, MPSK, MQAM, MPAM}; order required (>= 2) for the
// M-ary families, must be absent or 2 for the binary ones.
ModulationParams modulation_from_name(const std::string& name, int order = 0);

} // namespace cdfmr

#endif
