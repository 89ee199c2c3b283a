#include "cdfmr/network_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdfmr {

ClusterTopology::ClusterTopology(std::vector<int> cluster_sizes)
    : sizes_(std::move(cluster_sizes))
{
    if (sizes_.empty())
        throw std::invalid_argument("ClusterTopology: need at least one cluster");
    for (int l : sizes_) {
        if (l < 1 || l > 62)
            throw std::invalid_argument("ClusterTopology: cluster size must be in [1, 62]");
    }
}

int ClusterTopology::min_cluster_size() const
{
    return *std::min_element(sizes_.begin(), sizes_.end());
}

std::vector<int> ClusterTopology::min_index_set() const
{
    const int lm = min_cluster_size();
    std::vector<int> m;
    for (int i = 0; i < n_clusters(); ++i)
        if (sizes_[static_cast<std::size_t>(i)] == lm)
            m.push_back(i);
    return m;
}

LinkBudget::LinkBudget(std::vector<double> hop_avg_snr, double direct_avg_snr)
    : hop_snr_(std::move(hop_avg_snr)), direct_snr_(direct_avg_snr)
{
    if (hop_snr_.size() < 2)
        throw std::invalid_argument("LinkBudget: need at least two hops");
    for (double g : hop_snr_) {
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("LinkBudget: hop SNRs must be positive and finite");
    }
    if (!(direct_snr_ > 0.0) || !std::isfinite(direct_snr_))
        throw std::invalid_argument("LinkBudget: direct SNR must be positive and finite");
}

std::vector<double> effective_gammas(const ClusterTopology& topology,
                                     const LinkBudget& budget)
{
    const int n = topology.n_clusters();
    if (budget.n_hops() != n + 1)
        throw std::invalid_argument("effective_gammas: budget has wrong hop count");
    const auto& g = budget.hop_avg_snr();
    std::vector<double> eff(g.begin(), g.end() - 2);
    const double gn = g[static_cast<std::size_t>(n - 1)];
    const double gn1 = g[static_cast<std::size_t>(n)];
    eff.push_back(gn * gn1 / (gn + gn1));
    return eff;
}

namespace {

void check_budget_args(int n_clusters, double gamma_d)
{
    if (n_clusters < 1)
        throw std::invalid_argument("budget: need at least one cluster");
    if (!(gamma_d > 0.0))
        throw std::invalid_argument("budget: gamma_d must be positive");
}

} // namespace

LinkBudget unbalanced_budget(int n_clusters, double delta, double gamma_d)
{
    check_budget_args(n_clusters, gamma_d);
    std::vector<double> hops;
    hops.reserve(static_cast<std::size_t>(n_clusters) + 1);
    const double total = (n_clusters + 1.0) * (n_clusters + 2.0);
    for (int k = 1; k <= n_clusters + 1; ++k)
        hops.push_back(std::pow(total / (2.0 * k), delta) * gamma_d);
    return LinkBudget(std::move(hops), gamma_d);
}

LinkBudget balanced_budget(int n_clusters, double delta, double gamma_d)
{
    check_budget_args(n_clusters, gamma_d);
    const double g = std::pow(n_clusters + 1.0, delta) * gamma_d;
    return LinkBudget(std::vector<double>(static_cast<std::size_t>(n_clusters) + 1, g),
                      gamma_d);
}

ModulationParams modulation_from_name(const std::string& name, int order)
{
    const auto require_binary = [&] {
        if (order != 0 && order != 2)
            throw std::invalid_argument("modulation_from_name: " + name + " is binary");
    };
    const auto require_order = [&] {
        if (order < 2)
            throw std::invalid_argument("modulation_from_name: " + name +
                                        " needs a modulation order >= 2");
    };

    if (name == "BPSK") {
        require_binary();
        return {0.5, 1.0, true, "BPSK"};
    }
    if (name == "BFSK") {
        require_binary();
        return {0.5, 0.5, true, "BFSK"};
    }
    if (name == "MPSK") {
        require_order();
        const double s = std::sin(M_PI / order);
        return {1.0, s * s, false, "MPSK" + std::to_string(order)};
    }
    if (name == "MQAM") {
        require_order();
        return {2.0 * (1.0 - 1.0 / std::sqrt(static_cast<double>(order))),
                3.0 / (2.0 * (order - 1.0)), false, "MQAM" + std::to_string(order)};
    }
    if (name == "MPAM") {
        require_order();
        return {(order - 1.0) / order, 3.0 / (static_cast<double>(order) * order - 1.0),
                true, "MPAM" + std::to_string(order)};
    }
    throw std::invalid_argument("modulation_from_name: unknown modulation '" + name + "'");
}

} // namespace cdfmr
