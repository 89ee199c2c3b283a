#ifndef CDFMR_SIMULATOR_HPP
#define CDFMR_SIMULATOR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdfmr/analytic_engine.hpp"
#include "cdfmr/network_model.hpp"
#include "cdfmr/philox.hpp"

namespace cdfmr {

enum class Metric { outage, capacity, ser, snr_gain };

std::string metric_name(Metric m);

struct SimulationConfig {
    std::uint64_t sample_count = 1'000'000;
    std::uint64_t seed = 42;
    std::uint64_t chunk_size = 1 << 16;
    std::set<Metric> metrics;
    std::optional<OutageThreshold> threshold; // required for Metric::outage
    std::optional<ModulationParams> mod;      // required for Metric::ser
    double mu = 1.0;                          // for Metric::snr_gain
    int workers = 1;
};

// One Monte Carlo draw of the routing algorithm: hop-by-hop best-relay
// selection, with the last cluster maximizing min(incoming, outgoing).
struct RoutingRealization {
    std::vector<std::vector<double>> per_hop_links; // L_i candidate SNRs per cluster
    std::vector<double> last_hop_links;             // candidate-to-destination SNRs
    std::vector<int> selected;                      // r*_1..r*_N (zero-based)
    std::vector<double> per_hop_snr;                // gamma^1_t..gamma^N_t
    double end_to_end_snr;                          // gamma_t
};

RoutingRealization draw_realization(PhiloxStream& rng, const ClusterTopology& topology,
                                    const LinkBudget& budget);

struct MetricEstimate {
    double value;
    double std_error;
    std::uint64_t n;
};

// Chunked, deterministic Monte Carlo estimation. Equal (seed, config,
// topology, budget) gives bit-identical results at any worker count.
std::map<Metric, MetricEstimate> estimate(const ClusterTopology& topology,
                                          const LinkBudget& budget,
                                          const SimulationConfig& config);

} // namespace cdfmr

#endif
