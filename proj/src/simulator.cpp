#include "cdfmr/simulator.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cdfmr/special_functions.hpp"

namespace cdfmr {

std::string metric_name(Metric m)
{
    switch (m) {
    case Metric::outage: return "outage";
    case Metric::capacity: return "capacity";
    case Metric::ser: return "ser";
    case Metric::snr_gain: return "snr_gain";
    }
    return "?";
}

namespace {

double draw_exponential(PhiloxStream& rng, double mean)
{
    return -mean * std::log(rng.next_double());
}

} // namespace

RoutingRealization draw_realization(PhiloxStream& rng, const ClusterTopology& topology,
                                    const LinkBudget& budget)
{
    const int n = topology.n_clusters();
    const auto& gammas = budget.hop_avg_snr();

    RoutingRealization r;
    r.per_hop_links.resize(static_cast<std::size_t>(n));
    r.selected.resize(static_cast<std::size_t>(n));
    r.per_hop_snr.resize(static_cast<std::size_t>(n));

    // Hops 1..N-1: best received SNR among the L_i candidates. Ties go to
    // the lowest index (a probability-zero event for continuous draws).
    for (int i = 0; i + 1 < n; ++i) {
        auto& links = r.per_hop_links[static_cast<std::size_t>(i)];
        const int li = topology.cluster_size(i);
        links.resize(static_cast<std::size_t>(li));
        int best = 0;
        for (int l = 0; l < li; ++l) {
            links[static_cast<std::size_t>(l)] =
                draw_exponential(rng, gammas[static_cast<std::size_t>(i)]);
            if (links[static_cast<std::size_t>(l)] > links[static_cast<std::size_t>(best)])
                best = l;
        }
        r.selected[static_cast<std::size_t>(i)] = best;
        r.per_hop_snr[static_cast<std::size_t>(i)] = links[static_cast<std::size_t>(best)];
    }

    // Last cluster: maximize min(incoming hop-N SNR, outgoing hop-N+1 SNR).
    {
        const int ln = topology.cluster_size(n - 1);
        auto& in_links = r.per_hop_links[static_cast<std::size_t>(n - 1)];
        in_links.resize(static_cast<std::size_t>(ln));
        r.last_hop_links.resize(static_cast<std::size_t>(ln));
        int best = 0;
        double best_val = -1.0;
        for (int l = 0; l < ln; ++l) {
            in_links[static_cast<std::size_t>(l)] =
                draw_exponential(rng, gammas[static_cast<std::size_t>(n - 1)]);
            r.last_hop_links[static_cast<std::size_t>(l)] =
                draw_exponential(rng, gammas[static_cast<std::size_t>(n)]);
            const double v = std::min(in_links[static_cast<std::size_t>(l)],
                                      r.last_hop_links[static_cast<std::size_t>(l)]);
            if (v > best_val) {
                best_val = v;
                best = l;
            }
        }
        r.selected[static_cast<std::size_t>(n - 1)] = best;
        r.per_hop_snr[static_cast<std::size_t>(n - 1)] = best_val;
    }

    double gt = r.per_hop_snr[0];
    for (int i = 1; i < n; ++i)
        gt = std::min(gt, r.per_hop_snr[static_cast<std::size_t>(i)]);
    r.end_to_end_snr = gt;
    return r;
}

namespace {

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double v)
    {
        sum += v;
        sum_sq += v * v;
    }

    void merge(const Accumulator& o)
    {
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
};

struct ChunkSums {
    Accumulator per_metric[4];
};

} // namespace

std::map<Metric, MetricEstimate> estimate(const ClusterTopology& topology,
                                          const LinkBudget& budget,
                                          const SimulationConfig& config)
{
    if (config.sample_count < 1)
        throw std::invalid_argument("estimate: sample_count must be >= 1");
    if (config.chunk_size < 1)
        throw std::invalid_argument("estimate: chunk_size must be >= 1");
    if (config.metrics.empty())
        throw std::invalid_argument("estimate: no metrics requested");
    if (config.metrics.count(Metric::outage) && !config.threshold)
        throw std::invalid_argument("estimate: outage metric needs a threshold");
    if (config.metrics.count(Metric::ser) && !config.mod)
        throw std::invalid_argument("estimate: ser metric needs modulation params");

    const int n = topology.n_clusters();
    const double prelog = 1.0 / (n + 1);
    const double a = config.threshold
                         ? config.threshold->snr_threshold(n)
                         : 0.0;
    const bool want_outage = config.metrics.count(Metric::outage) > 0;
    const bool want_capacity = config.metrics.count(Metric::capacity) > 0;
    const bool want_ser = config.metrics.count(Metric::ser) > 0;
    const bool want_gain = config.metrics.count(Metric::snr_gain) > 0;
    const double alpha = config.mod ? config.mod->alpha : 0.0;
    const double beta = config.mod ? config.mod->beta : 0.0;
    const double gd = budget.direct_avg_snr();

    // Each sample owns its own counter-based substream keyed by the global
    // sample index, and partial sums are grouped into fixed-size blocks
    // merged in index order. Estimates are therefore bit-identical across
    // worker counts and chunk sizes, not just thread schedules.
    constexpr std::uint64_t kBlock = 4096;
    const std::uint64_t n_chunks = (config.sample_count + kBlock - 1) / kBlock;
    std::vector<ChunkSums> chunk_sums(n_chunks);

    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t begin = c * kBlock;
        const std::uint64_t count = std::min(kBlock, config.sample_count - begin);
        ChunkSums& out = chunk_sums[c];
        for (std::uint64_t s = 0; s < count; ++s) {
            PhiloxStream rng(config.seed, begin + s);
            const RoutingRealization r = draw_realization(rng, topology, budget);
            const double gt = r.end_to_end_snr;
            if (want_outage)
                out.per_metric[0].add(gt < a ? 1.0 : 0.0);
            if (want_capacity)
                out.per_metric[1].add(prelog * std::log2(1.0 + gt));
            if (want_ser)
                out.per_metric[2].add(2.0 * alpha * q_func(std::sqrt(2.0 * beta * gt)));
            if (want_gain) {
                const double gamma_d = draw_exponential(rng, gd);
                out.per_metric[3].add(gt / gamma_d > config.mu ? 1.0 : 0.0);
            }
        }
    };

    const int workers = std::max(1, config.workers);
    if (workers == 1 || n_chunks == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c)
            run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
                    run_chunk(c);
            });
        }
        for (auto& t : pool)
            t.join();
    }

    // Ordered merge: independent of which worker ran which chunk.
    Accumulator totals[4];
    for (const auto& cs : chunk_sums)
        for (int m = 0; m < 4; ++m)
            totals[m].merge(cs.per_metric[m]);

    std::map<Metric, MetricEstimate> result;
    const double nn = static_cast<double>(config.sample_count);
    for (Metric m : config.metrics) {
        const Accumulator& acc = totals[static_cast<int>(m)];
        const double mean = acc.sum / nn;
        double stderr_val = 0.0;
        if (config.sample_count > 1) {
            const double var = std::max(0.0, (acc.sum_sq - nn * mean * mean) / (nn - 1.0));
            stderr_val = std::sqrt(var / nn);
        }
        result[m] = {mean, stderr_val, config.sample_count};
    }
    return result;
}

} // namespace cdfmr
