#ifndef CDFMR_SCENARIO_HPP
#define CDFMR_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdfmr/network_model.hpp"
#include "cdfmr/simulator.hpp"

namespace cdfmr {

enum class BudgetModel { balanced, unbalanced, explicit_gammas };

struct SweepRange {
    double start;
    double stop;
    double step;

    std::vector<double> grid() const;
    bool operator==(const SweepRange&) const = default;
};

// One batch-analysis scenario, parsed from the `key = value` config format.
// dB values everywhere at this boundary; conversion to linear happens when
// budgets are built.
struct Scenario {
    std::vector<int> clusters;
    BudgetModel budget_model = BudgetModel::unbalanced;
    double delta = 4.0;
    // For budget_model = explicit: per-hop gain over the direct link in dB;
    // hop SNR = gamma_d * 10^(gain/10).
    std::optional<std::vector<double>> explicit_gammas_db;
    SweepRange gamma_d_sweep_db{0.0, 30.0, 2.0};
    double rate_threshold = 0.3;
    std::string modulation_name = "BPSK";
    int modulation_order = 0;
    std::optional<SweepRange> mu_sweep;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
    std::set<Metric> outputs{Metric::outage, Metric::capacity, Metric::ser,
                             Metric::snr_gain};

    ClusterTopology topology() const { return ClusterTopology(clusters); }
    LinkBudget budget_at(double gamma_d_linear) const;
    ModulationParams modulation() const;
    double mu() const { return mu_sweep ? mu_sweep->start : 1.0; }

    bool operator==(const Scenario&) const = default;
};

// Strict parser: `key = value` lines, `#` comments, comma-separated lists.
// Unknown keys, duplicate keys, and cross-field inconsistencies are hard
// errors carrying line numbers.
Scenario parse_scenario(const std::string& text);

// Inverse of parse_scenario up to value equality.
std::string serialize_scenario(const Scenario& s);

double db_to_linear(double db);
double linear_to_db(double linear);

} // namespace cdfmr

#endif
