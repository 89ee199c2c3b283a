#ifndef CDFMR_SWEEP_HPP
#define CDFMR_SWEEP_HPP

#include <string>
#include <vector>

#include "cdfmr/scenario.hpp"

namespace cdfmr {

enum class SweepMode { analytic_only, simulation_only, both };

// Evaluates the scenario over its gamma_d grid and renders the CSV
// document: header gamma_d_db,metric,analytic,asymptotic,mc_mean,mc_stderr,
// rows ascending in gamma_d_db with fixed metric order, 9 significant
// digits, empty fields where a column does not apply.
std::string run_sweep(const Scenario& scenario, SweepMode mode = SweepMode::both,
                      int workers = 1);

struct FigureCsv {
    std::string filename;
    std::string content;
};

// Reproduces one of the four result figures as a set of CSV tables, one
// per topology (balanced and unbalanced variants for snr_gain), plus a
// summary.csv with the cross-curve trend checks.
std::vector<FigureCsv> reproduce_figure(const std::string& figure_id,
                                        std::uint64_t samples, std::uint64_t seed,
                                        int workers = 1);

// Writes via a temp file in the same directory and renames on success, so
// a failed run never leaves a partial CSV behind.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace cdfmr

#endif
