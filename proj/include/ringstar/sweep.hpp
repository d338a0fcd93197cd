#pragma once

// Parameter-sweep engine: 1-D scans and 2-D grids over network parameters.
//
// Every cell of the grid is simulated with an independent seed derived from
// the base seed, the flat cell index and the sample index, so results are
// bit-identical regardless of how many worker threads execute the sweep.

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "ringstar/metrics.hpp"
#include "ringstar/network.hpp"
#include "ringstar/sample_entropy.hpp"

namespace ringstar {

enum class SweepParam { Sigma0, Mu0, DSigma, DMu, PSigma, PMu, K };

const char* sweep_param_name(SweepParam p);
SweepParam sweep_param_from_name(const std::string& name); // throws ConfigError
void apply_param(NetworkConfig& cfg, SweepParam p, double value);

struct SweepAxis {
    SweepParam param = SweepParam::Sigma0;
    double lo = 0.0;
    double hi = 1.0;
    int count = 2;

    // Inclusive linear spacing; count == 1 collapses to lo.
    double value(int i) const;
    void validate(const std::string& field_prefix) const;
};

struct SweepSpec {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2; // absent -> 1-D scan
    NetworkConfig base;
    int samples_per_cell = 1;
    SampEnConfig sampen;
    int threads = 0; // 0 = hardware concurrency
    bool keep_last_instance = false;

    int n1() const { return axis1.count; }
    int n2() const { return axis2 ? axis2->count : 1; }
    int n_cells() const { return n1() * n2(); }
    void validate() const;
};

struct CellResult {
    int i1 = 0;
    int i2 = 0;
    double value1 = 0.0; // axis1 parameter value
    double value2 = 0.0; // axis2 parameter value (0 for 1-D scans)
    // Means over the cell's non-divergent samples; NaN when unavailable.
    double gamma = 0.0;
    double sync_error = 0.0;
    double solitary_fraction = 0.0;
    double sample_entropy = 0.0;
    bool diverged = false; // any sample diverged
    bool complete = false; // false only when the sweep was cancelled first
    std::vector<NeuronState> last_instance; // kept for the first sample on request
};

struct SweepResult {
    SweepSpec spec;
    std::vector<CellResult> cells; // flat index i2 * n1 + i1
    bool complete = true;

    const CellResult& cell(int i1, int i2) const {
        return cells[static_cast<std::size_t>(i2) * spec.n1() + i1];
    }
};

// Seed for one sample of one cell, derived from the base seed only.
std::uint64_t cell_seed(std::uint64_t base_seed, int cell_index, int sample_index);

// Runs the sweep on a pool of worker threads. If `cancel` is non-null and
// becomes true, workers stop picking up new cells; finished cells keep their
// results and the rest stay incomplete (result.complete == false).
SweepResult run_sweep(const SweepSpec& spec, const std::atomic<bool>* cancel = nullptr);

// Convenience wrapper for a 1-D scan along a single axis.
SweepResult scan_bifurcation(const SweepAxis& axis, const NetworkConfig& base,
                             int samples_per_cell = 1, int threads = 0,
                             const SampEnConfig& sampen = {},
                             const std::atomic<bool>* cancel = nullptr);

// Spearman rank correlation with average ranks for ties; pairs containing a
// non-finite value are dropped; fewer than 2 usable pairs -> NaN.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct MeasureCorrelations {
    double rho_sync_gamma = 0.0;   // rank corr of sync error vs cross-correlation
    double rho_entropy_sync = 0.0; // rank corr of sample entropy vs sync error
    double rho_entropy_gamma = 0.0;
    int n_cells_used = 0; // complete, non-divergent cells
};

MeasureCorrelations correlate_measures(const SweepResult& result);

} // namespace ringstar
