#pragma once

// Synchronization and pattern metrics over a post-transient trajectory block.
//
// Cross-correlation of node m against the baseline node b (default: the
// first peripheral), on mean-removed series:
//
//   Gamma_{b,m} = <xt_b xt_m> / sqrt(<xt_b^2><xt_m^2>),  xt = x - <x>
//
// Averaged Gamma excludes the baseline itself. Synchronization error:
//
//   E = (1/(N-1)) sum_{m != b} <|x_b(n) - x_m(n)|>
//
// Regime thresholds on Gamma_{b,m}: Solitary in [-0.38, -0.15] (closed),
// Intermediate in (-0.15, 0.75) (open), Coherent in [0.75, 1], below -0.38
// counted separately as OutOfRange, zero-variance series Undefined.

#include <limits>
#include <vector>

#include "ringstar/network.hpp"

namespace ringstar {

enum class Regime { Coherent, Intermediate, Solitary, OutOfRange, Undefined };

const char* regime_name(Regime r);

// Variance below this is treated as zero (degenerate series).
inline constexpr double kVarianceFloor = 1e-30;

// Per-node Gamma_{b,m}; NaN marks a degenerate (Undefined) node. Throws
// DegenerateSeries if the baseline itself has no variance.
std::vector<double> cross_correlation(const TrajectoryBlock& traj, int baseline = 1);

// Mean over m != baseline; NaN entries excluded with the divisor reduced.
double gamma_average(const std::vector<double>& gamma_per_node, int baseline = 1);

double sync_error(const TrajectoryBlock& traj, int baseline = 1);

// Thresholds as above; the baseline node is Coherent by definition.
std::vector<Regime> classify(const std::vector<double>& gamma_per_node, int baseline = 1);

double solitary_fraction(const std::vector<Regime>& labels);

// Symmetric N x N distance matrix (row-major) between final states;
// |x_i - x_j| by default, 3-component Euclidean with full_state = true.
std::vector<double> recurrence_matrix(const std::vector<NeuronState>& final_states,
                                      bool full_state = false);

// xbar(n) = mean over nodes of x at each retained step.
std::vector<double> spatial_average(const TrajectoryBlock& traj);

struct MetricsReport {
    int baseline = 1;
    std::vector<double> gamma_per_node; // NaN where Undefined
    std::vector<Regime> labels;
    double gamma_avg = 0.0;
    double sync_error = 0.0;
    double solitary_fraction = 0.0;
    int n_solitary = 0;
    int n_intermediate = 0;
    int n_coherent = 0;
    int n_out_of_range = 0;
    int n_undefined = 0;
    // Filled by the caller from ts-analysis (entropy of the spatial average);
    // NaN until then.
    double sample_entropy = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> last_instance; // final x per node
};

MetricsReport compute_metrics(const TrajectoryBlock& traj, int baseline = 1);

} // namespace ringstar
