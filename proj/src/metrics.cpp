#include "ringstar/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ringstar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_block(const TrajectoryBlock& traj, int baseline) {
    if (traj.n_nodes < 2)
        throw std::invalid_argument("trajectory block needs at least 2 nodes");
    if (traj.n_kept < 2)
        throw std::invalid_argument("trajectory block needs at least 2 time columns");
    if (baseline < 0 || baseline >= traj.n_nodes)
        throw std::out_of_range("baseline node out of range");
}

double series_mean(const double* s, long t) {
    double acc = 0.0;
    for (long i = 0; i < t; ++i) acc += s[i];
    return acc / static_cast<double>(t);
}

} // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Coherent: return "coherent";
        case Regime::Intermediate: return "intermediate";
        case Regime::Solitary: return "solitary";
        case Regime::OutOfRange: return "out_of_range";
        case Regime::Undefined: return "undefined";
    }
    return "unknown";
}

std::vector<double> cross_correlation(const TrajectoryBlock& traj, int baseline) {
    check_block(traj, baseline);
    const long t = traj.n_kept;
    const double* xb = traj.x_row(baseline);
    const double mb = series_mean(xb, t);
    double var_b = 0.0;
    for (long i = 0; i < t; ++i) {
        const double d = xb[i] - mb;
        var_b += d * d;
    }
    var_b /= static_cast<double>(t);
    if (var_b < kVarianceFloor)
        throw DegenerateSeries("baseline node " + std::to_string(baseline) +
                               " has zero variance, correlations undefined");

    std::vector<double> gamma(traj.n_nodes, kNaN);
    gamma[baseline] = 1.0;
    for (int m = 0; m < traj.n_nodes; ++m) {
        if (m == baseline) continue;
        const double* xm = traj.x_row(m);
        const double mm = series_mean(xm, t);
        double cov = 0.0, var_m = 0.0;
        for (long i = 0; i < t; ++i) {
            const double db = xb[i] - mb;
            const double dm = xm[i] - mm;
            cov += db * dm;
            var_m += dm * dm;
        }
        cov /= static_cast<double>(t);
        var_m /= static_cast<double>(t);
        if (var_m < kVarianceFloor) continue; // stays NaN => Undefined
        gamma[m] = cov / std::sqrt(var_b * var_m);
    }
    return gamma;
}

double gamma_average(const std::vector<double>& gamma_per_node, int baseline) {
    double acc = 0.0;
    long count = 0;
    for (int m = 0; m < static_cast<int>(gamma_per_node.size()); ++m) {
        if (m == baseline || std::isnan(gamma_per_node[m])) continue;
        acc += gamma_per_node[m];
        ++count;
    }
    return count > 0 ? acc / static_cast<double>(count) : kNaN;
}

double sync_error(const TrajectoryBlock& traj, int baseline) {
    check_block(traj, baseline);
    const long t = traj.n_kept;
    const double* xb = traj.x_row(baseline);
    double acc = 0.0;
    for (int m = 0; m < traj.n_nodes; ++m) {
        if (m == baseline) continue;
        const double* xm = traj.x_row(m);
        double node_acc = 0.0;
        for (long i = 0; i < t; ++i) node_acc += std::fabs(xb[i] - xm[i]);
        acc += node_acc / static_cast<double>(t);
    }
    return acc / static_cast<double>(traj.n_nodes - 1);
}

std::vector<Regime> classify(const std::vector<double>& gamma_per_node, int baseline) {
    std::vector<Regime> labels(gamma_per_node.size(), Regime::Undefined);
    for (int m = 0; m < static_cast<int>(gamma_per_node.size()); ++m) {
        if (m == baseline) {
            labels[m] = Regime::Coherent; // self-correlation is 1
            continue;
        }
        const double g = gamma_per_node[m];
        if (std::isnan(g)) labels[m] = Regime::Undefined;
        else if (g < -0.38) labels[m] = Regime::OutOfRange;
        else if (g <= -0.15) labels[m] = Regime::Solitary;
        else if (g < 0.75) labels[m] = Regime::Intermediate;
        else labels[m] = Regime::Coherent;
    }
    return labels;
}

double solitary_fraction(const std::vector<Regime>& labels) {
    if (labels.empty()) return 0.0;
    long ns = 0;
    for (Regime r : labels)
        if (r == Regime::Solitary) ++ns;
    return static_cast<double>(ns) / static_cast<double>(labels.size());
}

std::vector<double> recurrence_matrix(const std::vector<NeuronState>& final_states,
                                      bool full_state) {
    const int n = static_cast<int>(final_states.size());
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double dist;
            if (full_state) {
                const double dx = final_states[i].x - final_states[j].x;
                const double dy = final_states[i].y - final_states[j].y;
                const double dp = final_states[i].phi - final_states[j].phi;
                dist = std::sqrt(dx * dx + dy * dy + dp * dp);
            } else {
                dist = std::fabs(final_states[i].x - final_states[j].x);
            }
            d[static_cast<std::size_t>(i) * n + j] = dist;
            d[static_cast<std::size_t>(j) * n + i] = dist;
        }
    }
    return d;
}

std::vector<double> spatial_average(const TrajectoryBlock& traj) {
    if (traj.n_nodes < 1 || traj.n_kept < 1)
        throw std::invalid_argument("empty trajectory block");
    std::vector<double> avg(traj.n_kept, 0.0);
    for (int m = 0; m < traj.n_nodes; ++m) {
        const double* xm = traj.x_row(m);
        for (long i = 0; i < traj.n_kept; ++i) avg[i] += xm[i];
    }
    const double inv = 1.0 / static_cast<double>(traj.n_nodes);
    for (long i = 0; i < traj.n_kept; ++i) avg[i] *= inv;
    return avg;
}

MetricsReport compute_metrics(const TrajectoryBlock& traj, int baseline) {
    MetricsReport rep;
    rep.baseline = baseline;
    rep.gamma_per_node = cross_correlation(traj, baseline);
    rep.labels = classify(rep.gamma_per_node, baseline);
    rep.gamma_avg = gamma_average(rep.gamma_per_node, baseline);
    rep.sync_error = ringstar::sync_error(traj, baseline);
    rep.solitary_fraction = ringstar::solitary_fraction(rep.labels);
    for (Regime r : rep.labels) {
        switch (r) {
            case Regime::Solitary: ++rep.n_solitary; break;
            case Regime::Intermediate: ++rep.n_intermediate; break;
            case Regime::Coherent: ++rep.n_coherent; break;
            case Regime::OutOfRange: ++rep.n_out_of_range; break;
            case Regime::Undefined: ++rep.n_undefined; break;
        }
    }
    rep.last_instance.reserve(traj.final_states.size());
    for (const auto& s : traj.final_states) rep.last_instance.push_back(s.x);
    return rep;
}

} // namespace ringstar
