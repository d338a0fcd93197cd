#include "ringstar/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace ringstar {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

const char* sweep_param_name(SweepParam p) {
    switch (p) {
        case SweepParam::Sigma0: return "sigma0";
        case SweepParam::Mu0: return "mu0";
        case SweepParam::DSigma: return "d_sigma";
        case SweepParam::DMu: return "d_mu";
        case SweepParam::PSigma: return "p_sigma";
        case SweepParam::PMu: return "p_mu";
        case SweepParam::K: return "k";
    }
    return "?";
}

SweepParam sweep_param_from_name(const std::string& name) {
    for (SweepParam p : {SweepParam::Sigma0, SweepParam::Mu0, SweepParam::DSigma,
                         SweepParam::DMu, SweepParam::PSigma, SweepParam::PMu,
                         SweepParam::K}) {
        if (name == sweep_param_name(p)) return p;
    }
    throw ConfigError("unknown sweep parameter '" + name +
                          "' (expected sigma0, mu0, d_sigma, d_mu, p_sigma, p_mu or k)",
                      "sweep.param");
}

void apply_param(NetworkConfig& cfg, SweepParam p, double value) {
    switch (p) {
        case SweepParam::Sigma0: cfg.sigma0 = value; break;
        case SweepParam::Mu0: cfg.mu0 = value; break;
        case SweepParam::DSigma: cfg.d_sigma = value; break;
        case SweepParam::DMu: cfg.d_mu = value; break;
        case SweepParam::PSigma: cfg.p_sigma = value; break;
        case SweepParam::PMu: cfg.p_mu = value; break;
        case SweepParam::K: cfg.neuron.k = value; break;
    }
}

double SweepAxis::value(int i) const {
    if (count <= 1) return lo;
    return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(count - 1));
}

void SweepAxis::validate(const std::string& field_prefix) const {
    if (count < 1) throw ConfigError("axis needs at least 1 point", field_prefix + ".count");
    if (!std::isfinite(lo)) throw ConfigError("must be finite", field_prefix + ".lo");
    if (!std::isfinite(hi)) throw ConfigError("must be finite", field_prefix + ".hi");
}

void SweepSpec::validate() const {
    axis1.validate("sweep.axis1");
    if (axis2) axis2->validate("sweep.axis2");
    if (samples_per_cell < 1)
        throw ConfigError("need at least 1 sample per cell", "sweep.samples_per_cell");
    if (threads < 0) throw ConfigError("thread count cannot be negative", "sweep.threads");
    base.validate();
}

std::uint64_t cell_seed(std::uint64_t base_seed, int cell_index, int sample_index) {
    return CounterRng(base_seed).bits(Draw::CellSeed, cell_index, sample_index);
}

namespace {

NetworkConfig cell_config(const SweepSpec& spec, int i1, int i2) {
    NetworkConfig cfg = spec.base;
    apply_param(cfg, spec.axis1.param, spec.axis1.value(i1));
    if (spec.axis2) apply_param(cfg, spec.axis2->param, spec.axis2->value(i2));
    return cfg;
}

CellResult compute_cell(const SweepSpec& spec, int ci) {
    CellResult out;
    out.i1 = ci % spec.n1();
    out.i2 = ci / spec.n1();
    out.value1 = spec.axis1.value(out.i1);
    out.value2 = spec.axis2 ? spec.axis2->value(out.i2) : 0.0;

    NetworkConfig cfg = cell_config(spec, out.i1, out.i2);

    double sum_g = 0.0, sum_e = 0.0, sum_s = 0.0, sum_se = 0.0;
    int n_g = 0, n_e = 0, n_s = 0, n_se = 0;

    for (int s = 0; s < spec.samples_per_cell; ++s) {
        cfg.seed = cell_seed(spec.base.seed, ci, s);
        TrajectoryBlock traj;
        try {
            traj = run(cfg);
        } catch (const DivergenceError&) {
            out.diverged = true;
            break;
        }
        if (s == 0 && spec.keep_last_instance) out.last_instance = traj.final_states;

        sum_e += sync_error(traj);
        ++n_e;
        try {
            const std::vector<double> g = cross_correlation(traj);
            const double ga = gamma_average(g);
            if (std::isfinite(ga)) {
                sum_g += ga;
                ++n_g;
            }
            sum_s += solitary_fraction(classify(g));
            ++n_s;
        } catch (const DegenerateSeries&) {
            // baseline variance underflow: correlation measures unavailable
        }
        try {
            sum_se += sample_entropy(spatial_average(traj), spec.sampen);
        } catch (const DegenerateSeries&) {
            // constant average carries no entropy
        }
        ++n_se;
    }

    if (out.diverged) {
        out.gamma = out.sync_error = out.solitary_fraction = out.sample_entropy = kNaN;
    } else {
        out.gamma = n_g ? sum_g / n_g : kNaN;
        out.sync_error = n_e ? sum_e / n_e : kNaN;
        out.solitary_fraction = n_s ? sum_s / n_s : kNaN;
        out.sample_entropy = n_se ? sum_se / n_se : kNaN;
    }
    out.complete = true;
    return out;
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec, const std::atomic<bool>* cancel) {
    spec.validate();
    const int n_cells = spec.n_cells();
    // Surface bad axis ranges (e.g. a probability swept past 1) before
    // starting any worker.
    for (int ci = 0; ci < n_cells; ++ci)
        cell_config(spec, ci % spec.n1(), ci / spec.n1()).validate();

    SweepResult result;
    result.spec = spec;
    result.cells.assign(static_cast<std::size_t>(n_cells), CellResult{});
    for (int ci = 0; ci < n_cells; ++ci) {
        CellResult& c = result.cells[ci];
        c.i1 = ci % spec.n1();
        c.i2 = ci / spec.n1();
        c.value1 = spec.axis1.value(c.i1);
        c.value2 = spec.axis2 ? spec.axis2->value(c.i2) : 0.0;
    }

    int n_threads = spec.threads;
    if (n_threads == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        n_threads = hw ? static_cast<int>(hw) : 1;
    }
    n_threads = std::clamp(n_threads, 1, n_cells);

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            if (cancel && cancel->load(std::memory_order_relaxed)) return;
            const int ci = next.fetch_add(1, std::memory_order_relaxed);
            if (ci >= n_cells) return;
            try {
                result.cells[ci] = compute_cell(spec, ci);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    result.complete = std::all_of(result.cells.begin(), result.cells.end(),
                                  [](const CellResult& c) { return c.complete; });
    return result;
}

SweepResult scan_bifurcation(const SweepAxis& axis, const NetworkConfig& base,
                             int samples_per_cell, int threads, const SampEnConfig& sampen,
                             const std::atomic<bool>* cancel) {
    SweepSpec spec;
    spec.axis1 = axis;
    spec.base = base;
    spec.samples_per_cell = samples_per_cell;
    spec.threads = threads;
    spec.sampen = sampen;
    spec.keep_last_instance = true; // bifurcation diagrams need every final state
    return run_sweep(spec, cancel);
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t t = i; t <= j; ++t) rank[idx[t]] = avg;
        i = j + 1;
    }
    return rank;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    const double denom = std::sqrt(va * vb);
    if (denom == 0.0) return kNaN;
    return cov / denom;
}

} // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> xs, ys;
    const std::size_t n = std::min(x.size(), y.size());
    xs.reserve(n);
    ys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isfinite(x[i]) && std::isfinite(y[i])) {
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
    }
    if (xs.size() < 2) return kNaN;
    return pearson(average_ranks(xs), average_ranks(ys));
}

MeasureCorrelations correlate_measures(const SweepResult& result) {
    std::vector<double> g, e, se;
    MeasureCorrelations out;
    for (const CellResult& c : result.cells) {
        if (!c.complete || c.diverged) continue;
        g.push_back(c.gamma);
        e.push_back(c.sync_error);
        se.push_back(c.sample_entropy);
        ++out.n_cells_used;
    }
    out.rho_sync_gamma = spearman(e, g);
    out.rho_entropy_sync = spearman(se, e);
    out.rho_entropy_gamma = spearman(se, g);
    return out;
}

} // namespace ringstar
