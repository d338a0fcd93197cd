#include "ringstar/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "ringstar/csv.hpp"
#include "ringstar/lyapunov.hpp"
#include "ringstar/metrics.hpp"
#include "ringstar/plot.hpp"
#include "ringstar/sample_entropy.hpp"
#include "ringstar/sweep.hpp"

namespace ringstar {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
}

struct Artifacts {
    fs::path dir;
    std::vector<std::string> names;

    std::string file(const std::string& name) {
        names.push_back(name);
        return (dir / name).string();
    }
};

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<double> node_ids(int n) {
    std::vector<double> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i + 1;
    return ids;
}

void cli_single_neuron(const RunConfig& cfg, Artifacts& out, bool plots, bool quiet) {
    const SingleNeuronConfig& sc = cfg.single;
    NeuronState s = sc.init;
    const long kept = sc.n_total - sc.n_transient;
    std::vector<double> steps, xs, ys, phis;
    steps.reserve(kept);
    xs.reserve(kept);
    ys.reserve(kept);
    phis.reserve(kept);
    for (long t = 0; t < sc.n_total; ++t) {
        s = step(s, sc.neuron);
        if (t < sc.n_transient) continue;
        steps.push_back(static_cast<double>(t));
        xs.push_back(s.x);
        ys.push_back(s.y);
        phis.push_back(s.phi);
    }

    const LyapunovResult lyap =
        lyapunov_spectrum(sc.init, sc.neuron, sc.lyap_transient, sc.lyap_sample);

    const double tol = resolve_tolerance(xs, cfg.sampen);
    const SampEnCounts counts = sample_entropy_counts(xs, cfg.sampen);

    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double v : xs) var += (v - mean) * (v - mean);
    var /= static_cast<double>(xs.size());

    json report{{"lyapunov_max", num(lyap.max_exponent())},
                {"lyapunov_exponents",
                 json::array({num(lyap.exponents[0]), num(lyap.exponents[1]),
                              num(lyap.exponents[2])})},
                {"sample_entropy", num(counts.value())},
                {"sampen_matches_m", counts.b},
                {"sampen_matches_m1", counts.a},
                {"sampen_tolerance", num(tol)},
                {"x_mean", num(mean)},
                {"x_std", num(std::sqrt(var))},
                {"n_kept", kept}};
    write_json_file(out.file("report.json"), report);

    std::vector<std::vector<double>> rows;
    rows.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        rows.push_back({steps[i], xs[i], ys[i], phis[i]});
    write_csv(out.file("time_series.csv"), {"step", "x", "y", "phi"}, rows);

    if (plots) {
        const std::size_t tail = std::min<std::size_t>(xs.size(), 500);
        const std::size_t off = xs.size() - tail;
        std::vector<double> ts(steps.begin() + off, steps.end());
        std::vector<double> tx(xs.begin() + off, xs.end());
        write_png(plot_line(ts, tx, "x time series", "step", "x"),
                  out.file("fig_time_series.png"));
        std::vector<ScatterPoint> pts;
        pts.reserve(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({xs[i], ys[i], {31, 119, 180}});
        write_png(plot_scatter(pts, "phase portrait", "x", "y", 1),
                  out.file("fig_phase_portrait.png"));
    }

    if (!quiet)
        std::cout << "single neuron: lyapunov_max=" << lyap.max_exponent()
                  << " sample_entropy=" << counts.value() << '\n';
}

void cli_simulate(RunConfig cfg, Artifacts& out, bool plots, bool quiet) {
    cfg.network.record_y = true; // phase portrait wants (x, y) of the baseline
    const TrajectoryBlock traj = run(cfg.network);
    const int baseline = cfg.baseline_index();
    MetricsReport rep = compute_metrics(traj, baseline);

    const std::vector<double> avg = spatial_average(traj);
    std::string sampen_note;
    try {
        rep.sample_entropy = sample_entropy(avg, cfg.sampen);
    } catch (const DegenerateSeries&) {
        rep.sample_entropy = 0.0;
        sampen_note = "constant spatial average";
    }
    const std::vector<double> recurrence = recurrence_matrix(traj.final_states);

    json metrics{{"baseline_node", cfg.baseline_node},
                 {"n_nodes", traj.n_nodes},
                 {"n_kept", traj.n_kept},
                 {"gamma_avg", num(rep.gamma_avg)},
                 {"sync_error", num(rep.sync_error)},
                 {"solitary_fraction", num(rep.solitary_fraction)},
                 {"n_solitary", rep.n_solitary},
                 {"n_intermediate", rep.n_intermediate},
                 {"n_coherent", rep.n_coherent},
                 {"n_out_of_range", rep.n_out_of_range},
                 {"n_undefined", rep.n_undefined},
                 {"sample_entropy", num(rep.sample_entropy)}};
    if (!sampen_note.empty()) metrics["sample_entropy_note"] = sampen_note;
    write_json_file(out.file("metrics.json"), metrics);

    {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(traj.n_nodes);
        for (int m = 0; m < traj.n_nodes; ++m)
            rows.push_back({std::to_string(m + 1), format_double(rep.gamma_per_node[m]),
                            regime_name(rep.labels[m])});
        write_csv_rows(out.file("gamma_per_node.csv"), {"node", "gamma", "regime"}, rows);
    }
    {
        std::vector<std::vector<double>> rows;
        rows.reserve(avg.size());
        for (std::size_t t = 0; t < avg.size(); ++t)
            rows.push_back({static_cast<double>(cfg.network.n_transient + t), avg[t]});
        write_csv(out.file("spatial_average.csv"), {"step", "x_mean"}, rows);
    }
    {
        std::vector<std::vector<double>> rows;
        rows.reserve(traj.n_nodes);
        for (int m = 0; m < traj.n_nodes; ++m)
            rows.push_back({static_cast<double>(m + 1), traj.final_states[m].x});
        write_csv(out.file("last_instance.csv"), {"node", "x"}, rows);
    }
    write_csv_grid(out.file("recurrence.csv"), "node", node_ids(traj.n_nodes),
                   node_ids(traj.n_nodes), recurrence);
    if (cfg.write_trajectory) {
        std::vector<std::string> header{"step"};
        for (int m = 0; m < traj.n_nodes; ++m) header.push_back("x" + std::to_string(m + 1));
        std::vector<std::vector<double>> rows;
        rows.reserve(traj.n_kept);
        for (long t = 0; t < traj.n_kept; ++t) {
            std::vector<double> row;
            row.reserve(traj.n_nodes + 1);
            row.push_back(static_cast<double>(cfg.network.n_transient + t));
            for (int m = 0; m < traj.n_nodes; ++m) row.push_back(traj.x_at(m, t));
            rows.push_back(std::move(row));
        }
        write_csv(out.file("trajectory.csv"), header, rows);
    }

    if (plots) {
        {
            std::vector<ScatterPoint> pts;
            pts.reserve(traj.n_kept);
            const double* bx = traj.x_row(baseline);
            const double* by = traj.y.data() + static_cast<std::size_t>(baseline) * traj.n_kept;
            for (long t = 0; t < traj.n_kept; ++t) pts.push_back({bx[t], by[t], {31, 119, 180}});
            write_png(plot_scatter(pts, "phase portrait, node " + std::to_string(cfg.baseline_node),
                                   "x", "y", 1),
                      out.file("fig_phase_portrait.png"));
        }
        {
            std::vector<ScatterPoint> pts;
            pts.reserve(traj.n_nodes);
            for (int m = 0; m < traj.n_nodes; ++m) {
                if (std::isnan(rep.gamma_per_node[m])) continue;
                pts.push_back({static_cast<double>(m + 1), rep.gamma_per_node[m],
                               regime_color(rep.labels[m])});
            }
            write_png(plot_scatter(pts, "cross correlation per node", "node", "gamma", 3),
                      out.file("fig_gamma_per_node.png"));
        }
        write_png(plot_spatiotemporal(traj, cfg.network.n_transient, "x(node, step)"),
                  out.file("fig_spatiotemporal.png"));
        {
            std::vector<ScatterPoint> pts;
            pts.reserve(traj.n_nodes);
            for (int m = 0; m < traj.n_nodes; ++m)
                pts.push_back({static_cast<double>(m + 1), traj.final_states[m].x,
                               regime_color(rep.labels[m])});
            write_png(plot_scatter(pts, "last instance", "node", "x", 3),
                      out.file("fig_last_instance.png"));
        }
        write_png(plot_heatmap(recurrence, traj.n_nodes, traj.n_nodes, node_ids(traj.n_nodes),
                               node_ids(traj.n_nodes), "recurrence distances", "node", "node"),
                  out.file("fig_recurrence.png"));
    }

    if (!quiet)
        std::cout << "simulate: gamma_avg=" << rep.gamma_avg << " sync_error=" << rep.sync_error
                  << " solitary_fraction=" << rep.solitary_fraction
                  << " sample_entropy=" << rep.sample_entropy << '\n';
}

void cli_sweep(const RunConfig& cfg, Artifacts& out, bool plots, bool quiet) {
    const SweepResult res = run_sweep(cfg.sweep);
    const SweepSpec& spec = res.spec;
    const std::string name1 = sweep_param_name(spec.axis1.param);

    std::vector<double> v1(spec.n1());
    for (int i = 0; i < spec.n1(); ++i) v1[i] = spec.axis1.value(i);

    auto metric_of = [](const CellResult& c, int which) {
        switch (which) {
            case 0: return c.gamma;
            case 1: return c.sync_error;
            case 2: return c.solitary_fraction;
            default: return c.sample_entropy;
        }
    };
    static const char* kMetricNames[4] = {"gamma", "sync_error", "solitary_fraction",
                                          "sample_entropy"};

    if (spec.axis2) {
        const std::string name2 = sweep_param_name(spec.axis2->param);
        std::vector<double> v2(spec.n2());
        for (int i = 0; i < spec.n2(); ++i) v2[i] = spec.axis2->value(i);
        const std::string corner = name2 + "\\" + name1;

        for (int w = 0; w < 4; ++w) {
            std::vector<double> grid(res.cells.size());
            for (std::size_t i = 0; i < res.cells.size(); ++i)
                grid[i] = metric_of(res.cells[i], w);
            const std::string base = kMetricNames[w];
            write_csv_grid(out.file("grid_" + base + ".csv"), corner, v1, v2, grid);
            if (plots)
                write_png(plot_heatmap(grid, spec.n1(), spec.n2(), v1, v2, base, name1, name2),
                          out.file("heatmap_" + base + ".png"));
        }
        {
            std::vector<double> grid(res.cells.size());
            for (std::size_t i = 0; i < res.cells.size(); ++i)
                grid[i] = res.cells[i].diverged ? 1.0 : 0.0;
            write_csv_grid(out.file("grid_diverged.csv"), corner, v1, v2, grid);
        }
    } else {
        for (int w = 0; w < 4; ++w) {
            std::vector<std::vector<double>> rows;
            rows.reserve(res.cells.size());
            std::vector<double> px, py;
            for (const CellResult& c : res.cells) {
                rows.push_back({c.value1, metric_of(c, w)});
                px.push_back(c.value1);
                py.push_back(metric_of(c, w));
            }
            const std::string base = kMetricNames[w];
            write_csv(out.file("metric_" + base + ".csv"), {name1, base}, rows);
            if (plots)
                write_png(plot_line(px, py, base + " vs " + name1, name1, base),
                          out.file("fig_" + base + ".png"));
        }
        // bifurcation scatter: every node's final x at every parameter value
        std::vector<std::vector<double>> rows;
        std::vector<ScatterPoint> pts;
        for (const CellResult& c : res.cells) {
            for (std::size_t m = 0; m < c.last_instance.size(); ++m) {
                rows.push_back({c.value1, static_cast<double>(m + 1), c.last_instance[m].x});
                pts.push_back({c.value1, c.last_instance[m].x, {31, 119, 180}});
            }
        }
        write_csv(out.file("bifurcation.csv"), {name1, "node", "x"}, rows);
        if (plots)
            write_png(plot_scatter(pts, "last instances of x", name1, "x", 1),
                      out.file("fig_bifurcation.png"));
    }

    // per-cell table and measure-vs-measure scatters
    {
        std::vector<std::string> header{"i1", "i2", name1,
                                        spec.axis2 ? sweep_param_name(spec.axis2->param)
                                                   : std::string("value2"),
                                        "gamma", "sync_error", "solitary_fraction",
                                        "sample_entropy", "diverged"};
        std::vector<std::vector<std::string>> rows;
        rows.reserve(res.cells.size());
        for (const CellResult& c : res.cells)
            rows.push_back({std::to_string(c.i1), std::to_string(c.i2), format_double(c.value1),
                            format_double(c.value2), format_double(c.gamma),
                            format_double(c.sync_error), format_double(c.solitary_fraction),
                            format_double(c.sample_entropy), c.diverged ? "1" : "0"});
        write_csv_rows(out.file("cells.csv"), header, rows);
    }
    static const struct {
        const char* file;
        int wx, wy;
    } kScatters[3] = {{"e_vs_gamma", 0, 1}, {"se_vs_e", 1, 3}, {"se_vs_gamma", 0, 3}};
    for (const auto& sc : kScatters) {
        std::vector<std::vector<double>> rows;
        std::vector<ScatterPoint> pts;
        for (const CellResult& c : res.cells) {
            if (!c.complete || c.diverged) continue;
            const double x = metric_of(c, sc.wx), y = metric_of(c, sc.wy);
            rows.push_back({x, y});
            if (std::isfinite(x) && std::isfinite(y)) pts.push_back({x, y, {31, 119, 180}});
        }
        write_csv(out.file(std::string("scatter_") + sc.file + ".csv"),
                  {kMetricNames[sc.wx], kMetricNames[sc.wy]}, rows);
        if (plots)
            write_png(plot_scatter(pts, std::string(kMetricNames[sc.wy]) + " vs " +
                                            kMetricNames[sc.wx],
                                   kMetricNames[sc.wx], kMetricNames[sc.wy], 3),
                      out.file(std::string("scatter_") + sc.file + ".png"));
    }

    const MeasureCorrelations corr = correlate_measures(res);
    write_json_file(out.file("correlations.json"),
                    json{{"rho_sync_gamma", num(corr.rho_sync_gamma)},
                         {"rho_entropy_sync", num(corr.rho_entropy_sync)},
                         {"rho_entropy_gamma", num(corr.rho_entropy_gamma)},
                         {"n_cells_used", corr.n_cells_used},
                         {"complete", res.complete}});

    if (!quiet)
        std::cout << "sweep: " << res.cells.size() << " cells, rho(E,gamma)="
                  << corr.rho_sync_gamma << " rho(SE,E)=" << corr.rho_entropy_sync << '\n';
}

int env_threads() {
    const char* v = std::getenv("RINGSTAR_THREADS");
    if (!v) return 0;
    const int n = std::atoi(v);
    return n > 0 ? n : 0;
}

int run_cli_checked(const CliOptions& opts) {
    RunConfig cfg = load_config_file(opts.config_path);
    if (opts.has_seed) cfg.network.seed = opts.seed;
    if (opts.write_trajectory) cfg.write_trajectory = true;
    int threads = opts.threads > 0 ? opts.threads : env_threads();
    if (threads > 0) cfg.sweep.threads = threads;
    cfg.sweep.base = cfg.network; // re-mirror after overrides
    cfg.sweep.sampen = cfg.sampen;
    if (cfg.mode == RunMode::Sweep && !cfg.sweep.axis2)
        cfg.sweep.keep_last_instance = true; // 1-D scans always get a bifurcation diagram
    cfg.validate();

    fs::create_directories(opts.out_dir);
    Artifacts out;
    out.dir = opts.out_dir;

    const auto t0 = std::chrono::steady_clock::now();
    write_text_file(out.file("resolved_config.json"), serialize_config(cfg));
    switch (cfg.mode) {
        case RunMode::SingleNeuron:
            cli_single_neuron(cfg, out, !opts.no_plots, opts.quiet);
            break;
        case RunMode::Simulate:
            cli_simulate(cfg, out, !opts.no_plots, opts.quiet);
            break;
        case RunMode::Sweep:
            cli_sweep(cfg, out, !opts.no_plots, opts.quiet);
            break;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json manifest{{"version", kVersion},
                  {"mode", run_mode_name(cfg.mode)},
                  {"seed", cfg.network.seed},
                  {"threads", cfg.sweep.threads},
                  {"artifacts", out.names},
                  {"wall_seconds", wall},
                  {"complete", true}};
    write_json_file((out.dir / "manifest.json").string(), manifest);
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"ring-star network of memristive Chialvo neurons: simulate, sweep, analyze"};
    app.set_version_flag("--version", kVersion);

    CliOptions opts;
    app.add_option("-c,--config", opts.config_path, "JSON run configuration")
        ->required();
    app.add_option("-o,--out", opts.out_dir, "output directory (created if missing)")
        ->required();
    app.add_option("--threads", opts.threads,
                   "worker threads for sweeps (overrides config and RINGSTAR_THREADS)");
    auto* seed_opt =
        app.add_option("--seed", opts.seed, "override the network seed");
    app.add_flag("--quiet", opts.quiet, "suppress the stdout summary");
    app.add_flag("--no-plots", opts.no_plots, "skip PNG figure output");
    app.add_flag("--write-trajectory", opts.write_trajectory,
                 "also write the full kept trajectory (simulate mode)");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    opts.has_seed = seed_opt->count() > 0;

    try {
        return run_cli_checked(opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.push_back("ringstar");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const std::string& s : full) argv.push_back(s.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace ringstar
