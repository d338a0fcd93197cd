#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ringstar/cli.hpp"

using namespace ringstar;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() /
                     ("ringstar_cli_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string sub(const char* name) const { return (path / name).string(); }
};

std::string write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(bool(in), "missing file: " << p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

long line_count(const fs::path& p) {
    const std::string text = slurp(p);
    long n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

const char* kSimulateCfg = R"({
    "mode": "simulate",
    "network": {
        "n_nodes": 6, "r_neighbors": 1,
        "sigma0": 0.01, "mu0": 0.001,
        "d_sigma": 0.005, "d_mu": 0.005,
        "n_total": 400, "n_transient": 200,
        "seed": 5
    }
})";

} // namespace

TEST_CASE("help and version requests succeed") {
    CHECK(run_cli({"--version"}) == kExitOk);
    CHECK(run_cli({"--help"}) == kExitOk);
}

TEST_CASE("missing required flags and unknown flags exit with the config code") {
    TempDir tmp;
    const std::string cfg = write_file(tmp.path / "c.json", kSimulateCfg);
    CHECK(run_cli({}) == kExitConfig);
    CHECK(run_cli({"-c", cfg}) == kExitConfig);                     // no --out
    CHECK(run_cli({"-o", tmp.sub("o")}) == kExitConfig);            // no --config
    CHECK(run_cli({"-c", cfg, "-o", tmp.sub("o"), "--bogus"}) == kExitConfig);
}

TEST_CASE("unreadable or invalid configs exit with the config code") {
    TempDir tmp;
    CHECK(run_cli({"-c", tmp.sub("nope.json"), "-o", tmp.sub("o"), "--quiet"}) ==
          kExitConfig);
    const std::string bad = write_file(tmp.path / "bad.json", "{ not json");
    CHECK(run_cli({"-c", bad, "-o", tmp.sub("o"), "--quiet"}) == kExitConfig);
    const std::string unknown = write_file(
        tmp.path / "unk.json",
        R"({"mode":"simulate","network":{"n_nodes":6,"r_neighbors":1,"frobnicate":1}})");
    CHECK(run_cli({"-c", unknown, "-o", tmp.sub("o"), "--quiet"}) == kExitConfig);
    const std::string invalid = write_file(
        tmp.path / "inv.json",
        R"({"mode":"simulate","network":{"n_nodes":6,"r_neighbors":1},"baseline_node":9})");
    CHECK(run_cli({"-c", invalid, "-o", tmp.sub("o"), "--quiet"}) == kExitConfig);
}

TEST_CASE("simulate mode writes the documented artifact set") {
    TempDir tmp;
    const std::string cfg = write_file(tmp.path / "c.json", kSimulateCfg);
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli({"-c", cfg, "-o", out, "--quiet"}) == kExitOk);

    const fs::path dir(out);
    for (const char* name :
         {"resolved_config.json", "metrics.json", "gamma_per_node.csv",
          "spatial_average.csv", "last_instance.csv", "recurrence.csv", "manifest.json",
          "fig_phase_portrait.png", "fig_gamma_per_node.png", "fig_spatiotemporal.png",
          "fig_last_instance.png", "fig_recurrence.png"})
        CHECK_MESSAGE(fs::exists(dir / name), name);
    CHECK_FALSE(fs::exists(dir / "trajectory.csv"));

    const json metrics = json::parse(slurp(dir / "metrics.json"));
    CHECK(metrics.contains("gamma_avg"));
    CHECK(metrics.contains("sync_error"));
    CHECK(metrics.contains("solitary_fraction"));
    CHECK(metrics.contains("sample_entropy"));
    CHECK(metrics["baseline_node"] == 2);

    CHECK(line_count(dir / "gamma_per_node.csv") == 1 + 6);
    CHECK(line_count(dir / "spatial_average.csv") == 1 + 200);
    CHECK(line_count(dir / "last_instance.csv") == 1 + 6);
    CHECK(line_count(dir / "recurrence.csv") == 1 + 6);

    const json manifest = json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["mode"] == "simulate");
    CHECK(manifest["version"] == std::string(kVersion));
    CHECK(manifest["complete"] == true);
    const auto arts = manifest["artifacts"].get<std::vector<std::string>>();
    const std::set<std::string> art_set(arts.begin(), arts.end());
    CHECK(art_set.count("metrics.json") == 1);
    CHECK(art_set.count("resolved_config.json") == 1);
    CHECK(art_set.count("manifest.json") == 0);
    for (const std::string& a : arts) CHECK(fs::exists(dir / a));

    // resolved_config.json must parse back as a valid config.
    CHECK_NOTHROW(parse_config(slurp(dir / "resolved_config.json")).validate());
}

TEST_CASE("plot suppression and trajectory opt-in work") {
    TempDir tmp;
    const std::string cfg = write_file(tmp.path / "c.json", kSimulateCfg);
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli({"-c", cfg, "-o", out, "--quiet", "--no-plots",
                     "--write-trajectory"}) == kExitOk);
    int n_png = 0;
    for (const auto& e : fs::directory_iterator(out))
        if (e.path().extension() == ".png") ++n_png;
    CHECK(n_png == 0);
    CHECK(fs::exists(fs::path(out) / "trajectory.csv"));
    CHECK(line_count(fs::path(out) / "trajectory.csv") == 1 + 200);
}

TEST_CASE("diverging dynamics exit with the divergence code") {
    TempDir tmp;
    const std::string cfg = write_file(tmp.path / "c.json", R"({
        "mode": "simulate",
        "network": {"n_nodes": 6, "r_neighbors": 1, "n_total": 50, "n_transient": 10,
                    "neuron": {"k0": 1e9}}
    })");
    CHECK(run_cli({"-c", cfg, "-o", tmp.sub("o"), "--quiet"}) == kExitDivergence);
}

TEST_CASE("single-neuron mode reports map statistics") {
    TempDir tmp;
    const std::string cfg = write_file(tmp.path / "c.json", R"({
        "mode": "single_neuron",
        "n_total": 1200, "n_transient": 1000,
        "lyapunov": {"n_transient": 100, "n_sample": 1500}
    })");
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli({"-c", cfg, "-o", out, "--quiet"}) == kExitOk);
    const fs::path dir(out);
    CHECK(fs::exists(dir / "fig_time_series.png"));
    CHECK(fs::exists(dir / "fig_phase_portrait.png"));
    CHECK(line_count(dir / "time_series.csv") == 1 + 200);

    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report.contains("lyapunov_max"));
    CHECK(report["lyapunov_exponents"].size() == 3);
    CHECK(report.contains("sample_entropy"));
    CHECK(report["n_kept"] == 200);
    const double x_mean = report["x_mean"].get<double>();
    CHECK(x_mean > -2.0);
    CHECK(x_mean < 2.0);
}

TEST_CASE("identical runs are byte-identical except for the manifest") {
    TempDir tmp;
    const std::string cfg = write_file(tmp.path / "c.json", kSimulateCfg);
    const std::string a = tmp.sub("a"), b = tmp.sub("b");
    REQUIRE(run_cli({"-c", cfg, "-o", a, "--quiet"}) == kExitOk);
    REQUIRE(run_cli({"-c", cfg, "-o", b, "--quiet"}) == kExitOk);
    int compared = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        const std::string name = e.path().filename().string();
        if (name == "manifest.json") continue;
        CHECK_MESSAGE(slurp(e.path()) == slurp(fs::path(b) / name), name);
        ++compared;
    }
    CHECK(compared >= 10);
}

TEST_CASE("a seed override changes the resolved config and the results") {
    TempDir tmp;
    const std::string cfg = write_file(tmp.path / "c.json", kSimulateCfg);
    const std::string a = tmp.sub("a"), b = tmp.sub("b");
    REQUIRE(run_cli({"-c", cfg, "-o", a, "--quiet", "--no-plots"}) == kExitOk);
    REQUIRE(run_cli({"-c", cfg, "-o", b, "--quiet", "--no-plots", "--seed", "99"}) ==
            kExitOk);
    const json ra = json::parse(slurp(fs::path(a) / "resolved_config.json"));
    const json rb = json::parse(slurp(fs::path(b) / "resolved_config.json"));
    CHECK(ra["network"]["seed"] == 5);
    CHECK(rb["network"]["seed"] == 99);
    CHECK(slurp(fs::path(a) / "last_instance.csv") !=
          slurp(fs::path(b) / "last_instance.csv"));
    const json mb = json::parse(slurp(fs::path(b) / "manifest.json"));
    CHECK(mb["seed"] == 99);
}

TEST_CASE("two-axis sweeps emit grids, heatmaps and rank correlations") {
    TempDir tmp;
    const std::string cfg = write_file(tmp.path / "c.json", R"({
        "mode": "sweep",
        "network": {"n_nodes": 5, "r_neighbors": 1, "d_sigma": 0.005, "d_mu": 0.005,
                    "n_total": 300, "n_transient": 100, "seed": 3},
        "sweep": {
            "axis1": {"param": "sigma0", "lo": -0.02, "hi": 0.02, "count": 2},
            "axis2": {"param": "mu0", "lo": -0.001, "hi": 0.001, "count": 2},
            "threads": 2
        }
    })");
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli({"-c", cfg, "-o", out, "--quiet"}) == kExitOk);
    const fs::path dir(out);
    for (const char* name :
         {"grid_gamma.csv", "grid_sync_error.csv", "grid_solitary_fraction.csv",
          "grid_sample_entropy.csv", "grid_diverged.csv", "heatmap_gamma.png",
          "heatmap_sync_error.png", "heatmap_solitary_fraction.png",
          "heatmap_sample_entropy.png", "cells.csv", "scatter_e_vs_gamma.csv",
          "scatter_se_vs_e.csv", "scatter_se_vs_gamma.csv", "correlations.json"})
        CHECK_MESSAGE(fs::exists(dir / name), name);

    // corner + one row per axis2 value
    CHECK(line_count(dir / "grid_gamma.csv") == 1 + 2);
    CHECK(line_count(dir / "cells.csv") == 1 + 4);
    const std::string grid = slurp(dir / "grid_gamma.csv");
    CHECK(grid.rfind("mu0\\sigma0,", 0) == 0);

    const json corr = json::parse(slurp(dir / "correlations.json"));
    CHECK(corr["complete"] == true);
    CHECK(corr["n_cells_used"] == 4);
}

TEST_CASE("one-axis sweeps emit metric curves and a bifurcation table") {
    TempDir tmp;
    const std::string cfg = write_file(tmp.path / "c.json", R"({
        "mode": "sweep",
        "network": {"n_nodes": 5, "r_neighbors": 1, "sigma0": 0.01,
                    "n_total": 300, "n_transient": 100, "seed": 3},
        "sweep": {"axis1": {"param": "k", "lo": -1.0, "hi": -0.5, "count": 3}}
    })");
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli({"-c", cfg, "-o", out, "--quiet"}) == kExitOk);
    const fs::path dir(out);
    for (const char* name :
         {"metric_gamma.csv", "metric_sync_error.csv", "metric_solitary_fraction.csv",
          "metric_sample_entropy.csv", "fig_gamma.png", "fig_bifurcation.png",
          "bifurcation.csv", "cells.csv", "correlations.json"})
        CHECK_MESSAGE(fs::exists(dir / name), name);
    CHECK(line_count(dir / "metric_gamma.csv") == 1 + 3);
    // 3 cells x 5 nodes, header first; the CLI keeps final states for 1-D scans
    CHECK(line_count(dir / "bifurcation.csv") == 1 + 15);
}

TEST_CASE("RINGSTAR_THREADS steers sweep parallelism when no flag is given") {
    TempDir tmp;
    const std::string cfg = write_file(tmp.path / "c.json", R"({
        "mode": "sweep",
        "network": {"n_nodes": 5, "r_neighbors": 1, "n_total": 200, "n_transient": 100},
        "sweep": {"axis1": {"param": "sigma0", "lo": 0.0, "hi": 0.01, "count": 2}}
    })");
    ::setenv("RINGSTAR_THREADS", "3", 1);
    const std::string out = tmp.sub("env");
    REQUIRE(run_cli({"-c", cfg, "-o", out, "--quiet", "--no-plots"}) == kExitOk);
    json manifest = json::parse(slurp(fs::path(out) / "manifest.json"));
    CHECK(manifest["threads"] == 3);

    // An explicit flag wins over the environment.
    const std::string out2 = tmp.sub("flag");
    REQUIRE(run_cli({"-c", cfg, "-o", out2, "--quiet", "--no-plots", "--threads", "2"}) ==
            kExitOk);
    manifest = json::parse(slurp(fs::path(out2) / "manifest.json"));
    CHECK(manifest["threads"] == 2);
    ::unsetenv("RINGSTAR_THREADS");
}
