#include "ringstar/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ringstar {

namespace {

int wrap(int v, int p) {
    v %= p;
    return v < 0 ? v + p : v;
}

} // namespace

void NetworkConfig::validate() const {
    if (n_nodes < 3)
        throw ConfigError("need at least 3 nodes (hub plus a ring)", "network.n_nodes");
    if (r_neighbors < 1)
        throw ConfigError("need at least 1 ring neighbor per side", "network.r_neighbors");
    // 2R distinct neighbors must exist among the N-1 peripherals.
    if (2 * r_neighbors > n_nodes - 2)
        throw ConfigError("2R must not exceed N-2, or ring neighborhoods overlap",
                          "network.r_neighbors");
    const struct { const char* name; double v; } finite_fields[] = {
        {"network.sigma0", sigma0},   {"network.mu0", mu0},
        {"network.d_sigma", d_sigma}, {"network.d_mu", d_mu},
        {"network.p_sigma", p_sigma}, {"network.p_mu", p_mu},
        {"network.noise_lo", noise_lo}, {"network.noise_hi", noise_hi},
    };
    for (const auto& f : finite_fields)
        if (!std::isfinite(f.v)) throw ConfigError("must be finite", f.name);
    if (p_sigma < 0.0 || p_sigma > 1.0)
        throw ConfigError("probability must lie in [0, 1]", "network.p_sigma");
    if (p_mu < 0.0 || p_mu > 1.0)
        throw ConfigError("probability must lie in [0, 1]", "network.p_mu");
    if (d_sigma < 0.0)
        throw ConfigError("noise intensity must be nonnegative", "network.d_sigma");
    if (d_mu < 0.0)
        throw ConfigError("noise intensity must be nonnegative", "network.d_mu");
    if (noise_lo > noise_hi)
        throw ConfigError("noise_lo must not exceed noise_hi", "network.noise_lo");
    if (n_total < 1)
        throw ConfigError("need at least one iteration", "network.n_total");
    if (n_transient < 0 || n_transient >= n_total)
        throw ConfigError("transient must satisfy 0 <= n_transient < n_total",
                          "network.n_transient");
    neuron.validate("network.neuron");
}

std::vector<std::string> NetworkConfig::range_warnings() const {
    std::vector<std::string> w = neuron.range_warnings("network.neuron");
    auto note = [&](const char* name, double v, double lo, double hi) {
        if (v < lo || v > hi)
            w.push_back(std::string("network.") + name + " = " + std::to_string(v) +
                        " outside the studied range [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    };
    note("sigma0", sigma0, -0.01, 0.01);
    note("mu0", mu0, -0.001, 0.001);
    note("d_sigma", d_sigma, 0.0, 0.1);
    note("d_mu", d_mu, 0.0, 0.1);
    return w;
}

std::vector<NeuronState> init_states(const NetworkConfig& cfg) {
    cfg.validate();
    CounterRng rng(cfg.seed);
    std::vector<NeuronState> states(cfg.n_nodes);
    for (int m = 0; m < cfg.n_nodes; ++m) {
        states[m].x = rng.uniform01(Draw::InitX, 0, static_cast<std::uint64_t>(m));
        states[m].y = 1.0;
        states[m].phi = 1.0;
    }
    return states;
}

std::vector<int> ring_neighbors(int m, const NetworkConfig& cfg) {
    const int n = cfg.n_nodes;
    const int p = n - 1;
    if (m < 1 || m >= n)
        throw std::out_of_range("ring_neighbors: node " + std::to_string(m) +
                                " is not a peripheral (valid range 1.." +
                                std::to_string(n - 1) + ")");
    std::vector<int> out;
    out.reserve(2 * static_cast<std::size_t>(cfg.r_neighbors));
    const int pidx = m - 1;
    for (int o = -cfg.r_neighbors; o <= cfg.r_neighbors; ++o) {
        if (o == 0) continue;
        out.push_back(1 + wrap(pidx + o, p));
    }
    return out;
}

void draw_couplings_into(const NetworkConfig& cfg, const CounterRng& rng, long step,
                         CouplingDraw& out) {
    const int n = cfg.n_nodes;
    const auto st = static_cast<std::uint64_t>(step);
    out.sigma.resize(n);
    out.mu.resize(n);
    for (int m = 0; m < n; ++m) {
        const auto node = static_cast<std::uint64_t>(m);
        out.sigma[m] = cfg.sigma0 +
                       cfg.d_sigma * rng.uniform(Draw::SigmaNoise, st, node, cfg.noise_lo, cfg.noise_hi);
        out.mu[m] = cfg.mu0 +
                    cfg.d_mu * rng.uniform(Draw::MuNoise, st, node, cfg.noise_lo, cfg.noise_hi);
    }
    if (cfg.gate_mode == GateMode::LayerWide) {
        out.ring_active = rng.bernoulli(Draw::RingGate, st, 0, cfg.p_sigma);
        out.star_active = rng.bernoulli(Draw::StarGate, st, 0, cfg.p_mu);
        out.star_link.clear();
        out.ring_link.clear();
    } else {
        out.ring_active = true;
        out.star_active = true;
        out.star_link.assign(n, 0);
        for (int m = 1; m < n; ++m)
            out.star_link[m] =
                rng.bernoulli(Draw::StarLinkGate, st, static_cast<std::uint64_t>(m), cfg.p_mu);
        out.ring_link.assign(static_cast<std::size_t>(n) * n, 0);
        for (int m = 1; m < n; ++m) {
            for (int i : ring_neighbors(m, cfg)) {
                if (i <= m) continue; // one draw per unordered pair
                const auto key = static_cast<std::uint64_t>(m) * n + i;
                out.ring_link[static_cast<std::size_t>(m) * n + i] =
                    rng.bernoulli(Draw::RingLinkGate, st, key, cfg.p_sigma);
            }
        }
    }
}

CouplingDraw draw_couplings(const NetworkConfig& cfg, const CounterRng& rng, long step) {
    CouplingDraw d;
    draw_couplings_into(cfg, rng, step, d);
    return d;
}

std::vector<NeuronState> network_step(const std::vector<NeuronState>& states,
                                      const CouplingDraw& draw,
                                      const NetworkConfig& cfg) {
    const int n = cfg.n_nodes;
    if (static_cast<int>(states.size()) != n)
        throw std::invalid_argument("network_step: state vector size does not match n_nodes");
    const int p = n - 1;
    const int r = cfg.r_neighbors;
    const bool per_link = cfg.gate_mode == GateMode::PerLink;

    std::vector<NeuronState> out(n);
    for (int i = 0; i < n; ++i) out[i] = step_unchecked(states[i], cfg.neuron);

    if (draw.star_active) {
        const double x0 = states[0].x;
        double hub_acc = 0.0;
        for (int m = 1; m < n; ++m) {
            if (per_link && !draw.star_link[m]) continue;
            const double term = draw.mu[m] * (states[m].x - x0);
            out[m].x += cfg.star_sign == StarSign::Printed ? term : -term;
            hub_acc += term; // hub side is diffusive in both conventions
        }
        out[0].x += hub_acc;
    }

    if (draw.ring_active) {
        const double inv2r = 1.0 / (2.0 * r);
        for (int m = 1; m < n; ++m) {
            const int pidx = m - 1;
            double acc = 0.0;
            for (int o = -r; o <= r; ++o) {
                if (o == 0) continue;
                const int i = 1 + wrap(pidx + o, p);
                if (per_link) {
                    const int lo = std::min(i, m), hi = std::max(i, m);
                    if (!draw.ring_link[static_cast<std::size_t>(lo) * n + hi]) continue;
                }
                acc += draw.sigma[i] * (states[i].x - states[m].x);
            }
            out[m].x += inv2r * acc;
        }
    }

    for (int i = 0; i < n; ++i)
        if (!finite(out[i]) || std::fabs(out[i].x) > cfg.neuron.divergence_guard)
            throw DivergenceError("node " + std::to_string(i) + " diverged", -1, i);
    return out;
}

TrajectoryBlock run(const NetworkConfig& cfg) {
    cfg.validate();
    const int n = cfg.n_nodes;
    const long kept = cfg.n_kept();
    CounterRng rng(cfg.seed);
    auto states = init_states(cfg);

    TrajectoryBlock blk;
    blk.n_nodes = n;
    blk.n_kept = kept;
    blk.x.assign(static_cast<std::size_t>(n) * kept, 0.0);
    if (cfg.record_y) blk.y.assign(static_cast<std::size_t>(n) * kept, 0.0);
    if (cfg.record_phi) blk.phi.assign(static_cast<std::size_t>(n) * kept, 0.0);

    CouplingDraw draw;
    for (long t = 0; t < cfg.n_total; ++t) {
        draw_couplings_into(cfg, rng, t, draw);
        try {
            states = network_step(states, draw, cfg);
        } catch (const DivergenceError& e) {
            throw DivergenceError(std::string(e.what()) + " at step " + std::to_string(t),
                                  t, e.node_index);
        }
        if (t >= cfg.n_transient) {
            const long col = t - cfg.n_transient;
            for (int i = 0; i < n; ++i) {
                blk.x[static_cast<std::size_t>(i) * kept + col] = states[i].x;
                if (cfg.record_y) blk.y[static_cast<std::size_t>(i) * kept + col] = states[i].y;
                if (cfg.record_phi)
                    blk.phi[static_cast<std::size_t>(i) * kept + col] = states[i].phi;
            }
        }
    }
    blk.final_states = std::move(states);
    return blk;
}

} // namespace ringstar
