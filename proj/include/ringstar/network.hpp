#pragma once

// Ring-star network of flux-augmented Chialvo neurons.
//
// Node 0 is the hub, linked to every peripheral (star layer, coupling mu).
// Peripherals 1..N-1 form a cycle with R neighbors per side (ring layer,
// coupling sigma); the ring wraps over peripherals only, never the hub.
// Per step n, with layer gates active:
//
//   peripheral m: x_m' = local(x_m) + mu_m (x_m - x_0)
//                        + (1/2R) sum_{i in ring(m)} sigma_i (x_i - x_m)
//   hub:          x_0' = local(x_0) + sum_{i=1}^{N-1} mu_i (x_i - x_0)
//
// y and phi evolve coupling-free. sigma_i is the source node's coupling.
// The peripheral star term uses the +mu_m(x_m - x_0) sign by default;
// StarSign::Diffusive flips it for comparison runs. Couplings are
// heterogeneous (sigma_m = sigma0 + d_sigma*xi, xi ~ U[noise_lo, noise_hi],
// fresh per node per step) and each layer is switched on per step by a
// Bernoulli gate with probability p_sigma / p_mu.

#include <cstdint>
#include <string>
#include <vector>

#include "ringstar/neuron.hpp"
#include "ringstar/rng.hpp"

namespace ringstar {

enum class GateMode {
    LayerWide, // one Bernoulli per layer per step (default semantics)
    PerLink,   // independent Bernoulli per undirected link per step
};

enum class StarSign {
    Printed,   // peripheral term +mu_m (x_m - x_0), the default sign
    Diffusive, // conventional -mu_m (x_m - x_0)
};

struct NetworkConfig {
    int n_nodes = 100;    // N, hub included
    int r_neighbors = 2;  // R, ring neighbors per side
    double sigma0 = 0.0;  // mean ring coupling
    double mu0 = 0.0;     // mean star coupling
    double d_sigma = 0.0; // ring noise intensity
    double d_mu = 0.0;    // star noise intensity
    double p_sigma = 1.0; // ring layer activity probability
    double p_mu = 1.0;    // star layer activity probability
    double noise_lo = -0.001;
    double noise_hi = 0.001;
    long n_total = 20000;     // map iterations
    long n_transient = 10000; // leading iterations discarded
    std::uint64_t seed = 1;
    GateMode gate_mode = GateMode::LayerWide;
    StarSign star_sign = StarSign::Printed;
    bool record_y = false;
    bool record_phi = false;
    NeuronParams neuron;

    int peripherals() const { return n_nodes - 1; }
    long n_kept() const { return n_total - n_transient; }

    // Hard invariants; throws ConfigError with the offending field path.
    void validate() const;

    // Recommended-range notes (sigma0, mu0, noise intensities, k).
    std::vector<std::string> range_warnings() const;
};

// Couplings and gate states for one step.
struct CouplingDraw {
    std::vector<double> sigma; // per node
    std::vector<double> mu;    // per node
    bool ring_active = true;   // layer-wide gates
    bool star_active = true;
    // Per-link gates, filled only in GateMode::PerLink. star_link[m] gates
    // the hub<->m link; ring_link[lo*N + hi] gates the peripheral pair
    // {lo, hi}. Both directions of a link share one draw.
    std::vector<std::uint8_t> star_link;
    std::vector<std::uint8_t> ring_link;
};

// Post-transient history, row-major per node: x[node * n_kept + t].
struct TrajectoryBlock {
    int n_nodes = 0;
    long n_kept = 0;
    std::vector<double> x;
    std::vector<double> y;   // empty unless recorded
    std::vector<double> phi; // empty unless recorded
    std::vector<NeuronState> final_states;

    const double* x_row(int node) const { return x.data() + static_cast<std::size_t>(node) * n_kept; }
    double x_at(int node, long t) const { return x_row(node)[t]; }
};

// x ~ U(0,1) from the seeded stream, y = phi = 1 for every node.
std::vector<NeuronState> init_states(const NetworkConfig& cfg);

// The 2R ring neighbors of peripheral m (0-based, 1 <= m <= N-1), wrapped
// cyclically over the peripheral set; never contains the hub or m itself.
// Throws std::out_of_range for the hub or an invalid index.
std::vector<int> ring_neighbors(int m, const NetworkConfig& cfg);

// Fresh couplings and gates for one step. The _into variant reuses buffers.
CouplingDraw draw_couplings(const NetworkConfig& cfg, const CounterRng& rng, long step);
void draw_couplings_into(const NetworkConfig& cfg, const CounterRng& rng, long step,
                         CouplingDraw& out);

// Synchronous update of all nodes from the step-n state. Throws
// DivergenceError (node index filled) on non-finite or out-of-guard output.
std::vector<NeuronState> network_step(const std::vector<NeuronState>& states,
                                      const CouplingDraw& draw,
                                      const NetworkConfig& cfg);

// Full run: init, iterate n_total steps with fresh draws, keep the last
// n_total - n_transient columns. Deterministic given cfg.seed.
TrajectoryBlock run(const NetworkConfig& cfg);

} // namespace ringstar
