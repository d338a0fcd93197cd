#pragma once

// JSON run configuration: parsing (strict, unknown keys rejected), canonical
// serialization, and file helpers. Three run modes share one schema:
//
//   single_neuron: { "mode", "neuron", "init", "n_total", "n_transient",
//                    "lyapunov": {"n_transient","n_sample"}, "sampen" }
//   simulate:      { "mode", "network", "baseline_node", "sampen",
//                    "write_trajectory" }
//   sweep:         { "mode", "network", "baseline_node", "sampen",
//                    "sweep": {"axis1","axis2","samples_per_cell",
//                              "threads","keep_last_instance"} }
//
// "network" requires n_nodes and r_neighbors; every other field has the
// documented default. baseline_node is a 1-based node id (hub is node 1).

#include <string>

#include "ringstar/network.hpp"
#include "ringstar/sample_entropy.hpp"
#include "ringstar/sweep.hpp"

namespace ringstar {

enum class RunMode { SingleNeuron, Simulate, Sweep };

const char* run_mode_name(RunMode m);

struct SingleNeuronConfig {
    NeuronParams neuron;
    NeuronState init{0.5, 1.0, 1.0};
    long n_total = 20000;
    long n_transient = 10000;
    long lyap_transient = 1000;
    long lyap_sample = 10000;

    void validate() const;
};

struct RunConfig {
    RunMode mode = RunMode::Simulate;
    SingleNeuronConfig single; // RunMode::SingleNeuron
    NetworkConfig network;     // Simulate and Sweep (sweep base)
    int baseline_node = 2;     // 1-based reporting id; internal index is one less
    SampEnConfig sampen;
    SweepSpec sweep; // RunMode::Sweep; base/sampen mirrored from network/sampen
    bool write_trajectory = false;

    int baseline_index() const { return baseline_node - 1; }
    void validate() const;
};

// Throws ConfigError (field path filled) on malformed JSON, unknown keys,
// wrong types, or missing required fields. Does not run semantic validation;
// call RunConfig::validate() for that.
RunConfig parse_config(const std::string& json_text);

RunConfig load_config_file(const std::string& path);

// Canonical form: alphabetical keys, 2-space indent, trailing newline,
// shortest round-trip numbers. parse(serialize(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& cfg);

void save_config_file(const RunConfig& cfg, const std::string& path);

} // namespace ringstar
