#include "ringstar/config_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace ringstar {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg, const std::string& path) {
    throw ConfigError(msg, path);
}

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void check_object(const json& v, const std::string& path) {
    if (!v.is_object()) fail("expected an object", path);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) fail("unknown field", join(path, it.key()));
    }
}

double get_double(const json& obj, const std::string& path, const char* key, double def) {
    auto it = obj.find(key);
    if (it == obj.end()) return def;
    if (!it->is_number()) fail("expected a number", join(path, key));
    return it->get<double>();
}

long get_long(const json& obj, const std::string& path, const char* key, long def) {
    auto it = obj.find(key);
    if (it == obj.end()) return def;
    if (!it->is_number_integer()) fail("expected an integer", join(path, key));
    return it->get<long>();
}

int get_int(const json& obj, const std::string& path, const char* key, int def) {
    return static_cast<int>(get_long(obj, path, key, def));
}

int require_int(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail("required field missing", join(path, key));
    return get_int(obj, path, key, 0);
}

double require_double(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail("required field missing", join(path, key));
    return get_double(obj, path, key, 0.0);
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool def) {
    auto it = obj.find(key);
    if (it == obj.end()) return def;
    if (!it->is_boolean()) fail("expected a boolean", join(path, key));
    return it->get<bool>();
}

std::uint64_t get_u64(const json& obj, const std::string& path, const char* key,
                      std::uint64_t def) {
    auto it = obj.find(key);
    if (it == obj.end()) return def;
    if (!it->is_number_integer() && !it->is_number_unsigned())
        fail("expected an integer", join(path, key));
    if (it->is_number_integer() && !it->is_number_unsigned() && it->get<long long>() < 0)
        fail("seed cannot be negative", join(path, key));
    return it->get<std::uint64_t>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& def) {
    auto it = obj.find(key);
    if (it == obj.end()) return def;
    if (!it->is_string()) fail("expected a string", join(path, key));
    return it->get<std::string>();
}

NeuronParams parse_neuron(const json& obj, const std::string& path) {
    check_object(obj, path);
    check_keys(obj, path,
               {"a", "b", "c", "k0", "alpha", "beta", "k1", "k2", "k", "divergence_guard"});
    NeuronParams p;
    p.a = get_double(obj, path, "a", p.a);
    p.b = get_double(obj, path, "b", p.b);
    p.c = get_double(obj, path, "c", p.c);
    p.k0 = get_double(obj, path, "k0", p.k0);
    p.alpha = get_double(obj, path, "alpha", p.alpha);
    p.beta = get_double(obj, path, "beta", p.beta);
    p.k1 = get_double(obj, path, "k1", p.k1);
    p.k2 = get_double(obj, path, "k2", p.k2);
    p.k = get_double(obj, path, "k", p.k);
    p.divergence_guard = get_double(obj, path, "divergence_guard", p.divergence_guard);
    return p;
}

SampEnConfig parse_sampen(const json& obj, const std::string& path) {
    check_object(obj, path);
    check_keys(obj, path, {"emb_dim", "r"});
    SampEnConfig c;
    c.emb_dim = get_int(obj, path, "emb_dim", c.emb_dim);
    c.r = get_double(obj, path, "r", c.r);
    return c;
}

NetworkConfig parse_network(const json& obj, const std::string& path) {
    check_object(obj, path);
    check_keys(obj, path,
               {"n_nodes", "r_neighbors", "sigma0", "mu0", "d_sigma", "d_mu", "p_sigma",
                "p_mu", "noise_lo", "noise_hi", "n_total", "n_transient", "seed",
                "gate_mode", "star_sign", "record_y", "record_phi", "neuron"});
    NetworkConfig c;
    c.n_nodes = require_int(obj, path, "n_nodes");
    c.r_neighbors = require_int(obj, path, "r_neighbors");
    c.sigma0 = get_double(obj, path, "sigma0", c.sigma0);
    c.mu0 = get_double(obj, path, "mu0", c.mu0);
    c.d_sigma = get_double(obj, path, "d_sigma", c.d_sigma);
    c.d_mu = get_double(obj, path, "d_mu", c.d_mu);
    c.p_sigma = get_double(obj, path, "p_sigma", c.p_sigma);
    c.p_mu = get_double(obj, path, "p_mu", c.p_mu);
    c.noise_lo = get_double(obj, path, "noise_lo", c.noise_lo);
    c.noise_hi = get_double(obj, path, "noise_hi", c.noise_hi);
    c.n_total = get_long(obj, path, "n_total", c.n_total);
    c.n_transient = get_long(obj, path, "n_transient", c.n_transient);
    c.seed = get_u64(obj, path, "seed", c.seed);
    const std::string gate = get_string(obj, path, "gate_mode", "layer_wide");
    if (gate == "layer_wide")
        c.gate_mode = GateMode::LayerWide;
    else if (gate == "per_link")
        c.gate_mode = GateMode::PerLink;
    else
        fail("expected \"layer_wide\" or \"per_link\"", join(path, "gate_mode"));
    const std::string sign = get_string(obj, path, "star_sign", "printed");
    if (sign == "printed")
        c.star_sign = StarSign::Printed;
    else if (sign == "diffusive")
        c.star_sign = StarSign::Diffusive;
    else
        fail("expected \"printed\" or \"diffusive\"", join(path, "star_sign"));
    c.record_y = get_bool(obj, path, "record_y", c.record_y);
    c.record_phi = get_bool(obj, path, "record_phi", c.record_phi);
    if (obj.contains("neuron")) c.neuron = parse_neuron(obj["neuron"], join(path, "neuron"));
    return c;
}

SweepAxis parse_axis(const json& obj, const std::string& path) {
    check_object(obj, path);
    check_keys(obj, path, {"param", "lo", "hi", "count"});
    SweepAxis a;
    if (!obj.contains("param")) fail("required field missing", join(path, "param"));
    const std::string name = get_string(obj, path, "param", "");
    a.param = sweep_param_from_name(name);
    a.lo = require_double(obj, path, "lo");
    a.hi = require_double(obj, path, "hi");
    if (!obj.contains("count")) fail("required field missing", join(path, "count"));
    a.count = get_int(obj, path, "count", 0);
    return a;
}

json neuron_to_json(const NeuronParams& p) {
    return json{{"a", p.a},
                {"b", p.b},
                {"c", p.c},
                {"k0", p.k0},
                {"alpha", p.alpha},
                {"beta", p.beta},
                {"k1", p.k1},
                {"k2", p.k2},
                {"k", p.k},
                {"divergence_guard", p.divergence_guard}};
}

json sampen_to_json(const SampEnConfig& c) {
    return json{{"emb_dim", c.emb_dim}, {"r", c.r}};
}

json network_to_json(const NetworkConfig& c) {
    return json{
        {"n_nodes", c.n_nodes},
        {"r_neighbors", c.r_neighbors},
        {"sigma0", c.sigma0},
        {"mu0", c.mu0},
        {"d_sigma", c.d_sigma},
        {"d_mu", c.d_mu},
        {"p_sigma", c.p_sigma},
        {"p_mu", c.p_mu},
        {"noise_lo", c.noise_lo},
        {"noise_hi", c.noise_hi},
        {"n_total", c.n_total},
        {"n_transient", c.n_transient},
        {"seed", c.seed},
        {"gate_mode", c.gate_mode == GateMode::PerLink ? "per_link" : "layer_wide"},
        {"star_sign", c.star_sign == StarSign::Diffusive ? "diffusive" : "printed"},
        {"record_y", c.record_y},
        {"record_phi", c.record_phi},
        {"neuron", neuron_to_json(c.neuron)}};
}

json axis_to_json(const SweepAxis& a) {
    return json{{"param", sweep_param_name(a.param)}, {"lo", a.lo}, {"hi", a.hi},
                {"count", a.count}};
}

} // namespace

const char* run_mode_name(RunMode m) {
    switch (m) {
        case RunMode::SingleNeuron: return "single_neuron";
        case RunMode::Simulate: return "simulate";
        case RunMode::Sweep: return "sweep";
    }
    return "?";
}

void SingleNeuronConfig::validate() const {
    neuron.validate("neuron");
    if (!finite(init)) throw ConfigError("initial state must be finite", "init");
    if (n_total < 1) throw ConfigError("need at least 1 iteration", "n_total");
    if (n_transient < 0 || n_transient >= n_total)
        throw ConfigError("transient must lie in [0, n_total)", "n_transient");
    if (lyap_transient < 0)
        throw ConfigError("transient cannot be negative", "lyapunov.n_transient");
    if (lyap_sample < 1000)
        throw ConfigError("need at least 1000 sampling steps", "lyapunov.n_sample");
}

void RunConfig::validate() const {
    switch (mode) {
        case RunMode::SingleNeuron:
            single.validate();
            break;
        case RunMode::Simulate:
            network.validate();
            if (baseline_node < 1 || baseline_node > network.n_nodes)
                throw ConfigError("must name an existing node (1-based)", "baseline_node");
            break;
        case RunMode::Sweep:
            sweep.validate();
            if (baseline_node < 1 || baseline_node > network.n_nodes)
                throw ConfigError("must name an existing node (1-based)", "baseline_node");
            break;
    }
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what(), "");
    }
    check_object(root, "");

    RunConfig cfg;
    const std::string mode = get_string(root, "", "mode", "simulate");
    if (mode == "single_neuron")
        cfg.mode = RunMode::SingleNeuron;
    else if (mode == "simulate")
        cfg.mode = RunMode::Simulate;
    else if (mode == "sweep")
        cfg.mode = RunMode::Sweep;
    else
        fail("expected \"single_neuron\", \"simulate\" or \"sweep\"", "mode");

    if (cfg.mode == RunMode::SingleNeuron) {
        check_keys(root, "",
                   {"mode", "neuron", "init", "n_total", "n_transient", "lyapunov", "sampen"});
        if (root.contains("neuron")) cfg.single.neuron = parse_neuron(root["neuron"], "neuron");
        if (root.contains("init")) {
            const json& init = root["init"];
            check_object(init, "init");
            check_keys(init, "init", {"x", "y", "phi"});
            cfg.single.init.x = get_double(init, "init", "x", cfg.single.init.x);
            cfg.single.init.y = get_double(init, "init", "y", cfg.single.init.y);
            cfg.single.init.phi = get_double(init, "init", "phi", cfg.single.init.phi);
        }
        cfg.single.n_total = get_long(root, "", "n_total", cfg.single.n_total);
        cfg.single.n_transient = get_long(root, "", "n_transient", cfg.single.n_transient);
        if (root.contains("lyapunov")) {
            const json& ly = root["lyapunov"];
            check_object(ly, "lyapunov");
            check_keys(ly, "lyapunov", {"n_transient", "n_sample"});
            cfg.single.lyap_transient =
                get_long(ly, "lyapunov", "n_transient", cfg.single.lyap_transient);
            cfg.single.lyap_sample = get_long(ly, "lyapunov", "n_sample", cfg.single.lyap_sample);
        }
        if (root.contains("sampen")) cfg.sampen = parse_sampen(root["sampen"], "sampen");
        return cfg;
    }

    if (cfg.mode == RunMode::Simulate) {
        check_keys(root, "", {"mode", "network", "baseline_node", "sampen", "write_trajectory"});
    } else {
        check_keys(root, "", {"mode", "network", "baseline_node", "sampen", "sweep"});
    }
    if (!root.contains("network")) fail("required section missing", "network");
    cfg.network = parse_network(root["network"], "network");
    cfg.baseline_node = get_int(root, "", "baseline_node", cfg.baseline_node);
    if (root.contains("sampen")) cfg.sampen = parse_sampen(root["sampen"], "sampen");
    cfg.write_trajectory = get_bool(root, "", "write_trajectory", cfg.write_trajectory);

    if (cfg.mode == RunMode::Sweep) {
        if (!root.contains("sweep")) fail("required section missing", "sweep");
        const json& sw = root["sweep"];
        check_object(sw, "sweep");
        check_keys(sw, "sweep",
                   {"axis1", "axis2", "samples_per_cell", "threads", "keep_last_instance"});
        if (!sw.contains("axis1")) fail("required field missing", "sweep.axis1");
        cfg.sweep.axis1 = parse_axis(sw["axis1"], "sweep.axis1");
        if (sw.contains("axis2")) cfg.sweep.axis2 = parse_axis(sw["axis2"], "sweep.axis2");
        cfg.sweep.samples_per_cell =
            get_int(sw, "sweep", "samples_per_cell", cfg.sweep.samples_per_cell);
        cfg.sweep.threads = get_int(sw, "sweep", "threads", cfg.sweep.threads);
        cfg.sweep.keep_last_instance =
            get_bool(sw, "sweep", "keep_last_instance", cfg.sweep.keep_last_instance);
        cfg.sweep.base = cfg.network;
        cfg.sweep.sampen = cfg.sampen;
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", "");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    json root;
    root["mode"] = run_mode_name(cfg.mode);
    if (cfg.mode == RunMode::SingleNeuron) {
        root["neuron"] = neuron_to_json(cfg.single.neuron);
        root["init"] = json{{"x", cfg.single.init.x},
                            {"y", cfg.single.init.y},
                            {"phi", cfg.single.init.phi}};
        root["n_total"] = cfg.single.n_total;
        root["n_transient"] = cfg.single.n_transient;
        root["lyapunov"] = json{{"n_transient", cfg.single.lyap_transient},
                                {"n_sample", cfg.single.lyap_sample}};
        root["sampen"] = sampen_to_json(cfg.sampen);
    } else {
        root["network"] = network_to_json(cfg.network);
        root["baseline_node"] = cfg.baseline_node;
        root["sampen"] = sampen_to_json(cfg.sampen);
        if (cfg.mode == RunMode::Simulate) {
            root["write_trajectory"] = cfg.write_trajectory;
        } else {
            json sw;
            sw["axis1"] = axis_to_json(cfg.sweep.axis1);
            if (cfg.sweep.axis2) sw["axis2"] = axis_to_json(*cfg.sweep.axis2);
            sw["samples_per_cell"] = cfg.sweep.samples_per_cell;
            sw["threads"] = cfg.sweep.threads;
            sw["keep_last_instance"] = cfg.sweep.keep_last_instance;
            root["sweep"] = sw;
        }
    }
    return root.dump(2) + "\n";
}

void save_config_file(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write config file '" + path + "'", "");
    out << serialize_config(cfg);
}

} // namespace ringstar
