#include "ringstar/neuron.hpp"

#include <cmath>

namespace ringstar {

void NeuronParams::validate(const std::string& field_prefix) const {
    auto f = [&](const char* name) { return field_prefix + "." + name; };
    const struct { const char* name; double v; } entries[] = {
        {"a", a}, {"b", b}, {"c", c}, {"k0", k0}, {"alpha", alpha},
        {"beta", beta}, {"k1", k1}, {"k2", k2}, {"k", k},
        {"divergence_guard", divergence_guard},
    };
    for (const auto& e : entries) {
        if (!std::isfinite(e.v))
            throw ConfigError("must be finite", f(e.name));
    }
    if (a >= 1.0)
        throw ConfigError("recovery time constant must satisfy a < 1", f("a"));
    if (b >= 1.0)
        throw ConfigError("activation dependence must satisfy b < 1", f("b"));
    if (divergence_guard <= 0.0)
        throw ConfigError("must be positive", f("divergence_guard"));
}

std::vector<std::string> NeuronParams::range_warnings(const std::string& field_prefix) const {
    std::vector<std::string> w;
    if (k < -1.0 || k > 4.0)
        w.push_back(field_prefix + ".k = " + std::to_string(k) +
                    " outside the studied range [-1, 4]");
    return w;
}

double memconductance(double phi, const NeuronParams& p) {
    return p.alpha + 3.0 * p.beta * phi * phi;
}

NeuronState step_unchecked(const NeuronState& s, const NeuronParams& p) {
    NeuronState n;
    n.x = s.x * s.x * std::exp(s.y - s.x) + p.k0 + p.k * s.x * memconductance(s.phi, p);
    n.y = p.a * s.y - p.b * s.x + p.c;
    n.phi = p.k1 * s.x - p.k2 * s.phi;
    return n;
}

NeuronState step(const NeuronState& s, const NeuronParams& p) {
    NeuronState n = step_unchecked(s, p);
    if (!finite(n) || std::fabs(n.x) > p.divergence_guard)
        throw DivergenceError("neuron state diverged");
    return n;
}

Mat3 jacobian(const NeuronState& s, const NeuronParams& p) {
    const double e = std::exp(s.y - s.x);
    Mat3 j{};
    j[0][0] = s.x * e * (2.0 - s.x) + p.k * memconductance(s.phi, p);
    j[0][1] = s.x * s.x * e;
    j[0][2] = 6.0 * p.k * p.beta * s.x * s.phi;
    j[1][0] = -p.b;
    j[1][1] = p.a;
    j[1][2] = 0.0;
    j[2][0] = p.k1;
    j[2][1] = 0.0;
    j[2][2] = -p.k2;
    return j;
}

} // namespace ringstar
