#pragma once

// Flux-augmented Chialvo neuron map:
//
//   x(n+1) = x(n)^2 exp(y(n) - x(n)) + k0 + k x(n) M(phi(n))
//   y(n+1) = a y(n) - b x(n) + c
//   phi(n+1) = k1 x(n) - k2 phi(n)
//
// with memconductance M(phi) = alpha + 3 beta phi^2. Setting k = 0 recovers
// the original two-variable map in (x, y); phi then evolves passively.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ringstar/errors.hpp"

namespace ringstar {

struct NeuronParams {
    double a = 0.89;  // recovery time constant, a < 1
    double b = 0.6;   // activation dependence, b < 1
    double c = 0.28;  // recovery offset
    double k0 = 0.04; // additive perturbation
    double alpha = 0.1; // memconductance offset
    double beta = 0.2;  // memconductance curvature
    double k1 = 0.1;  // flux induction gain
    double k2 = 0.2;  // flux leakage
    double k = -1.0;  // electromagnetic flux coupling

    // |x| above this after a step counts as divergence.
    double divergence_guard = 1e6;

    // Hard invariants (finite, a < 1, b < 1, positive guard). Throws ConfigError.
    void validate(const std::string& field_prefix = "neuron") const;

    // Soft recommended-range checks (k in [-1, 4]); returned, not thrown.
    std::vector<std::string> range_warnings(const std::string& field_prefix = "neuron") const;
};

struct NeuronState {
    double x = 0.0;   // activation / membrane potential
    double y = 0.0;   // recovery
    double phi = 0.0; // magnetic flux
};

// Row-major 3x3 real matrix; m[row][col].
using Mat3 = std::array<std::array<double, 3>, 3>;

double memconductance(double phi, const NeuronParams& p);

// One map iteration without divergence checks. The network layer adds its
// coupling terms before deciding whether the combined update diverged.
NeuronState step_unchecked(const NeuronState& s, const NeuronParams& p);

// One map iteration; throws DivergenceError if the result is non-finite or
// |x'| exceeds the guard.
NeuronState step(const NeuronState& s, const NeuronParams& p);

// Analytic Jacobian of step at s:
//   row 0: ( x e^{y-x}(2-x) + k M(phi),  x^2 e^{y-x},  6 k beta x phi )
//   row 1: ( -b,  a,  0 )
//   row 2: ( k1,  0,  -k2 )
Mat3 jacobian(const NeuronState& s, const NeuronParams& p);

inline bool finite(const NeuronState& s) {
    return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.phi);
}

} // namespace ringstar
