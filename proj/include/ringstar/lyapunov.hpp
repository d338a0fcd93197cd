#pragma once

// Lyapunov spectrum of a 3-d discrete map by QR frame propagation: an
// orthonormal frame is pushed through the Jacobian each step and
// re-orthonormalized; the exponents are the time averages of log diag(R).

#include <array>
#include <functional>

#include "ringstar/neuron.hpp"

namespace ringstar {

struct LyapunovResult {
    std::array<double, 3> exponents{}; // sorted descending
    double max_exponent() const { return exponents[0]; }
};

using StepFn = std::function<NeuronState(const NeuronState&)>;
using JacobianFn = std::function<Mat3(const NeuronState&)>;

// Generic engine. step_fn advances the state, jac_fn evaluates the Jacobian
// at the pre-step state. Exposing the pair lets tests substitute exactly
// solvable linear maps. Requires n_transient >= 0, n_sample >= 1.
LyapunovResult lyapunov_spectrum(NeuronState initial, const StepFn& step_fn,
                                 const JacobianFn& jac_fn, long n_transient,
                                 long n_sample);

// Spectrum of the neuron map. Enforces n_sample >= 1000 (shorter averages
// are not meaningful for this map). Deterministic given arguments.
LyapunovResult lyapunov_spectrum(const NeuronState& initial, const NeuronParams& p,
                                 long n_transient, long n_sample);

// Leading exponent only.
double max_lyapunov(const NeuronState& initial, const NeuronParams& p,
                    long n_transient, long n_sample);

} // namespace ringstar
