#include "ringstar/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ringstar {

namespace {

// Columns of q are the frame vectors. Orthonormalize them in place by
// modified Gram-Schmidt and return the diagonal of R (column norms after
// projection), kept positive by construction.
std::array<double, 3> qr_inplace(Mat3& q) {
    std::array<double, 3> rdiag{};
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < j; ++i) {
            double dot = 0.0;
            for (int r = 0; r < 3; ++r) dot += q[r][i] * q[r][j];
            for (int r = 0; r < 3; ++r) q[r][j] -= dot * q[r][i];
        }
        double norm2 = 0.0;
        for (int r = 0; r < 3; ++r) norm2 += q[r][j] * q[r][j];
        const double norm = std::sqrt(norm2);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw std::runtime_error("tangent frame collapsed during QR propagation");
        rdiag[j] = norm;
        for (int r = 0; r < 3; ++r) q[r][j] /= norm;
    }
    return rdiag;
}

Mat3 matmul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            c[i][j] = s;
        }
    return c;
}

constexpr Mat3 identity3() {
    Mat3 m{};
    m[0][0] = m[1][1] = m[2][2] = 1.0;
    return m;
}

} // namespace

LyapunovResult lyapunov_spectrum(NeuronState state, const StepFn& step_fn,
                                 const JacobianFn& jac_fn, long n_transient,
                                 long n_sample) {
    if (n_transient < 0)
        throw std::invalid_argument("n_transient must be nonnegative");
    if (n_sample < 1)
        throw std::invalid_argument("n_sample must be at least 1");

    Mat3 q = identity3();
    // Transient: advance state and keep the frame aligned with the current
    // expanding directions, without accumulating.
    for (long n = 0; n < n_transient; ++n) {
        q = matmul(jac_fn(state), q);
        qr_inplace(q);
        state = step_fn(state);
    }
    std::array<double, 3> sums{};
    for (long n = 0; n < n_sample; ++n) {
        q = matmul(jac_fn(state), q);
        const auto rdiag = qr_inplace(q);
        for (int i = 0; i < 3; ++i) sums[i] += std::log(rdiag[i]);
        state = step_fn(state);
    }
    LyapunovResult res;
    for (int i = 0; i < 3; ++i) res.exponents[i] = sums[i] / static_cast<double>(n_sample);
    std::sort(res.exponents.begin(), res.exponents.end(), std::greater<>());
    return res;
}

LyapunovResult lyapunov_spectrum(const NeuronState& initial, const NeuronParams& p,
                                 long n_transient, long n_sample) {
    p.validate();
    if (n_sample < 1000)
        throw ConfigError("n_sample must be at least 1000 for the neuron map", "n_sample");
    return lyapunov_spectrum(
        initial, [&p](const NeuronState& s) { return step(s, p); },
        [&p](const NeuronState& s) { return jacobian(s, p); }, n_transient, n_sample);
}

double max_lyapunov(const NeuronState& initial, const NeuronParams& p,
                    long n_transient, long n_sample) {
    return lyapunov_spectrum(initial, p, n_transient, n_sample).max_exponent();
}

} // namespace ringstar
