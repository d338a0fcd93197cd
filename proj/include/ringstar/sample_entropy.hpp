#pragma once

// Sample entropy with Chebyshev distance and strict < r matching:
//
//   SE = -ln(A / B)
//
// where B counts pairs of matching templates of length m and A pairs of
// matching templates of length m+1, both over the same n-m template starts,
// self-matches excluded, each unordered pair counted once. A = 0 yields
// +infinity. Tolerance defaults to 0.2 x population standard deviation.

#include <cstdint>
#include <vector>

#include "ringstar/errors.hpp"

namespace ringstar {

struct SampEnConfig {
    int emb_dim = 2; // template length m
    double r = 0.0;  // absolute tolerance; <= 0 selects 0.2 * std(series)
};

struct SampEnCounts {
    std::uint64_t a = 0; // (m+1)-template matching pairs
    std::uint64_t b = 0; // m-template matching pairs

    // -ln(a/b); +infinity when a == 0 (b >= a always holds).
    double value() const;
};

// cfg.r if positive, else 0.2 * population std of the series. Throws
// DegenerateSeries if the resolved radius is not positive (constant series).
double resolve_tolerance(const std::vector<double>& series, const SampEnConfig& cfg);

// Exact pair counts via first-coordinate sort plus sliding window; identical
// to the brute-force counts on every input. Throws TooShort if the series
// has fewer than emb_dim + 2 samples.
SampEnCounts sample_entropy_counts(const std::vector<double>& series,
                                   const SampEnConfig& cfg);

// Reference O(T^2) double loop, the defining computation.
SampEnCounts sample_entropy_bruteforce(const std::vector<double>& series,
                                       const SampEnConfig& cfg);

double sample_entropy(const std::vector<double>& series, const SampEnConfig& cfg = {});

} // namespace ringstar
