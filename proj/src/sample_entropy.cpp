#include "ringstar/sample_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ringstar {

namespace {

void check_args(const std::vector<double>& series, const SampEnConfig& cfg) {
    if (cfg.emb_dim < 1)
        throw std::invalid_argument("emb_dim must be at least 1");
    if (static_cast<long>(series.size()) < cfg.emb_dim + 2)
        throw TooShort("series of length " + std::to_string(series.size()) +
                       " too short for emb_dim " + std::to_string(cfg.emb_dim) +
                       " (need at least emb_dim + 2 samples)");
}

} // namespace

double SampEnCounts::value() const {
    if (a == 0 || b == 0) return std::numeric_limits<double>::infinity();
    return -std::log(static_cast<double>(a) / static_cast<double>(b));
}

double resolve_tolerance(const std::vector<double>& series, const SampEnConfig& cfg) {
    if (series.empty()) throw TooShort("empty series");
    if (cfg.r > 0.0) {
        if (!std::isfinite(cfg.r)) throw ConfigError("tolerance must be finite", "sampen.r");
        return cfg.r;
    }
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(series.size());
    double var = 0.0;
    for (double v : series) {
        const double d = v - mean;
        var += d * d;
    }
    var /= static_cast<double>(series.size()); // population convention
    const double r = 0.2 * std::sqrt(var);
    if (!(r > 0.0))
        throw DegenerateSeries("constant series: relative tolerance resolves to 0");
    return r;
}

SampEnCounts sample_entropy_bruteforce(const std::vector<double>& series,
                                       const SampEnConfig& cfg) {
    check_args(series, cfg);
    const int m = cfg.emb_dim;
    const double r = resolve_tolerance(series, cfg);
    const long nt = static_cast<long>(series.size()) - m;
    const double* s = series.data();

    SampEnCounts c;
    for (long i = 0; i < nt; ++i) {
        for (long j = i + 1; j < nt; ++j) {
            bool match = true;
            for (int d = 0; d < m; ++d) {
                if (!(std::fabs(s[i + d] - s[j + d]) < r)) {
                    match = false;
                    break;
                }
            }
            if (!match) continue;
            ++c.b;
            if (std::fabs(s[i + m] - s[j + m]) < r) ++c.a;
        }
    }
    return c;
}

SampEnCounts sample_entropy_counts(const std::vector<double>& series,
                                   const SampEnConfig& cfg) {
    check_args(series, cfg);
    const int m = cfg.emb_dim;
    const double r = resolve_tolerance(series, cfg);
    const long nt = static_cast<long>(series.size()) - m;
    const double* s = series.data();

    // Sort template starts by first coordinate; only pairs whose first
    // coordinates lie within r of each other can match, so a sliding window
    // over the sorted order enumerates exactly the candidate pairs.
    std::vector<long> idx(nt);
    std::iota(idx.begin(), idx.end(), 0L);
    std::sort(idx.begin(), idx.end(), [s](long x, long y) {
        return s[x] != s[y] ? s[x] < s[y] : x < y;
    });

    SampEnCounts c;
    std::size_t lo = 0;
    for (std::size_t p = 0; p < idx.size(); ++p) {
        const long j = idx[p];
        const double xp = s[j];
        while (s[idx[lo]] <= xp - r) ++lo; // outside window: difference >= r
        for (std::size_t w = lo; w < p; ++w) {
            const long i = idx[w];
            bool match = true;
            for (int d = 1; d < m; ++d) {
                if (!(std::fabs(s[i + d] - s[j + d]) < r)) {
                    match = false;
                    break;
                }
            }
            if (!match) continue;
            ++c.b;
            if (std::fabs(s[i + m] - s[j + m]) < r) ++c.a;
        }
    }
    return c;
}

double sample_entropy(const std::vector<double>& series, const SampEnConfig& cfg) {
    return sample_entropy_counts(series, cfg).value();
}

} // namespace ringstar
