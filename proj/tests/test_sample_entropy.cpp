#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ringstar/rng.hpp"
#include "ringstar/sample_entropy.hpp"

using namespace ringstar;

namespace {

std::vector<double> random_series(std::uint64_t seed, int n, double lo, double hi) {
    std::vector<double> s(n);
    const CounterRng rng(seed);
    for (int i = 0; i < n; ++i) s[i] = rng.uniform(Draw::InitX, i, 0, lo, hi);
    return s;
}

} // namespace

TEST_CASE("hand-counted template matches on a periodic series") {
    // 1,2,3 repeated; m=1, r=0.5: only equal values match.
    // Template starts 0..7 -> values 1,2,3,1,2,3,1,2.
    // B: {0,3,6} x pairs = 3, {1,4,7} = 3, {2,5} = 1 -> 7.
    // Every such pair's successor pair also matches -> A = 7, SE = 0.
    const std::vector<double> s{1, 2, 3, 1, 2, 3, 1, 2, 3};
    SampEnConfig cfg;
    cfg.emb_dim = 1;
    cfg.r = 0.5;
    const SampEnCounts c = sample_entropy_counts(s, cfg);
    CHECK(c.b == 7);
    CHECK(c.a == 7);
    CHECK(sample_entropy(s, cfg) == 0.0);
    const SampEnCounts bf = sample_entropy_bruteforce(s, cfg);
    CHECK(bf.a == c.a);
    CHECK(bf.b == c.b);
}

TEST_CASE("a long period-2 signal carries no sample entropy") {
    std::vector<double> s;
    for (int i = 0; i < 400; ++i) s.push_back(i % 2 ? 1.2 : -0.4);
    SampEnConfig cfg; // emb_dim 2, relative tolerance
    CHECK(sample_entropy(s, cfg) == 0.0);
}

TEST_CASE("no (m+1)-matches yields an infinite value, not a crash") {
    SampEnConfig cfg;
    cfg.emb_dim = 1;
    cfg.r = 0.5;
    // B > 0 (three first-coordinate matches), A = 0 (successors far apart)
    const std::vector<double> s{0.0, 100.0, 0.1, 200.0, 0.2, 300.0};
    const SampEnCounts c = sample_entropy_counts(s, cfg);
    CHECK(c.b == 3);
    CHECK(c.a == 0);
    CHECK(std::isinf(sample_entropy(s, cfg)));

    // B = 0 as well: strictly increasing with gaps wider than r
    const std::vector<double> mono{0, 10, 20, 30, 40, 50};
    const SampEnCounts c2 = sample_entropy_counts(mono, cfg);
    CHECK(c2.b == 0);
    CHECK(std::isinf(sample_entropy(mono, cfg)));
}

TEST_CASE("optimized counts equal brute force across regimes") {
    SampEnConfig cfg;
    for (int m : {1, 2, 3}) {
        cfg.emb_dim = m;
        for (double r : {0.05, 0.2, 1.0}) {
            cfg.r = r;
            // white noise
            auto s = random_series(m * 10 + 1, 200, -1.0, 1.0);
            auto opt = sample_entropy_counts(s, cfg);
            auto bf = sample_entropy_bruteforce(s, cfg);
            CHECK(opt.a == bf.a);
            CHECK(opt.b == bf.b);
            // heavy ties: quantized integers
            for (double& v : s) v = std::floor(v * 3.0);
            opt = sample_entropy_counts(s, cfg);
            bf = sample_entropy_bruteforce(s, cfg);
            CHECK(opt.a == bf.a);
            CHECK(opt.b == bf.b);
        }
    }
}

TEST_CASE("relative tolerance uses 0.2 of the population deviation") {
    const std::vector<double> s{1.0, 3.0, 1.0, 3.0, 1.0, 3.0}; // std = 1
    SampEnConfig cfg;
    cfg.r = 0.0;
    CHECK(resolve_tolerance(s, cfg) == doctest::Approx(0.2).epsilon(1e-15));
    cfg.r = 0.7;
    CHECK(resolve_tolerance(s, cfg) == 0.7);
    cfg.r = -1.0; // any non-positive request means relative
    CHECK(resolve_tolerance(s, cfg) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("degenerate and undersized inputs raise typed errors") {
    SampEnConfig cfg;
    const std::vector<double> flat(50, 2.0);
    CHECK_THROWS_AS(sample_entropy(flat, cfg), DegenerateSeries);
    cfg.r = 0.1; // absolute tolerance sidesteps the degeneracy
    CHECK(sample_entropy(flat, cfg) == 0.0);

    cfg.emb_dim = 3;
    const std::vector<double> tiny{1.0, 2.0, 3.0, 4.0}; // needs >= 5
    CHECK_THROWS_AS(sample_entropy(tiny, cfg), TooShort);
    cfg.emb_dim = 0;
    CHECK_THROWS_AS(sample_entropy(tiny, cfg), std::invalid_argument);
}

TEST_CASE("match counts grow with the tolerance") {
    const auto s = random_series(77, 300, 0.0, 1.0);
    SampEnConfig narrow, wide;
    narrow.emb_dim = wide.emb_dim = 2;
    narrow.r = 0.05;
    wide.r = 0.2;
    const SampEnCounts cn = sample_entropy_counts(s, narrow);
    const SampEnCounts cw = sample_entropy_counts(s, wide);
    CHECK(cw.a >= cn.a);
    CHECK(cw.b >= cn.b);
    CHECK(cw.b > 0);
}

TEST_CASE("shuffling a regular signal raises its entropy") {
    std::vector<double> s;
    for (int i = 0; i < 300; ++i) s.push_back(std::sin(0.3 * i));
    SampEnConfig cfg;
    const double base = sample_entropy(s, cfg);

    const CounterRng rng(123);
    std::vector<double> above;
    for (int trial = 0; trial < 21; ++trial) {
        std::vector<double> sh = s;
        for (std::size_t i = sh.size() - 1; i > 0; --i) {
            const std::size_t j = rng.bits(Draw::CellSeed, trial, i) % (i + 1);
            std::swap(sh[i], sh[j]);
        }
        above.push_back(sample_entropy(sh, cfg));
    }
    std::sort(above.begin(), above.end());
    CHECK(above[above.size() / 2] > base); // median over 21 shuffles
}
