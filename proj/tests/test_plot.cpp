#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ringstar/plot.hpp"

using namespace ringstar;
namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::tuple<int, int, int> key(Rgb c) { return {c.r, c.g, c.b}; }

bool same(Rgb a, Rgb b) { return key(a) == key(b); }

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() /
                     ("ringstar_plot_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

int count_color(const Image& img, Rgb c) {
    int n = 0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (same(img.get(x, y), c)) ++n;
    return n;
}

} // namespace

TEST_CASE("viridis hits its anchor colors and clamps the ends") {
    CHECK(same(viridis(0.0), Rgb{68, 1, 84}));
    CHECK(same(viridis(1.0), Rgb{253, 231, 37}));
    CHECK(same(viridis(-3.0), viridis(0.0)));
    CHECK(same(viridis(7.0), viridis(1.0)));
    CHECK(same(viridis(kNaN), Rgb{200, 200, 200}));
    // Interior samples move monotonically away from the ends.
    const Rgb mid = viridis(0.5);
    CHECK_FALSE(same(mid, viridis(0.0)));
    CHECK_FALSE(same(mid, viridis(1.0)));
}

TEST_CASE("regime colors are the documented convention and all distinct") {
    CHECK(same(regime_color(Regime::Solitary), Rgb{214, 39, 40}));
    CHECK(same(regime_color(Regime::Intermediate), Rgb{44, 160, 44}));
    CHECK(same(regime_color(Regime::Coherent), Rgb{31, 119, 180}));
    CHECK(same(regime_color(Regime::OutOfRange), Rgb{255, 127, 14}));
    CHECK(same(regime_color(Regime::Undefined), Rgb{127, 127, 127}));
    std::set<std::tuple<int, int, int>> seen;
    for (Regime r : {Regime::Solitary, Regime::Intermediate, Regime::Coherent,
                     Regime::OutOfRange, Regime::Undefined})
        seen.insert(key(regime_color(r)));
    CHECK(seen.size() == 5);
}

TEST_CASE("draw_text paints glyph pixels inside a 5x7 box per character") {
    Image img(64, 16, {255, 255, 255});
    const Rgb ink{0, 0, 0};
    draw_text(img, 2, 3, "a", ink);
    int painted = 0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (same(img.get(x, y), ink)) {
                ++painted;
                CHECK(x >= 2);
                CHECK(x < 2 + 5);
                CHECK(y >= 3);
                CHECK(y < 3 + 7);
            }
    CHECK(painted > 0);

    // Uppercase is folded onto the same glyph as lowercase.
    Image lower(16, 16), upper(16, 16);
    draw_text(lower, 1, 1, "k", ink);
    draw_text(upper, 1, 1, "K", ink);
    CHECK(lower.pixels == upper.pixels);

    // Unknown characters render as blanks but advance the cursor.
    Image blank(32, 16, {255, 255, 255});
    draw_text(blank, 1, 1, "\x01\x02", ink);
    CHECK(count_color(blank, ink) == 0);

    // Clipping: drawing off the edge must not crash or write out of range.
    draw_text(img, -4, -4, "edge", ink);
    draw_text(img, 62, 14, "edge", ink, 3);
}

TEST_CASE("scatter and line plots produce framed images containing the data color") {
    std::vector<ScatterPoint> pts;
    const Rgb red{214, 39, 40};
    for (int i = 0; i < 20; ++i)
        pts.push_back({0.1 * i, std::sin(0.4 * i), red});
    const Image img = plot_scatter(pts, "demo scatter", "x axis", "y axis");
    CHECK(img.width > 100);
    CHECK(img.height > 100);
    CHECK(static_cast<std::size_t>(img.width) * img.height * 3 == img.pixels.size());
    CHECK(count_color(img, red) >= 20); // markers visible

    std::vector<double> xs, ys;
    for (int i = 0; i < 50; ++i) {
        xs.push_back(i);
        ys.push_back(i * i);
    }
    const Image line = plot_line(xs, ys, "demo line", "n", "value");
    CHECK(line.width > 100);
    CHECK(static_cast<std::size_t>(line.width) * line.height * 3 == line.pixels.size());

    // Degenerate inputs should still return a valid canvas.
    const Image empty = plot_scatter({}, "empty", "x", "y");
    CHECK(empty.width > 0);
    const Image flat = plot_line({1.0, 2.0}, {5.0, 5.0}, "flat", "x", "y");
    CHECK(flat.width > 0);
}

TEST_CASE("heatmap paints low cells with the low color and NaN cells gray") {
    // 2x2 grid: values 0 and 1 map to the scale ends, one NaN cell.
    const std::vector<double> cells{0.0, 1.0, kNaN, 0.5};
    const Image img =
        plot_heatmap(cells, 2, 2, {0.0, 1.0}, {0.0, 1.0}, "hm", "c", "r");
    CHECK(img.width > 100);
    CHECK(count_color(img, viridis(0.0)) > 50);  // low end present (cell + colorbar)
    CHECK(count_color(img, Rgb{160, 160, 160}) > 50); // NaN cell grey
    // The colorbar always spans the full scale, so the top color exists too.
    CHECK(count_color(img, viridis(1.0)) > 50);

    // All-NaN grid must not divide by zero.
    const Image allnan = plot_heatmap({kNaN, kNaN}, 2, 1, {0.0, 1.0}, {0.0}, "n", "c", "r");
    CHECK(allnan.width > 0);

    // +inf lands on the top of the scale rather than poisoning it.
    const Image withinf = plot_heatmap({0.0, std::numeric_limits<double>::infinity()},
                                       2, 1, {0.0, 1.0}, {0.0}, "i", "c", "r");
    CHECK(count_color(withinf, viridis(1.0)) > 0);
}

TEST_CASE("spatiotemporal raster covers every node row") {
    TrajectoryBlock traj;
    traj.n_nodes = 5;
    traj.n_kept = 40;
    traj.x.resize(5 * 40);
    for (int m = 0; m < 5; ++m)
        for (long t = 0; t < 40; ++t)
            traj.x[m * 40 + t] = std::sin(0.2 * t + m);
    const Image img = plot_spatiotemporal(traj, 100, "field");
    CHECK(img.width > 100);
    CHECK(img.height > 100);
    CHECK(static_cast<std::size_t>(img.width) * img.height * 3 == img.pixels.size());
}

TEST_CASE("write_png emits a decodable PNG signature and rejects bad paths") {
    TempDir tmp;
    Image img(17, 9, {10, 20, 30});
    img.set(3, 4, {200, 100, 50});
    const std::string path = tmp.file("img.png");
    write_png(img, path);

    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    unsigned char sig[8] = {};
    in.read(reinterpret_cast<char*>(sig), 8);
    const unsigned char expected[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    for (int i = 0; i < 8; ++i) CHECK(sig[i] == expected[i]);
    CHECK(fs::file_size(path) > 8);

    CHECK_THROWS_AS(write_png(img, "/nonexistent_dir_zz/out.png"), std::runtime_error);
}

TEST_CASE("Image::set clips out-of-range writes and get reads back what set wrote") {
    Image img(4, 3);
    img.set(-1, 0, {1, 2, 3});
    img.set(0, -1, {1, 2, 3});
    img.set(4, 0, {1, 2, 3});
    img.set(0, 3, {1, 2, 3});
    img.set(2, 1, {9, 8, 7});
    CHECK(same(img.get(2, 1), Rgb{9, 8, 7}));
    CHECK(same(img.get(0, 0), Rgb{255, 255, 255}));
}
