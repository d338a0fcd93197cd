#include "ringstar/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace ringstar {

namespace {

constexpr Rgb kBlack{0, 0, 0};
constexpr Rgb kGray{200, 200, 200};
constexpr Rgb kDivergedGray{160, 160, 160};

// 5x7 glyphs, one byte per column, bit 0 = top row.
struct Glyph {
    char ch;
    unsigned char col[5];
};

constexpr Glyph kFont[] = {
    {' ', {0x00, 0x00, 0x00, 0x00, 0x00}}, {'(', {0x00, 0x1C, 0x22, 0x41, 0x00}},
    {')', {0x00, 0x41, 0x22, 0x1C, 0x00}}, {'+', {0x08, 0x08, 0x3E, 0x08, 0x08}},
    {',', {0x00, 0x50, 0x30, 0x00, 0x00}}, {'-', {0x08, 0x08, 0x08, 0x08, 0x08}},
    {'.', {0x00, 0x60, 0x60, 0x00, 0x00}}, {'/', {0x20, 0x10, 0x08, 0x04, 0x02}},
    {'0', {0x3E, 0x51, 0x49, 0x45, 0x3E}}, {'1', {0x00, 0x42, 0x7F, 0x40, 0x00}},
    {'2', {0x42, 0x61, 0x51, 0x49, 0x46}}, {'3', {0x21, 0x41, 0x45, 0x4B, 0x31}},
    {'4', {0x18, 0x14, 0x12, 0x7F, 0x10}}, {'5', {0x27, 0x45, 0x45, 0x45, 0x39}},
    {'6', {0x3C, 0x4A, 0x49, 0x49, 0x30}}, {'7', {0x01, 0x71, 0x09, 0x05, 0x03}},
    {'8', {0x36, 0x49, 0x49, 0x49, 0x36}}, {'9', {0x06, 0x49, 0x49, 0x29, 0x1E}},
    {':', {0x00, 0x36, 0x36, 0x00, 0x00}}, {'=', {0x14, 0x14, 0x14, 0x14, 0x14}},
    {'_', {0x40, 0x40, 0x40, 0x40, 0x40}}, {'a', {0x20, 0x54, 0x54, 0x54, 0x78}},
    {'b', {0x7F, 0x48, 0x44, 0x44, 0x38}}, {'c', {0x38, 0x44, 0x44, 0x44, 0x20}},
    {'d', {0x38, 0x44, 0x44, 0x48, 0x7F}}, {'e', {0x38, 0x54, 0x54, 0x54, 0x18}},
    {'f', {0x08, 0x7E, 0x09, 0x01, 0x02}}, {'g', {0x0C, 0x52, 0x52, 0x52, 0x3E}},
    {'h', {0x7F, 0x08, 0x04, 0x04, 0x78}}, {'i', {0x00, 0x44, 0x7D, 0x40, 0x00}},
    {'j', {0x20, 0x40, 0x44, 0x3D, 0x00}}, {'k', {0x7F, 0x10, 0x28, 0x44, 0x00}},
    {'l', {0x00, 0x41, 0x7F, 0x40, 0x00}}, {'m', {0x7C, 0x04, 0x18, 0x04, 0x78}},
    {'n', {0x7C, 0x08, 0x04, 0x04, 0x78}}, {'o', {0x38, 0x44, 0x44, 0x44, 0x38}},
    {'p', {0x7C, 0x14, 0x14, 0x14, 0x08}}, {'q', {0x08, 0x14, 0x14, 0x18, 0x7C}},
    {'r', {0x7C, 0x08, 0x04, 0x04, 0x08}}, {'s', {0x48, 0x54, 0x54, 0x54, 0x20}},
    {'t', {0x04, 0x3F, 0x44, 0x40, 0x20}}, {'u', {0x3C, 0x40, 0x40, 0x20, 0x7C}},
    {'v', {0x1C, 0x20, 0x40, 0x20, 0x1C}}, {'w', {0x3C, 0x40, 0x30, 0x40, 0x3C}},
    {'x', {0x44, 0x28, 0x10, 0x28, 0x44}}, {'y', {0x0C, 0x50, 0x50, 0x50, 0x3C}},
    {'z', {0x44, 0x64, 0x54, 0x4C, 0x44}},
};

const unsigned char* glyph_for(char c) {
    const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (const Glyph& g : kFont)
        if (g.ch == lc) return g.col;
    return kFont[0].col; // blank
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

int text_width(const std::string& s, int scale) {
    return static_cast<int>(s.size()) * 6 * scale;
}

void draw_hline(Image& img, int x0, int x1, int y, Rgb c) {
    for (int x = std::min(x0, x1); x <= std::max(x0, x1); ++x) img.set(x, y, c);
}

void draw_vline(Image& img, int x, int y0, int y1, Rgb c) {
    for (int y = std::min(y0, y1); y <= std::max(y0, y1); ++y) img.set(x, y, c);
}

void draw_segment(Image& img, int x0, int y0, int x1, int y1, Rgb c) {
    // Bresenham
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
        img.set(x0, y0, c);
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

void fill_rect(Image& img, int x0, int y0, int w, int h, Rgb c) {
    for (int y = y0; y < y0 + h; ++y)
        for (int x = x0; x < x0 + w; ++x) img.set(x, y, c);
}

void draw_marker(Image& img, int cx, int cy, int half, Rgb c) {
    if (half <= 0) {
        img.set(cx, cy, c);
        return;
    }
    fill_rect(img, cx - half, cy - half, 2 * half + 1, 2 * half + 1, c);
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range padded(double lo, double hi, double frac = 0.05) {
    if (!(std::isfinite(lo) && std::isfinite(hi))) return {0.0, 1.0};
    if (lo > hi) std::swap(lo, hi);
    double pad = (hi - lo) * frac;
    if (pad <= 0.0) pad = std::max(1.0, std::fabs(lo)) * 0.05;
    return {lo - pad, hi + pad};
}

// Axis frame mapping data coordinates to pixels (y grows upward in data).
struct Frame {
    Image img;
    int x0, y0, x1, y1; // pixel bounds of the plot area
    Range rx, ry;

    Frame(int plot_w, int plot_h, int right_margin, const std::string& title,
          const std::string& xlabel, const std::string& ylabel, Range xr, Range yr)
        : img(64 + plot_w + right_margin, 30 + plot_h + 42), rx(xr), ry(yr) {
        x0 = 64;
        y0 = 30;
        x1 = x0 + plot_w - 1;
        y1 = y0 + plot_h - 1;
        draw_text(img, x0, 10, title, kBlack);
        draw_text(img, 4, 10, ylabel, kBlack);
        const int xl = x0 + (plot_w - text_width(xlabel, 1)) / 2;
        draw_text(img, xl, y1 + 28, xlabel, kBlack);
        draw_hline(img, x0, x1, y1 + 1, kBlack);
        draw_vline(img, x0 - 1, y0, y1, kBlack);
        draw_hline(img, x0, x1, y0 - 1, kBlack);
        draw_vline(img, x1 + 1, y0, y1, kBlack);
    }

    int px(double x) const {
        const double t = (x - rx.lo) / (rx.hi - rx.lo);
        return x0 + static_cast<int>(std::lround(t * (x1 - x0)));
    }
    int py(double y) const {
        const double t = (y - ry.lo) / (ry.hi - ry.lo);
        return y1 - static_cast<int>(std::lround(t * (y1 - y0)));
    }

    void ticks() {
        for (int i = 0; i <= 4; ++i) {
            const double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
            const int tx = px(fx);
            draw_vline(img, tx, y1 + 2, y1 + 5, kBlack);
            const std::string lab = tick_label(fx);
            draw_text(img, tx - text_width(lab, 1) / 2, y1 + 8, lab, kBlack);

            const double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
            const int ty = py(fy);
            draw_hline(img, x0 - 5, x0 - 2, ty, kBlack);
            const std::string laby = tick_label(fy);
            draw_text(img, x0 - 8 - text_width(laby, 1), ty - 3, laby, kBlack);
        }
    }
};

void draw_colorbar(Image& img, int x, int y0, int y1, double vmin, double vmax) {
    const int h = y1 - y0;
    for (int y = y0; y <= y1; ++y) {
        const double t = static_cast<double>(y1 - y) / std::max(1, h);
        const Rgb c = viridis(t);
        for (int dx = 0; dx < 12; ++dx) img.set(x + dx, y, c);
    }
    for (int i = 0; i <= 4; ++i) {
        const double v = vmin + (vmax - vmin) * i / 4.0;
        const int ty = y1 - static_cast<int>(std::lround(static_cast<double>(h) * i / 4.0));
        draw_hline(img, x + 12, x + 14, ty, kBlack);
        draw_text(img, x + 16, ty - 3, tick_label(v), kBlack);
    }
}

Range finite_range(const std::vector<double>& v) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double x : v) {
        if (!std::isfinite(x)) continue;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (!(lo <= hi)) return {0.0, 1.0};
    if (lo == hi) return {lo - 0.5, hi + 0.5};
    return {lo, hi};
}

} // namespace

Rgb viridis(double t) {
    if (std::isnan(t)) return kGray;
    t = std::clamp(t, 0.0, 1.0);
    static constexpr Rgb anchors[5] = {
        {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
    const double s = t * 4.0;
    const int i = std::min(3, static_cast<int>(s));
    const double f = s - i;
    auto mix = [f](std::uint8_t a, std::uint8_t b) {
        return static_cast<std::uint8_t>(std::lround(a + (b - a) * f));
    };
    return {mix(anchors[i].r, anchors[i + 1].r), mix(anchors[i].g, anchors[i + 1].g),
            mix(anchors[i].b, anchors[i + 1].b)};
}

Rgb regime_color(Regime r) {
    switch (r) {
        case Regime::Solitary: return {214, 39, 40};
        case Regime::Intermediate: return {44, 160, 44};
        case Regime::Coherent: return {31, 119, 180};
        case Regime::OutOfRange: return {255, 127, 14};
        case Regime::Undefined: return {127, 127, 127};
    }
    return kBlack;
}

void draw_text(Image& img, int x, int y, const std::string& text, Rgb color, int scale) {
    int cx = x;
    for (char ch : text) {
        const unsigned char* cols = glyph_for(ch);
        for (int c = 0; c < 5; ++c) {
            for (int r = 0; r < 7; ++r) {
                if (!(cols[c] >> r & 1)) continue;
                fill_rect(img, cx + c * scale, y + r * scale, scale, scale, color);
            }
        }
        cx += 6 * scale;
    }
}

Image plot_scatter(const std::vector<ScatterPoint>& pts, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel, int marker) {
    std::vector<double> xs, ys;
    xs.reserve(pts.size());
    ys.reserve(pts.size());
    for (const auto& p : pts) {
        if (std::isfinite(p.x) && std::isfinite(p.y)) {
            xs.push_back(p.x);
            ys.push_back(p.y);
        }
    }
    const Range frx = finite_range(xs), fry = finite_range(ys);
    Frame fr(480, 360, 16, title, xlabel, ylabel, padded(frx.lo, frx.hi),
             padded(fry.lo, fry.hi));
    fr.ticks();
    for (const auto& p : pts) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
        draw_marker(fr.img, fr.px(p.x), fr.py(p.y), marker / 2, p.color);
    }
    return std::move(fr.img);
}

Image plot_line(const std::vector<double>& xs, const std::vector<double>& ys,
                const std::string& title, const std::string& xlabel,
                const std::string& ylabel) {
    const Range frx = finite_range(xs), fry = finite_range(ys);
    Frame fr(480, 360, 16, title, xlabel, ylabel, padded(frx.lo, frx.hi),
             padded(fry.lo, fry.hi));
    fr.ticks();
    const std::size_t n = std::min(xs.size(), ys.size());
    bool have_prev = false;
    int px = 0, py = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
            have_prev = false;
            continue;
        }
        const int cx = fr.px(xs[i]), cy = fr.py(ys[i]);
        if (have_prev)
            draw_segment(fr.img, px, py, cx, cy, {31, 119, 180});
        else
            fr.img.set(cx, cy, {31, 119, 180});
        px = cx;
        py = cy;
        have_prev = true;
    }
    return std::move(fr.img);
}

Image plot_heatmap(const std::vector<double>& cells, int n_cols, int n_rows,
                   const std::vector<double>& col_values,
                   const std::vector<double>& row_values, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel) {
    const int cw = std::max(2, std::min(44, 480 / std::max(1, n_cols)));
    const int ch = std::max(2, std::min(44, 400 / std::max(1, n_rows)));
    const int plot_w = cw * n_cols, plot_h = ch * n_rows;

    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -std::numeric_limits<double>::infinity();
    for (double v : cells) {
        if (!std::isfinite(v)) continue;
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (!(vmin <= vmax)) {
        vmin = 0.0;
        vmax = 1.0;
    } else if (vmin == vmax) {
        vmin -= 0.5;
        vmax += 0.5;
    }

    const Range xr = col_values.empty() ? Range{0, 1}
                                        : Range{col_values.front(), col_values.back()};
    const Range yr = row_values.empty() ? Range{0, 1}
                                        : Range{row_values.front(), row_values.back()};
    Frame fr(plot_w, plot_h, 84, title, xlabel, ylabel, xr, yr);
    for (int r = 0; r < n_rows; ++r) {
        for (int c = 0; c < n_cols; ++c) {
            const double v = cells[static_cast<std::size_t>(r) * n_cols + c];
            Rgb color;
            if (std::isnan(v))
                color = kDivergedGray;
            else if (std::isinf(v))
                color = viridis(v > 0 ? 1.0 : 0.0);
            else
                color = viridis((v - vmin) / (vmax - vmin));
            fill_rect(fr.img, fr.x0 + c * cw, fr.y1 + 1 - (r + 1) * ch, cw, ch, color);
        }
    }
    // ticks: label the first/last cell centers and 3 in between
    for (int i = 0; i <= 4; ++i) {
        if (n_cols > 1) {
            const int ci = static_cast<int>(std::lround((n_cols - 1) * i / 4.0));
            const int tx = fr.x0 + ci * cw + cw / 2;
            draw_vline(fr.img, tx, fr.y1 + 2, fr.y1 + 5, kBlack);
            const std::string lab = tick_label(col_values[ci]);
            draw_text(fr.img, tx - text_width(lab, 1) / 2, fr.y1 + 8, lab, kBlack);
        }
        if (n_rows > 1) {
            const int ri = static_cast<int>(std::lround((n_rows - 1) * i / 4.0));
            const int ty = fr.y1 - ri * ch - ch / 2;
            draw_hline(fr.img, fr.x0 - 5, fr.x0 - 2, ty, kBlack);
            const std::string lab = tick_label(row_values[ri]);
            draw_text(fr.img, fr.x0 - 8 - text_width(lab, 1), ty - 3, lab, kBlack);
        }
    }
    draw_colorbar(fr.img, fr.x1 + 14, fr.y0, fr.y1, vmin, vmax);
    return std::move(fr.img);
}

Image plot_spatiotemporal(const TrajectoryBlock& traj, long t_offset,
                          const std::string& title) {
    const int n = traj.n_nodes;
    const long T = traj.n_kept;
    const int target_w = 800;
    const long stride = std::max(1L, (T + target_w - 1) / target_w);
    const int n_cols = static_cast<int>((T + stride - 1) / stride);
    const int ch = std::max(1, std::min(8, 400 / std::max(1, n)));
    const int plot_w = n_cols, plot_h = ch * n;

    const Range vr = finite_range(traj.x);
    Frame fr(plot_w, plot_h, 84, title, "step", "node",
             {static_cast<double>(t_offset), static_cast<double>(t_offset + T - 1)},
             {1.0, static_cast<double>(n)});
    for (int m = 0; m < n; ++m) {
        const double* row = traj.x_row(m);
        for (int c = 0; c < n_cols; ++c) {
            const double v = row[std::min<long>(c * stride, T - 1)];
            const Rgb color = std::isfinite(v)
                                  ? viridis((v - vr.lo) / (vr.hi - vr.lo))
                                  : kDivergedGray;
            for (int dy = 0; dy < ch; ++dy)
                fr.img.set(fr.x0 + c, fr.y1 - m * ch - dy, color);
        }
    }
    fr.ticks();
    draw_colorbar(fr.img, fr.x1 + 14, fr.y0, fr.y1, vr.lo, vr.hi);
    return std::move(fr.img);
}

} // namespace ringstar
