#pragma once

// Static raster figures: axis frames, 5x7 bitmap text, viridis heatmaps with
// colorbar, scatter and line plots, spatiotemporal rasters. Output is meant
// for quick inspection of runs, not publication typography.

#include <string>
#include <vector>

#include "ringstar/metrics.hpp"
#include "ringstar/network.hpp"
#include "ringstar/png_writer.hpp"

namespace ringstar {

// t clamped to [0,1]; NaN maps to gray.
Rgb viridis(double t);

// Regime color convention: solitary red, intermediate green, coherent blue,
// out-of-range orange, undefined gray.
Rgb regime_color(Regime r);

// 5x7 font, lowercase letters / digits / basic punctuation; uppercase input
// is lowered, unsupported characters render as blanks. (x, y) is the top-left
// corner of the first glyph.
void draw_text(Image& img, int x, int y, const std::string& text, Rgb color, int scale = 1);

struct ScatterPoint {
    double x = 0.0;
    double y = 0.0;
    Rgb color{31, 119, 180};
};

Image plot_scatter(const std::vector<ScatterPoint>& pts, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel, int marker = 2);

Image plot_line(const std::vector<double>& xs, const std::vector<double>& ys,
                const std::string& title, const std::string& xlabel,
                const std::string& ylabel);

// cells is row-major [n_rows][n_cols]; row 0 is drawn at the bottom. NaN
// cells render gray, +inf at the top of the color scale.
Image plot_heatmap(const std::vector<double>& cells, int n_cols, int n_rows,
                   const std::vector<double>& col_values,
                   const std::vector<double>& row_values, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel);

// x(t) of every node as a node-by-time raster; t_offset shifts the time
// axis labels (pass n_transient). Node axis uses 1-based ids.
Image plot_spatiotemporal(const TrajectoryBlock& traj, long t_offset,
                          const std::string& title);

} // namespace ringstar
