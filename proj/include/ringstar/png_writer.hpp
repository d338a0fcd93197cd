#pragma once

// Minimal RGB8 raster and PNG file output (libpng).

#include <cstdint>
#include <string>
#include <vector>

namespace ringstar {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // 3 bytes per pixel, row-major

    Image() = default;
    Image(int w, int h, Rgb fill = {255, 255, 255});

    void set(int x, int y, Rgb c) {
        if (x < 0 || y < 0 || x >= width || y >= height) return;
        const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
        pixels[i] = c.r;
        pixels[i + 1] = c.g;
        pixels[i + 2] = c.b;
    }
    Rgb get(int x, int y) const {
        const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
        return {pixels[i], pixels[i + 1], pixels[i + 2]};
    }
};

// Throws std::runtime_error on I/O or encoder failure.
void write_png(const Image& img, const std::string& path);

} // namespace ringstar
