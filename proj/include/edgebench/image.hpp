#pragma once

#include <cstdint>
#include <vector>

namespace edgebench {

/// Row-major grid of real-valued intensities. Processing keeps intensities
/// as doubles throughout; quantization to 8 bits happens only at file output
/// (see quantize() and the PNM writer).
///
/// Images produced by the public filter/morphology operations stay inside
/// [0,255]. Detector internals reuse the container for signed responses.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0);

    std::size_t size() const { return pixels.size(); }
    std::size_t index(int x, int y) const { return std::size_t(y) * width + x; }
    double at(int x, int y) const { return pixels[index(x, y)]; }
    double& at(int x, int y) { return pixels[index(x, y)]; }

    /// Replicate-edge sampling: coordinates outside the grid read the nearest
    /// border pixel. All window operations use this padding.
    double at_clamped(int x, int y) const;

    bool same_size(const GrayImage& o) const {
        return width == o.width && height == o.height;
    }
    bool operator==(const GrayImage&) const = default;
};

/// Row-major RGB triplets, each channel a real value in [0,255].
struct ColorImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;  // 3 * width * height, R G B interleaved

    ColorImage() = default;
    ColorImage(int w, int h);

    std::size_t index(int x, int y, int c) const {
        return (std::size_t(y) * width + x) * 3 + c;
    }
    double at(int x, int y, int c) const { return pixels[index(x, y, c)]; }
    double& at(int x, int y, int c) { return pixels[index(x, y, c)]; }
    bool operator==(const ColorImage&) const = default;
};

/// Binary edge mask, one byte per pixel (0 or 1), row-major.
struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    EdgeMap() = default;
    EdgeMap(int w, int h);

    std::size_t index(int x, int y) const { return std::size_t(y) * width + x; }
    bool test(int x, int y) const { return bits[index(x, y)] != 0; }
    void set(int x, int y, bool v = true) { bits[index(x, y)] = v ? 1 : 0; }
    int count() const;
    bool same_size(const EdgeMap& o) const {
        return width == o.width && height == o.height;
    }
    bool operator==(const EdgeMap&) const = default;
};

double clamp255(double v);

/// Luma conversion: Grey = 0.2989 R + 0.587 G + 0.114 B, kept real-valued
/// (no rounding). Dimensions preserved.
GrayImage rgb_to_gray(const ColorImage& img);

/// Clamp to [0,255], then round half away from zero. Idempotent.
GrayImage quantize(const GrayImage& img);

/// 0/255 rendering of a mask, and the reverse (any nonzero intensity marks
/// an edge).
GrayImage to_image(const EdgeMap& map);
EdgeMap to_edge_map(const GrayImage& img);

}  // namespace edgebench
