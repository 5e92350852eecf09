#include "edgebench/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgebench {

namespace {

void check_dims(int w, int h) {
    if (w <= 0 || h <= 0)
        throw std::invalid_argument("image dimensions must be positive");
}

}  // namespace

GrayImage::GrayImage(int w, int h, double fill) : width(w), height(h) {
    check_dims(w, h);
    pixels.assign(std::size_t(w) * h, fill);
}

double GrayImage::at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return at(x, y);
}

ColorImage::ColorImage(int w, int h) : width(w), height(h) {
    check_dims(w, h);
    pixels.assign(std::size_t(w) * h * 3, 0.0);
}

EdgeMap::EdgeMap(int w, int h) : width(w), height(h) {
    check_dims(w, h);
    bits.assign(std::size_t(w) * h, 0);
}

int EdgeMap::count() const {
    int n = 0;
    for (std::uint8_t b : bits) n += (b != 0);
    return n;
}

double clamp255(double v) { return std::clamp(v, 0.0, 255.0); }

GrayImage rgb_to_gray(const ColorImage& img) {
    GrayImage out(img.width, img.height);
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = img.pixels[i * 3 + 0];
        const double g = img.pixels[i * 3 + 1];
        const double b = img.pixels[i * 3 + 2];
        out.pixels[i] = 0.2989 * r + 0.587 * g + 0.114 * b;
    }
    return out;
}

GrayImage quantize(const GrayImage& img) {
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i)
        out.pixels[i] = std::round(clamp255(img.pixels[i]));
    return out;
}

GrayImage to_image(const EdgeMap& map) {
    GrayImage out(map.width, map.height);
    for (std::size_t i = 0; i < map.bits.size(); ++i)
        out.pixels[i] = map.bits[i] ? 255.0 : 0.0;
    return out;
}

EdgeMap to_edge_map(const GrayImage& img) {
    EdgeMap out(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i)
        out.bits[i] = img.pixels[i] != 0.0 ? 1 : 0;
    return out;
}

}  // namespace edgebench
