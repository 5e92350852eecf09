#include "edgebench/filters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgebench {

Kernel::Kernel(int w, int h, std::vector<double> ws)
    : width(w), height(h), weights(std::move(ws)) {
    if (w <= 0 || h <= 0 || w % 2 == 0 || h % 2 == 0)
        throw std::invalid_argument("kernel dimensions must be odd and positive");
    if (weights.size() != std::size_t(w) * h)
        throw std::invalid_argument("kernel weight count does not match size");
}

GrayImage convolve(const GrayImage& img, const Kernel& k) {
    const int cx = k.width / 2;
    const int cy = k.height / 2;
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int j = 0; j < k.height; ++j)
                for (int i = 0; i < k.width; ++i)
                    acc += img.at_clamped(x + i - cx, y + j - cy) * k.at(i, j);
            out.at(x, y) = acc;
        }
    }
    return out;
}

GrayImage box_average(const GrayImage& img) {
    static const Kernel ones(3, 3, std::vector<double>(9, 1.0));
    GrayImage out = convolve(img, ones);
    for (double& v : out.pixels) v = clamp255(v / 9.0);
    return out;
}

GrayImage median_filter(const GrayImage& img, int window) {
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("median window must be odd and >= 3");
    const int r = window / 2;
    GrayImage out(img.width, img.height);
    std::vector<double> buf(std::size_t(window) * window);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            std::size_t n = 0;
            for (int j = -r; j <= r; ++j)
                for (int i = -r; i <= r; ++i)
                    buf[n++] = img.at_clamped(x + i, y + j);
            auto mid = buf.begin() + std::ptrdiff_t(n / 2);
            std::nth_element(buf.begin(), mid, buf.begin() + std::ptrdiff_t(n));
            out.at(x, y) = *mid;
        }
    }
    return out;
}

GrayImage enhance_power(const GrayImage& img, const EnhanceConfig& cfg) {
    if (!(cfg.sigma > 0.0))
        throw std::invalid_argument("enhance sigma must be > 0");
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i) {
        const double v = clamp255(img.pixels[i]) / 255.0;
        out.pixels[i] = clamp255(cfg.m * std::pow(v, cfg.sigma) * 255.0);
    }
    return out;
}

Kernel gaussian_kernel(double sigma, int size) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian sigma must be > 0");
    const int r = size / 2;
    std::vector<double> w(std::size_t(size) * size);
    double sum = 0.0;
    for (int j = -r; j <= r; ++j)
        for (int i = -r; i <= r; ++i) {
            const double v = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
            w[std::size_t(j + r) * size + (i + r)] = v;
            sum += v;
        }
    for (double& v : w) v /= sum;
    return Kernel(size, size, std::move(w));
}

}  // namespace edgebench
