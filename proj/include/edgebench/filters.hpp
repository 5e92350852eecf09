#pragma once

#include <vector>

#include "edgebench/image.hpp"

namespace edgebench {

/// Odd-sized correlation weights, row-major.
struct Kernel {
    int width = 0;
    int height = 0;
    std::vector<double> weights;

    Kernel(int w, int h, std::vector<double> ws);
    double at(int i, int j) const { return weights[std::size_t(j) * width + i]; }
};

struct EnhanceConfig {
    double m = 1.0;      // output multiplier
    double sigma = 0.2;  // brightening exponent, must be > 0
};

/// Correlation of img with k using replicate-edge padding. Output dimensions
/// equal the input's. Values are NOT clamped; detectors need the signed
/// responses. Throws std::invalid_argument for even-sized kernels.
GrayImage convolve(const GrayImage& img, const Kernel& k);

/// 3x3 ones correlation divided by 9, clamped to [0,255].
GrayImage box_average(const GrayImage& img);

/// Exact median over a window x window neighborhood with replicate padding.
/// window must be odd and >= 3.
GrayImage median_filter(const GrayImage& img, int window);

/// Power-law brightening on [0,1]-normalized intensities:
/// out = clamp(255 * m * (v/255)^sigma). sigma < 1 brightens.
GrayImage enhance_power(const GrayImage& img, const EnhanceConfig& cfg = {});

/// size x size Gaussian correlation weights, normalized to sum 1.
Kernel gaussian_kernel(double sigma, int size);

}  // namespace edgebench
