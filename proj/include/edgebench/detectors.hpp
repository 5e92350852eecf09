#pragma once

#include <span>
#include <vector>

#include "edgebench/filters.hpp"
#include "edgebench/image.hpp"

namespace edgebench {

enum class GradientOperator { sobel, prewitt, roberts };

/// Signed gradient pair with derived magnitude and orientation.
/// magnitude = sqrt(gx^2 + gy^2); orientation = atan2(gy, gx) in (-pi, pi].
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<double> gx, gy, magnitude, orientation;
};

/// Explicit value or Otsu-derived ("auto") threshold.
struct Threshold {
    bool is_auto = true;
    double value = 0.0;

    static Threshold automatic() { return {true, 0.0}; }
    static Threshold fixed(double v) { return {false, v}; }
};

struct CannyConfig {
    double gauss_sigma = 1.4;     // 5x5 smoothing kernel
    double high_quantile = 0.90;  // over nonzero post-NMS magnitudes
    double low_ratio = 0.4;       // low = low_ratio * high
};

struct CopdaConfig {
    int window = 3;                    // odd, >= 3
    double contrast_threshold = 240.0; // minimum |template response|
    int min_chain = 3;                 // shortest surviving 8-connected chain
};

/// Threshold maximizing inter-class variance over a 256-bin histogram of the
/// grid, bins spanning [0, max]. Ties break toward the lowest bin;
/// an all-equal grid returns that value.
double otsu_threshold(std::span<const double> values);

GradientField gradient_field(const GrayImage& img, GradientOperator op);

/// Magnitude thresholding with the chosen operator's kernel pair.
EdgeMap gradient_detect(const GrayImage& img, GradientOperator op,
                        Threshold t = Threshold::automatic());

/// |3x3 Laplacian response| thresholding.
EdgeMap laplacian_detect(const GrayImage& img, Threshold t = Threshold::automatic());

// --- Canny stages, exposed so each piece can be exercised directly ---

/// Non-maximum suppression with orientation snapped to {0,45,90,135} degrees.
/// Returns the magnitude grid with suppressed pixels zeroed.
GrayImage canny_nms(const GradientField& g);

/// q-quantile of the nonzero entries (sorted ascending, index
/// floor(q * (n - 1))). Returns 0 if all entries are zero.
double nonzero_quantile(std::span<const double> values, double q);

/// Double thresholding: strong pixels (>= high) kept, weak pixels (>= low)
/// kept only if 8-connected to a strong one.
EdgeMap hysteresis(const GrayImage& nms_magnitude, double high, double low);

/// Gaussian smoothing, Sobel gradient, NMS, quantile double threshold,
/// hysteresis. A degenerate (constant) image yields an empty map.
EdgeMap canny_detect(const GrayImage& img, const CannyConfig& cfg = {});

// --- Collection-of-pixels detector ---

/// Pass 1: correlate each pixel's window with four directional step
/// templates (0/45/90/135 degrees, zero-mean +-1 masks); candidate where the
/// best absolute response exceeds cfg.contrast_threshold.
EdgeMap copda_candidates(const GrayImage& img, const CopdaConfig& cfg);

/// Pass 2: keep 8-connected chains of length >= min_chain, then bridge
/// single-pixel gaps between chain endpoints two steps apart along the
/// chain's dominant direction.
EdgeMap copda_chain_filter(const EdgeMap& candidates, int min_chain);

EdgeMap copda_detect(const GrayImage& img, const CopdaConfig& cfg = {});

}  // namespace edgebench
