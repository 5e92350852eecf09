#pragma once

#include <cstdint>
#include <string>

#include "edgebench/image.hpp"

namespace edgebench {

enum class NoiseKind { impulse, speckle };

/// Deterministic corruption recipe. `level` is the noise fraction in [0,1]:
/// the per-pixel replacement probability for impulse noise, the variance of
/// the multiplicative factor for speckle noise.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::impulse;
    double level = 0.0;
    std::uint64_t seed = 0;
};

/// SplitMix64 output mix (constants 0xBF58476D1CE4E5B9, 0x94D049BB133111EB).
/// Every random draw in the library is derived from this function so results
/// are bit-identical across platforms and iteration orders.
std::uint64_t mix64(std::uint64_t z);

/// Uniform [0,1) for draw number `draw` of pixel `index` under `seed`.
/// Pure function of (seed, index, draw): per-pixel streams are independent
/// of traversal order.
double pixel_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t draw);

/// Zero-mean multiplicative factor with variance `level`, uniform on
/// [-sqrt(3*level), +sqrt(3*level)].
double speckle_sample(std::uint64_t seed, std::uint64_t index, double level);

/// Salt & pepper: each pixel independently replaced by 0 or 255 (each with
/// probability level/2). Throws std::invalid_argument for level outside [0,1].
GrayImage add_impulse(const GrayImage& img, const NoiseSpec& spec);

/// Multiplicative noise: out = clamp(v + v*u) with u from speckle_sample.
GrayImage add_speckle(const GrayImage& img, const NoiseSpec& spec);

/// Dispatch on spec.kind.
GrayImage add_noise(const GrayImage& img, const NoiseSpec& spec);

const char* to_string(NoiseKind k);
NoiseKind noise_kind_from_string(const std::string& s);

}  // namespace edgebench
