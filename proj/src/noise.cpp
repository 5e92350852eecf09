#include "edgebench/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace edgebench {

namespace {

void check_level(double level) {
    if (!(level >= 0.0 && level <= 1.0))
        throw std::invalid_argument("noise level must be in [0,1]");
}

// 53-bit mantissa -> uniform [0,1).
double to_unit(std::uint64_t v) {
    return double(v >> 11) * 0x1.0p-53;
}

std::uint64_t stream(std::uint64_t seed, std::uint64_t index, std::uint64_t draw) {
    return mix64(mix64(mix64(seed) ^ (index + 1)) ^ (draw + 1));
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double pixel_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t draw) {
    return to_unit(stream(seed, index, draw));
}

double speckle_sample(std::uint64_t seed, std::uint64_t index, double level) {
    const double amplitude = std::sqrt(3.0 * level);
    return (2.0 * pixel_uniform(seed, index, 0) - 1.0) * amplitude;
}

GrayImage add_impulse(const GrayImage& img, const NoiseSpec& spec) {
    check_level(spec.level);
    GrayImage out = img;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (pixel_uniform(spec.seed, i, 0) < spec.level)
            out.pixels[i] = pixel_uniform(spec.seed, i, 1) < 0.5 ? 0.0 : 255.0;
    }
    return out;
}

GrayImage add_speckle(const GrayImage& img, const NoiseSpec& spec) {
    check_level(spec.level);
    GrayImage out = img;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double v = out.pixels[i];
        out.pixels[i] = clamp255(v + v * speckle_sample(spec.seed, i, spec.level));
    }
    return out;
}

GrayImage add_noise(const GrayImage& img, const NoiseSpec& spec) {
    return spec.kind == NoiseKind::impulse ? add_impulse(img, spec)
                                           : add_speckle(img, spec);
}

const char* to_string(NoiseKind k) {
    return k == NoiseKind::impulse ? "impulse" : "speckle";
}

NoiseKind noise_kind_from_string(const std::string& s) {
    if (s == "impulse") return NoiseKind::impulse;
    if (s == "speckle") return NoiseKind::speckle;
    throw std::invalid_argument("unknown noise kind: " + s);
}

}  // namespace edgebench
