#pragma once

#include <cstdint>
#include <string>

#include "edgebench/image.hpp"

namespace edgebench {

enum class PlateStyle { clean, dirty, faded };

struct PlateSpec {
    int width = 240;
    int height = 80;
    std::string text;  // nonempty, glyphs from supported_glyphs()
    PlateStyle style = PlateStyle::clean;
    std::uint64_t seed = 0;
    double foreground = 20.0;   // stroke intensity
    double background = 230.0;  // plate intensity
};

struct RenderedPlate {
    GrayImage image;
    EdgeMap truth;
};

/// Segment-font glyphs available for plate text: digits, a subset of
/// letters with clean seven-segment shapes, space and dash.
bool glyph_supported(char c);
const std::string& supported_glyphs();

/// Deterministic plate rendering with analytic ground truth.
///
/// Geometry: a border rectangle plus axis-aligned segment glyphs at a fixed
/// centered layout. Ground truth marks the first pixel of every horizontal
/// and vertical intensity transition of the noiseless rendering (pixel p is
/// marked when it differs from its east or south neighbor).
///
/// Styles: clean leaves the rendering alone; faded rescales intensities
/// toward the image midpoint by factor 0.35; dirty paints seeded mid-
/// intensity blotches over at most 10% of the area and drops blotched
/// pixels from the ground truth.
RenderedPlate render_plate(const PlateSpec& spec);

/// Seeded "LL-DDD" text over the supported alphabet.
std::string random_plate_text(std::uint64_t seed);

const char* to_string(PlateStyle s);
PlateStyle plate_style_from_string(const std::string& s);

}  // namespace edgebench
