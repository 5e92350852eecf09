#include "edgebench/plate_synth.hpp"

#include <algorithm>
#include <stdexcept>

#include "edgebench/noise.hpp"

namespace edgebench {

namespace {

// Seven-segment style strokes on a 5x7 cell grid:
//   A top bar, B top-right, C bottom-right, D bottom bar,
//   E bottom-left, F top-left, G middle bar.
enum Segment : unsigned {
    SEG_A = 1u << 0,
    SEG_B = 1u << 1,
    SEG_C = 1u << 2,
    SEG_D = 1u << 3,
    SEG_E = 1u << 4,
    SEG_F = 1u << 5,
    SEG_G = 1u << 6,
};

unsigned glyph_segments(char c) {
    switch (c) {
        case '0': return SEG_A | SEG_B | SEG_C | SEG_D | SEG_E | SEG_F;
        case '1': return SEG_B | SEG_C;
        case '2': return SEG_A | SEG_B | SEG_G | SEG_E | SEG_D;
        case '3': return SEG_A | SEG_B | SEG_G | SEG_C | SEG_D;
        case '4': return SEG_F | SEG_G | SEG_B | SEG_C;
        case '5': return SEG_A | SEG_F | SEG_G | SEG_C | SEG_D;
        case '6': return SEG_A | SEG_F | SEG_G | SEG_E | SEG_C | SEG_D;
        case '7': return SEG_A | SEG_B | SEG_C;
        case '8': return SEG_A | SEG_B | SEG_C | SEG_D | SEG_E | SEG_F | SEG_G;
        case '9': return SEG_A | SEG_B | SEG_C | SEG_D | SEG_F | SEG_G;
        case 'A': return SEG_A | SEG_B | SEG_C | SEG_E | SEG_F | SEG_G;
        case 'C': return SEG_A | SEG_D | SEG_E | SEG_F;
        case 'E': return SEG_A | SEG_D | SEG_E | SEG_F | SEG_G;
        case 'F': return SEG_A | SEG_E | SEG_F | SEG_G;
        case 'H': return SEG_B | SEG_C | SEG_E | SEG_F | SEG_G;
        case 'J': return SEG_B | SEG_C | SEG_D | SEG_E;
        case 'L': return SEG_D | SEG_E | SEG_F;
        case 'P': return SEG_A | SEG_B | SEG_E | SEG_F | SEG_G;
        case 'U': return SEG_B | SEG_C | SEG_D | SEG_E | SEG_F;
        case ' ': return 0;
        case '-': return SEG_G;
        default: return unsigned(-1);
    }
}

// Segment rectangles in cell coordinates, [x0,x1) x [y0,y1).
struct CellRect {
    unsigned seg;
    int x0, y0, x1, y1;
};

constexpr CellRect kSegmentRects[] = {
    {SEG_A, 0, 0, 5, 1}, {SEG_B, 4, 0, 5, 4}, {SEG_C, 4, 3, 5, 7},
    {SEG_D, 0, 6, 5, 7}, {SEG_E, 0, 3, 1, 7}, {SEG_F, 0, 0, 1, 4},
    {SEG_G, 0, 3, 5, 4},
};

void fill_rect(GrayImage& img, int x0, int y0, int x1, int y1, double v) {
    x0 = std::max(x0, 0);
    y0 = std::max(y0, 0);
    x1 = std::min(x1, img.width);
    y1 = std::min(y1, img.height);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) img.at(x, y) = v;
}

void validate(const PlateSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0)
        throw std::invalid_argument("plate dimensions must be positive");
    if (spec.width * 3 < spec.height * 4)
        throw std::invalid_argument("plate width must be at least 4/3 of its height");
    if (spec.text.empty()) throw std::invalid_argument("plate text must be nonempty");
    for (char c : spec.text)
        if (!glyph_supported(c))
            throw std::invalid_argument(std::string("unsupported plate glyph '") + c + "'");
    if (spec.foreground < 0 || spec.foreground > 255 || spec.background < 0 ||
        spec.background > 255)
        throw std::invalid_argument("plate intensities must lie in [0,255]");
    if (spec.foreground == spec.background)
        throw std::invalid_argument("plate foreground and background must differ");
}

GrayImage render_base(const PlateSpec& spec) {
    GrayImage img(spec.width, spec.height, spec.background);

    const int border = std::max(1, spec.height / 40);
    fill_rect(img, 2, 2, spec.width - 2, spec.height - 2, spec.foreground);
    fill_rect(img, 2 + border, 2 + border, spec.width - 2 - border,
              spec.height - 2 - border, spec.background);

    const int len = int(spec.text.size());
    const int vm = spec.height / 8;
    const int hm = spec.height / 8;
    const int unit = std::min((spec.height - 2 * vm) / 7,
                              (spec.width - 2 * hm) / (6 * len - 1));
    if (unit < 1) throw std::invalid_argument("plate text does not fit the dimensions");
    const int ox = (spec.width - (6 * len - 1) * unit) / 2;
    const int oy = (spec.height - 7 * unit) / 2;

    for (int g = 0; g < len; ++g) {
        const unsigned segs = glyph_segments(spec.text[std::size_t(g)]);
        const int gx = ox + g * 6 * unit;
        for (const CellRect& r : kSegmentRects) {
            if (!(segs & r.seg)) continue;
            fill_rect(img, gx + r.x0 * unit, oy + r.y0 * unit, gx + r.x1 * unit,
                      oy + r.y1 * unit, spec.foreground);
        }
    }
    return img;
}

// First pixel of every horizontal/vertical transition: p is ground truth when
// it differs from its east or south neighbor.
EdgeMap transitions(const GrayImage& img) {
    EdgeMap truth(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const double v = img.at(x, y);
            if (x + 1 < img.width && img.at(x + 1, y) != v) truth.set(x, y);
            else if (y + 1 < img.height && img.at(x, y + 1) != v) truth.set(x, y);
        }
    return truth;
}

}  // namespace

bool glyph_supported(char c) { return glyph_segments(c) != unsigned(-1); }

const std::string& supported_glyphs() {
    static const std::string glyphs = "0123456789ACEFHJLPU -";
    return glyphs;
}

RenderedPlate render_plate(const PlateSpec& spec) {
    validate(spec);
    RenderedPlate plate;
    plate.image = render_base(spec);
    plate.truth = transitions(plate.image);

    if (spec.style == PlateStyle::faded) {
        double lo = plate.image.pixels[0], hi = lo;
        for (double v : plate.image.pixels) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double mid = (lo + hi) / 2.0;
        for (double& v : plate.image.pixels) v = mid + 0.35 * (v - mid);
    } else if (spec.style == PlateStyle::dirty) {
        const double blotch = (spec.foreground + spec.background) / 2.0;
        const long long budget = (long long)(spec.width) * spec.height / 10;
        long long used = 0;
        const int max_radius = std::max(2, std::min(spec.width, spec.height) / 8);
        for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
            const int cx = int(pixel_uniform(spec.seed, attempt, 0) * spec.width);
            const int cy = int(pixel_uniform(spec.seed, attempt, 1) * spec.height);
            const int r =
                2 + int(pixel_uniform(spec.seed, attempt, 2) * (max_radius - 1));
            long long area = 0;
            for (int y = std::max(0, cy - r); y <= std::min(spec.height - 1, cy + r); ++y)
                for (int x = std::max(0, cx - r); x <= std::min(spec.width - 1, cx + r); ++x)
                    if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) ++area;
            if (used + area > budget) break;
            used += area;
            for (int y = std::max(0, cy - r); y <= std::min(spec.height - 1, cy + r); ++y)
                for (int x = std::max(0, cx - r); x <= std::min(spec.width - 1, cx + r); ++x)
                    if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) {
                        plate.image.at(x, y) = blotch;
                        plate.truth.set(x, y, false);
                    }
        }
    }
    return plate;
}

std::string random_plate_text(std::uint64_t seed) {
    static const std::string letters = "ACEFHJLPU";
    static const std::string digits = "0123456789";
    std::string text(6, '-');
    text[0] = letters[std::size_t(pixel_uniform(seed, 0, 0) * double(letters.size()))];
    text[1] = letters[std::size_t(pixel_uniform(seed, 0, 1) * double(letters.size()))];
    text[3] = digits[std::size_t(pixel_uniform(seed, 0, 2) * double(digits.size()))];
    text[4] = digits[std::size_t(pixel_uniform(seed, 0, 3) * double(digits.size()))];
    text[5] = digits[std::size_t(pixel_uniform(seed, 0, 4) * double(digits.size()))];
    return text;
}

const char* to_string(PlateStyle s) {
    switch (s) {
        case PlateStyle::clean: return "clean";
        case PlateStyle::dirty: return "dirty";
        case PlateStyle::faded: return "faded";
    }
    return "clean";
}

PlateStyle plate_style_from_string(const std::string& s) {
    if (s == "clean") return PlateStyle::clean;
    if (s == "dirty") return PlateStyle::dirty;
    if (s == "faded") return PlateStyle::faded;
    throw std::invalid_argument("unknown plate style: " + s);
}

}  // namespace edgebench
