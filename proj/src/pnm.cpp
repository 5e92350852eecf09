#include "edgebench/pnm.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace edgebench {

namespace {

// Header cursor: skips whitespace and '#' comments between tokens.
struct Cursor {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;

    bool eof() const { return pos >= data.size(); }
    int peek() const { return eof() ? -1 : data[pos]; }

    void skip_space_and_comments() {
        while (!eof()) {
            const int c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else if (std::isspace(c)) {
                ++pos;
            } else {
                break;
            }
        }
    }

    // Nonnegative decimal integer token.
    long next_int(const char* what) {
        skip_space_and_comments();
        if (eof())
            throw PnmError(PnmError::Kind::Truncated,
                           std::string("missing ") + what);
        if (!std::isdigit(peek()))
            throw PnmError(PnmError::Kind::Malformed,
                           std::string("expected integer for ") + what);
        long v = 0;
        while (!eof() && std::isdigit(peek())) {
            v = v * 10 + (data[pos] - '0');
            if (v > 1'000'000'000)
                throw PnmError(PnmError::Kind::Malformed,
                               std::string("oversized ") + what);
            ++pos;
        }
        return v;
    }
};

std::vector<double> read_raw(Cursor& cur, std::size_t count) {
    // Exactly one whitespace byte separates the maxval from the payload.
    if (cur.eof())
        throw PnmError(PnmError::Kind::Truncated, "missing payload");
    if (!std::isspace(cur.peek()))
        throw PnmError(PnmError::Kind::Malformed,
                       "expected whitespace before raw payload");
    ++cur.pos;
    if (cur.data.size() - cur.pos < count)
        throw PnmError(PnmError::Kind::Truncated,
                       "raw payload shorter than header promises");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = double(cur.data[cur.pos + i]);
    cur.pos += count;
    return out;
}

std::vector<double> read_ascii(Cursor& cur, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const long v = cur.next_int("sample");
        if (v > 255)
            throw PnmError(PnmError::Kind::Malformed, "sample exceeds maxval");
        out[i] = double(v);
    }
    return out;
}

void check_quantized(double v) {
    if (v < 0.0 || v > 255.0 || v != std::floor(v))
        throw std::invalid_argument(
            "save_pnm requires quantized intensities in [0,255]");
}

std::vector<std::uint8_t> encode(char magic, int w, int h,
                                 const std::vector<double>& samples) {
    char header[64];
    const int len = std::snprintf(header, sizeof header, "P%c\n%d %d\n255\n",
                                  magic, w, h);
    std::vector<std::uint8_t> out(header, header + len);
    out.reserve(out.size() + samples.size());
    for (double v : samples) {
        check_quantized(v);
        out.push_back(std::uint8_t(v));
    }
    return out;
}

}  // namespace

PnmImage load_pnm(std::span<const std::uint8_t> bytes) {
    Cursor cur{bytes};
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw PnmError(PnmError::Kind::BadMagic, "not a PNM file");
    const char magic = char(bytes[1]);
    if (magic != '2' && magic != '3' && magic != '5' && magic != '6')
        throw PnmError(PnmError::Kind::BadMagic,
                       std::string("unsupported magic P") + magic);
    cur.pos = 2;

    const long w = cur.next_int("width");
    const long h = cur.next_int("height");
    if (w <= 0 || h <= 0)
        throw PnmError(PnmError::Kind::BadDimensions,
                       "dimensions must be positive");
    const long maxval = cur.next_int("maxval");
    if (maxval != 255)
        throw PnmError(PnmError::Kind::BadMaxval, "only maxval 255 supported");

    const bool color = (magic == '3' || magic == '6');
    const std::size_t count = std::size_t(w) * std::size_t(h) * (color ? 3 : 1);
    std::vector<double> samples = (magic == '5' || magic == '6')
                                      ? read_raw(cur, count)
                                      : read_ascii(cur, count);

    if (color) {
        ColorImage img{int(w), int(h)};
        img.pixels = std::move(samples);
        return img;
    }
    GrayImage img{int(w), int(h)};
    img.pixels = std::move(samples);
    return img;
}

std::vector<std::uint8_t> save_pnm(const GrayImage& img) {
    return encode('5', img.width, img.height, img.pixels);
}

std::vector<std::uint8_t> save_pnm(const ColorImage& img) {
    return encode('6', img.width, img.height, img.pixels);
}

PnmImage load_pnm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string s = ss.str();
    return load_pnm(std::span(reinterpret_cast<const std::uint8_t*>(s.data()),
                              s.size()));
}

namespace {

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              std::streamsize(bytes.size()));
    if (!out)
        throw std::runtime_error("short write to " + path);
}

}  // namespace

void save_pnm_file(const std::string& path, const GrayImage& img) {
    write_file(path, save_pnm(img));
}

void save_pnm_file(const std::string& path, const ColorImage& img) {
    write_file(path, save_pnm(img));
}

GrayImage as_gray(const PnmImage& img) {
    if (const auto* g = std::get_if<GrayImage>(&img)) return *g;
    return rgb_to_gray(std::get<ColorImage>(img));
}

}  // namespace edgebench
